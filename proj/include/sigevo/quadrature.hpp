#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sigevo/config.hpp"
#include "sigevo/symbol.hpp"

namespace sigevo {

/// Adaptive result for omega_{n-1} * int_0^inf f(r) r^{n-1} dr.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    bool converged = true;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-280;  // floor so identically-small integrands terminate
    int max_panels = 60000;
    double r_last = 64.0;     // finite-panel edge; the tail beyond uses r = e^u
};

/// Unit-sphere surface area omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int dim_n);

/// Semi-infinite radial integral omega_{n-1} int_0^inf f(r) r^{n-1} dr with
/// Gauss-Kronrod 7-15 panels, worst-error-first refinement (index tiebreak),
/// log-spaced seeding toward r = 0 and breakpoints honored as panel edges.
/// Throws std::runtime_error with the worst panel when the budget is exhausted.
QuadratureResult integrate_radial(const std::function<double(double)>& f, int dim_n,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureOptions& opts = {});

/// Panel edges every radial integrand of this problem needs: the cut-off
/// transition edges and the discriminant zeros (kernel regime switches).
std::vector<double> standard_breakpoints(const ZoneBoundaries& zb);

/// L2 norm of the radial Fourier multiplier r^s * mult(r), optionally localized to
/// a zone: (2pi)^{-n/2} (omega_{n-1} int |r^s mult(r) chi(r)|^2 r^{n-1} dr)^{1/2}.
double radial_norm_l2(const ValidatedConfig& cfg, const std::function<double(double)>& multiplier,
                      double s, std::optional<Zone> zone, const ZoneBoundaries& zb,
                      const QuadratureOptions& opts = {});

enum class KernelIndex { K0, K1 };

/// The low-zone kernel norm integral
///   P_i^{m0}(j, s) = int |d_t^j Khat_i(t, xi)|^{m0} |xi|^{m0 s} chi_L(|xi|) d xi,
/// computed with the exact kernels (not the paper-style bounding surrogates).
double p_norm_integral(const ValidatedConfig& cfg, KernelIndex which, int j, double s, double m,
                       double t, const ZoneBoundaries& zb, const QuadratureOptions& opts = {});

enum class ProfileDiffPiece { K0VsG0, K1VsG1 };

/// || |xi|^s d_t^j (Khat^1_i - Ghat_i) chi_L ||_{L2}-style multiplier norm over the
/// low zone, with the (2pi)^{-n/2} Parseval constant included.
double profile_diff_norm(const ValidatedConfig& cfg, ProfileDiffPiece piece, double s, int j,
                         double t, const ZoneBoundaries& zb, const QuadratureOptions& opts = {});

/// Least-squares line through (log t, log value). Requires >= 4 samples, all
/// positive, strictly increasing t spanning at least two decades.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;  // in log space
};
RateFit fit_rate(const std::vector<std::pair<double, double>>& samples);

}  // namespace sigevo
