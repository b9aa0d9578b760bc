#pragma once

#include <complex>

#include "sigevo/config.hpp"

namespace sigevo {

enum class Regime { RealDistinct, ComplexPair, NearDegenerate };

/// Roots of the per-frequency characteristic quadratic
///   lambda^2 + (mu1 r^{2 sigma1} + mu2 r^{2 sigma2}) lambda + r^{2 sigma} = 0.
/// lambda1 carries the "+sqrt" branch, lambda2 the "-sqrt" branch, in both the
/// real and the complex case. In the RealDistinct regime lambda1 > lambda2
/// (lambda1 is the slowly decaying root).
struct CharacteristicRoots {
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    Regime regime = Regime::RealDistinct;
    double discriminant = 0.0;
};

// Relative discriminant threshold separating NearDegenerate from the two
// clean regimes: |disc| <= kDegenerateDelta * (lambda1+lambda2)^2.
inline constexpr double kDegenerateDelta = 1e-6;

/// (mu1 r^{2 sigma1} + mu2 r^{2 sigma2})^2 - 4 r^{2 sigma}
double discriminant(const ValidatedConfig& cfg, double r);

CharacteristicRoots char_roots(const ValidatedConfig& cfg, double r);

/// Fundamental-system kernels of the transformed equation at radius r:
///   K0 = (lambda1 e^{lambda2 t} - lambda2 e^{lambda1 t}) / (lambda1 - lambda2),
///   K1 = (e^{lambda1 t} - e^{lambda2 t}) / (lambda1 - lambda2),
/// with K0(0) = 1, K1(0) = 0, dK1(0) = 1. Near the discriminant zeros the
/// double-root limit is evaluated through a series in (sqrt(disc) t / 2)^2,
/// so values are smooth across the regime switch. Always real.
double khat0(const ValidatedConfig& cfg, double t, double r);
double khat1(const ValidatedConfig& cfg, double t, double r);
double dt_khat0(const ValidatedConfig& cfg, double t, double r);  // = -r^{2 sigma} K1
double dt_khat1(const ValidatedConfig& cfg, double t, double r);

/// All four kernel values plus derivatives in one evaluation (one pow/exp set);
/// this is what the per-mode propagator table is built from.
struct KernelValues {
    double k0, k1, dk0, dk1;
};
KernelValues kernel_values(const ValidatedConfig& cfg, double t, double r);

/// The low/high-zone split K0 = K0_1 + K0_2, K1 = K1_1 + K1_2 with
///   K0_1 = -lambda2 e^{lambda1 t}/(lambda1-lambda2),  K0_2 = lambda1 e^{lambda2 t}/(lambda1-lambda2),
///   K1_1 = e^{lambda1 t}/(lambda1-lambda2),           K1_2 = -e^{lambda2 t}/(lambda1-lambda2).
/// Only defined on the RealDistinct regime; throws std::domain_error otherwise.
struct SplitKernels {
    double k0_1, k0_2, k1_1, k1_2;
    double dk0_1, dk0_2, dk1_1, dk1_2;  // time derivatives of each piece
};
SplitKernels split_kernels(const ValidatedConfig& cfg, double t, double r);

/// Fourier symbols of the diffusion reference profiles:
///   ghat0 = e^{-r^{2(sigma-sigma1)} t},  ghat1 = r^{-2 sigma1} ghat0.
/// ghat1 is singular at r = 0 when sigma1 > 0; callers integrate through it.
double ghat0(const ValidatedConfig& cfg, double t, double r);
double ghat1(const ValidatedConfig& cfg, double t, double r);
double dt_ghat0(const ValidatedConfig& cfg, double t, double r);
double dt_ghat1(const ValidatedConfig& cfg, double t, double r);

enum class Zone { Low, Mid, High };

/// eps_star > 0 such that the discriminant is strictly positive on (0, eps_star]
/// and on [1/eps_star, inf): the low and high zones are certified overdamped.
struct ZoneBoundaries {
    double eps_star = 0.5;
    // Positive zeros of the discriminant when they exist (r_lo <= r_hi); 0 when none.
    double disc_zero_lo = 0.0;
    double disc_zero_hi = 0.0;
};

/// Locates the discriminant zeros (the map u -> mu1 e^{(2s1-s)u} + mu2 e^{(2s2-s)u}
/// is strictly convex, so {disc < 0} is a single interval) and returns
/// eps_star = 0.9 min(r_lo, 1/r_hi), or 0.5 when the discriminant never vanishes.
/// Certifies positivity on 1e4 log-spaced sample points and throws on failure.
ZoneBoundaries find_eps_star(const ValidatedConfig& cfg);

/// Smooth cut-off functions with quintic-smoothstep transitions:
/// chi_L = 1 on [0, eps*/2], 0 on [eps*, inf); chi_H = 1 on [2/eps*, inf), 0 on
/// (0, 1/eps*]; chi_M = 1 - chi_L - chi_H. Partition of unity pointwise.
double cutoff(Zone zone, double r, const ZoneBoundaries& zb);

}  // namespace sigevo
