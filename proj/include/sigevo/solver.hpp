#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "sigevo/config.hpp"
#include "sigevo/grid.hpp"
#include "sigevo/kernels.hpp"
#include "sigevo/quadrature.hpp"
#include "sigevo/symbol.hpp"

namespace sigevo {

struct GaussianComponent {
    double amplitude = 0.0;
    double width = 1.0;
};

/// Sum of centered Gaussians a e^{-|x|^2/(2 w^2)}; Fourier transform in closed
/// form under uhat(xi) = int u e^{-i x.xi} dx.
struct RadialProfile {
    std::vector<GaussianComponent> parts;
    bool empty() const { return parts.empty(); }
    double hat(double r, int dim_n) const;  // sum a (2 pi)^{n/2} w^n e^{-w^2 r^2 / 2}
    double moment(int dim_n) const { return hat(0.0, dim_n); }
    void scale(double factor);
};

/// The data pair (u0, u1) of the Cauchy problem, radial Gaussian class.
struct RadialData {
    int dim_n = 2;
    RadialProfile u0, u1;
    double P0() const { return u0.moment(dim_n); }
    double P1() const { return u1.moment(dim_n); }
};

/// Standard experiment data: u0 = 0, u1 = a e^{-|x|^2/(2 w^2)}.
RadialData gaussian_data(double amplitude, double width, int dim_n);

/// ||  |D|^s d_t^j u(t,.) ||_{L2} for the linear problem via radial quadrature of
/// the exact kernels; no time stepping.
double linear_norm_radial(const ValidatedConfig& cfg, const RadialData& data, double t, double s,
                          int j, const ZoneBoundaries& zb, const QuadratureOptions& opts = {});

/// ||  |D|^s d_t^j (u - P0 G0 - (P1 + correction) G1)(t,.) ||_{L2} for the linear
/// problem (correction = 0) or the semilinear profile shift (correction = M0/M1).
double profile_gap_norm_radial(const ValidatedConfig& cfg, const RadialData& data, double t,
                               double s, int j, double correction, const ZoneBoundaries& zb,
                               const QuadratureOptions& opts = {});

/// Cached per-mode fundamental matrices E(dt) = [[K0, K1], [dK0, dK1]](dt, |xi_k|).
struct PropagatorTable {
    GridSpec grid;
    double dt = 0.0;
    std::vector<double> k0, k1, dk0, dk1;
};

PropagatorTable assemble_propagator(const ValidatedConfig& cfg, const FftWorkspace& fft,
                                    double dt, kernels::Exec exec = kernels::default_exec());

/// out = E(dt) . state (the exact linear step); advances the time stamp.
void propagate(const PropagatorTable& prop, const StatePair& in, StatePair& out,
               kernels::Exec exec = kernels::default_exec());

/// Transform of |d_t^j u|^p: to physical space, pointwise power, back, then the
/// 2/3-rule radial dealias mask. Also reports int |d_t^j u|^p dx.
struct NonlinearityResult {
    SpectralField field;
    double mass_integrand = 0.0;
};
NonlinearityResult nonlinearity(const ValidatedConfig& cfg, const StatePair& state, int j,
                                const FftWorkspace& fft,
                                kernels::Exec exec = kernels::default_exec());

/// One second-order exponential-Duhamel step (predictor + trapezoid corrector):
///   predictor  s* = E(dt) s + dt E(dt) [0; N(t)]
///   corrector  s(t+dt) = E(dt) s + (dt/2) (E(dt) [0; N(t)] + [0; N*(t+dt)])
/// nonlinearity_scale multiplies N (0 reduces the scheme to the exact propagator).
struct StepOutcome {
    double mass_integrand = 0.0;  // int |d_t^j u|^p dx at step start
    bool blew_up = false;
};
StepOutcome semilinear_step(const ValidatedConfig& cfg, StatePair& state,
                            const PropagatorTable& prop, const FftWorkspace& fft,
                            double nonlinearity_scale = 1.0,
                            kernels::Exec exec = kernels::default_exec());

/// Parseval norm of u (j=0) or u_t (j=1).
double sobolev_norm(const StatePair& state, double s, int j, const FftWorkspace& fft);

/// ||u_t||^2 + || |D|^sigma u ||^2, the dissipated energy functional.
double pair_energy(const ValidatedConfig& cfg, const StatePair& state, const FftWorkspace& fft);

/// Space-time mass M = int_0^T int |d_t^j u|^p dx dtau from integrand samples
/// (tau, I(tau)): time-trapezoid plus a power-law tail extrapolation
/// tail = T I(T)/(beta-1) with beta fitted over the last decade of samples.
struct NonlinearMass {
    double value = 0.0;
    double truncation_time = 0.0;
    double tail_estimate = 0.0;
    double fitted_beta = 0.0;
    bool convergent = true;  // false when the fitted beta <= 1
};
NonlinearMass nonlinear_mass(const std::vector<std::pair<double, double>>& integrand_samples);

struct SemilinearRunOptions {
    double dt = 0.25;
    double horizon = 1e3;
    double epsilon = 1e-2;             // target initial weighted norm; <= 0 keeps data as is
    double nonlinearity_scale = 1.0;
    std::vector<double> sample_times;  // norms/snapshots recorded at nearest step times
    bool keep_snapshots = true;
    double sobolev_order = 0.0;        // the |D|^s norm tracked alongside L2 ones
    // X(t)-norm weight exponents (u, |D|^s u, u_t); weight(tau) = (1+tau)^e
    double weight_u = 0.0, weight_du = 0.0, weight_ut = -1.0;
};

struct SemilinearSample {
    double t = 0.0;
    double l2_u = 0.0;
    double hs_u = 0.0;
    double l2_ut = 0.0;
    double mass_integrand = 0.0;
};

struct SemilinearTrajectory {
    std::vector<SemilinearSample> samples;
    std::vector<std::pair<double, double>> integrand;  // dense (t, I)
    std::vector<SpectralField> snapshots;              // uhat at sample times
    NonlinearMass mass;
    bool blew_up = false;
    double blowup_time = 0.0;
    double sup_weighted_norm = 0.0;
    double initial_weighted_norm = 0.0;
    double data_scale = 1.0;  // factor applied to reach epsilon
};

/// Realizes the radial data on the grid (dealias-masked), scales it to the target
/// initial weighted norm, and advances the predictor-corrector loop to the horizon.
SemilinearTrajectory run_semilinear_trajectory(const ValidatedConfig& cfg, const RadialData& data,
                                               const FftWorkspace& fft,
                                               const SemilinearRunOptions& opts,
                                               kernels::Exec exec = kernels::default_exec());

}  // namespace sigevo
