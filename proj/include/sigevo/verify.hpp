#pragma once

#include <string>
#include <vector>

#include "sigevo/rates.hpp"
#include "sigevo/solver.hpp"

namespace sigevo {

enum class Verdict { Pass, Fail, FasterThanPredicted };

std::string to_string(Verdict v);

/// Measured slope vs declared exponent. Upper bounds are one-sided: decay faster
/// than predicted is reported, never failed.
struct DecayReport {
    std::string description;
    RatePrediction predicted;
    double fitted_slope = 0.0;
    double max_residual = 0.0;
    double tolerance = 0.05;
    std::vector<std::pair<double, double>> samples;  // (t, value)
    Verdict verdict = Verdict::Fail;
};

/// Profile-remainder report: R(t) = gap / t^rate must eventually halve; the
/// solution norm over the tail window must sit in a positive sandwich band.
struct ProfileReport {
    std::string description;
    RatePrediction rate;
    std::vector<double> times;
    std::vector<double> gap_norms;
    std::vector<double> ratios;        // R(t)
    double band_min = 0.0, band_max = 0.0;  // of ||u||/t^rate over the tail window
    bool ratio_halved = false;
    bool tail_decreasing = false;
    bool band_positive = false;
    Verdict verdict = Verdict::Fail;
};

struct TimeGrid {
    double t_min = 1e2;
    double t_max = 1e5;
    int count = 10;
    std::vector<double> times() const;  // log-spaced
};

/// Samples ||  |D|^s d_t^j u || on the radial path, fits the slope, compares to
/// linear_decay_exponent.
DecayReport run_linear_decay(const ValidatedConfig& cfg, const RateQuery& q,
                             const RadialData& data, const TimeGrid& grid,
                             const ZoneBoundaries& zb, double tolerance = 0.05);

/// Critical case n = 2 m0 sigma1: ||u(t)|| / log(e+t) must have log-log slope
/// within tolerance of zero.
DecayReport run_log_case(const ValidatedConfig& cfg, const RadialData& data, double m,
                         const TimeGrid& grid, const ZoneBoundaries& zb,
                         double tolerance = 0.05);

/// Linear (correction = 0) or semilinear (correction = M0/M1) profile check on the
/// radial path.
ProfileReport run_profile(const ValidatedConfig& cfg, const RadialData& data, double s, int j,
                          const TimeGrid& grid, const ZoneBoundaries& zb,
                          double correction = 0.0);

/// Profile check against grid snapshots: gap computed mode-wise on uhat.
ProfileReport run_profile_grid(const ValidatedConfig& cfg, const RadialData& data,
                               const std::vector<SpectralField>& snapshots,
                               const std::vector<double>& times, double s,
                               const FftWorkspace& fft, double correction = 0.0);

struct SemilinearVerification {
    SemilinearTrajectory trajectory;
    std::vector<DecayReport> decay;     // ||u||, ||D^s u||, ||u_t||
    ProfileReport profile_corrected;    // with the M0 shift
    ProfileReport profile_uncorrected;
    bool corrected_gap_smaller = false; // at the horizon
    bool mass_tail_small = false;       // tail < 1% of the accumulated mass
    Verdict verdict = Verdict::Fail;
};

struct SemilinearVerifyOptions {
    GridSpec grid{2, 256, 1664.0};
    double dt = 0.25;
    double horizon = 1e3;
    double epsilon = 1e-2;
    double data_width = 4.0;
    double fit_t_min = 10.0;
    double tolerance = 0.1;
};

/// Runs the grid stepper on small Gaussian data and verifies the global-existence
/// decay table plus the M0-corrected profile shift.
SemilinearVerification run_semilinear(const ValidatedConfig& cfg,
                                      const SemilinearVerifyOptions& opts);

}  // namespace sigevo
