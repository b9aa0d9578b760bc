#pragma once

#include <array>
#include <string>
#include <vector>

#include "sigevo/config.hpp"

namespace sigevo {

/// A declared decay rate: the solution norm behaves like (1+t)^exponent, times
/// log(e+t) when log_factor is set. regime_note names the table row applied.
struct RatePrediction {
    double exponent = 0.0;
    bool log_factor = false;
    // Set when the rate is not a power at all (sigma1 = 0 splits decay like e^{-ct}).
    bool exponential = false;
    std::string regime_note;
    std::vector<HypothesisCheck> validity;
};

/// Decay exponent of ||  |D|^s d_t^j u ||_{L2} from the linear decay theorem.
/// LmL2 queries use the (L^m cap L^2)-L^2 table (m < 2), L2L2 the L^2-L^2 one.
/// Out-of-table queries throw std::domain_error naming the failed hypothesis.
RatePrediction linear_decay_exponent(const ValidatedConfig& cfg, const RateQuery& q);

/// Exponent of the asymptotic-profile remainder:
///   -n/(4(sigma-sigma1)) - s/(2(sigma-sigma1)) - j + sigma1/(sigma-sigma1).
/// Requires n > 4 sigma1.
RatePrediction profile_rate(const ValidatedConfig& cfg, double s, int j);

enum class KernelPiece { K0_1, K0_2, K1_1, K1_2 };

/// The four low-zone kernel-piece convolution rates. The K*_2 pieces divide by
/// sigma1 and are flagged exponential when sigma1 = 0. K1 pieces require
/// n > 2 m0 sigma1.
std::array<RatePrediction, 4> kernel_piece_rates(const ValidatedConfig& cfg, double m, double s,
                                                 int j);

enum class ProfilePiece { K0Piece, K1Piece };

/// Rate of || d_t^j |D|^s ((K^1_i - G_i) * data) ||_{L2}, with the case split on
/// sigma1 + sigma2 vs sigma.
RatePrediction profile_gap_rate(const ValidatedConfig& cfg, double m, double s, int j,
                                ProfilePiece piece);

/// Gamma(s): the rate at which u approaches the anomalous-diffusion solution v,
/// max of the K1-piece gap rate (m=1) and the K*_2 rate, case split on
/// sigma1 + sigma2 vs sigma. sigma1 = 0 drops the second branch.
RatePrediction gamma_s(const ValidatedConfig& cfg, double s, int j);

/// One named rate of the global-existence decay tables.
struct SemilinearRate {
    std::string norm;  // e.g. "L2(u)", "L2(|D|^{2 sigma2} u)"
    RatePrediction rate;
};

/// The decay table of the global-existence theorem for the configured j.
/// For j=1 the Sobolev order is the minimal admissible s from the hypotheses.
std::vector<SemilinearRate> semilinear_decay_exponents(const ValidatedConfig& cfg, double m);

}  // namespace sigevo
