#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sigevo {

inline constexpr const char* kVersion = "sigevo 0.1.0";

/// Parameters of the double-damped sigma-evolution equation
///   u_tt + (-Lap)^sigma u + mu1 (-Lap)^sigma1 u_t + mu2 (-Lap)^sigma2 u_t = |d_t^j u|^p
/// on R^n. The semilinear fields (nonlinearity_p, deriv_j) are optional and only
/// consulted by the semilinear paths.
struct ProblemConfig {
    double sigma = 1.0;
    double sigma1 = 0.0;
    double sigma2 = 1.0;
    double mu1 = 1.0;
    double mu2 = 1.0;
    int dim_n = 1;
    std::optional<double> nonlinearity_p;  // power p > 1
    int deriv_j = 0;                       // nonlinearity |d_t^j u|^p, j in {0,1}
};

/// A ProblemConfig that passed validate(). Immutable; safe to share across threads.
class ValidatedConfig {
  public:
    double sigma() const { return cfg_.sigma; }
    double sigma1() const { return cfg_.sigma1; }
    double sigma2() const { return cfg_.sigma2; }
    double mu1() const { return cfg_.mu1; }
    double mu2() const { return cfg_.mu2; }
    int dim_n() const { return cfg_.dim_n; }
    const std::optional<double>& nonlinearity_p() const { return cfg_.nonlinearity_p; }
    int deriv_j() const { return cfg_.deriv_j; }

    // sigma - sigma1, the diffusion order driving all low-frequency rates
    double diffusion_order() const { return cfg_.sigma - cfg_.sigma1; }

    const ProblemConfig& raw() const { return cfg_; }

  private:
    friend ValidatedConfig validate(const ProblemConfig&);
    explicit ValidatedConfig(const ProblemConfig& c) : cfg_(c) {}
    ProblemConfig cfg_;
};

/// Checks the standing assumptions sigma >= 1, 0 <= sigma1 < sigma/2 < sigma2 <= sigma,
/// mu1 > 0, mu2 > 0, n >= 1 (and p > 1, j in {0,1} when set).
/// Throws std::invalid_argument naming the violated inequality.
ValidatedConfig validate(const ProblemConfig& config);

/// The conjugate-type exponent m0 = 2m/(2-m) for m in [1,2). Rejects m = 2.
double m_zero(double m);

enum class EstimateKind { LmL2, L2L2 };

/// A decay-estimate query: data integrability m, Sobolev order s, time derivatives j.
struct RateQuery {
    double m = 1.0;  // in [1,2]; m = 2 selects the L2-L2 table
    double s = 0.0;  // homogeneous Sobolev order, >= 0
    int j = 0;       // 0 or 1
    EstimateKind kind = EstimateKind::LmL2;
};

void validate_query(const RateQuery& q);

struct HypothesisCheck {
    std::string inequality;  // the inequality actually tested, human readable
    bool holds = false;
};

/// Outcome of checking the global-existence hypotheses for the configured j.
struct HypothesisReport {
    int j = 0;
    bool dim_ok = false;          // n > 2 m0 sigma1
    bool window_nonempty = false; // the admissible p-window is nonempty
    double p_window_lo = 0.0;     // 2/m
    double p_window_hi = 0.0;     // +inf encoded as infinity()
    bool p_in_window = false;
    double p_critical = 0.0;      // 1 + 2 m sigma / (n - 2 m sigma1)
    bool p_above_critical = false;
    double s_min = 0.0;           // j=1 only: max{2 sigma2 + n/2, 2(sigma+sigma2-sigma1)}
    bool p_ok_derivative = false; // j=1 only: p > max{2/m, 1 + s_min - 2 sigma2}
    bool admissible = false;      // conjunction of everything relevant for this j
    std::vector<HypothesisCheck> checks;
};

/// Evaluates the hypotheses of the global-existence theorems (j = config.deriv_j).
/// Unsatisfiable windows are reported, never thrown.
HypothesisReport check_global_existence_hypotheses(const ValidatedConfig& config, double m);

}  // namespace sigevo
