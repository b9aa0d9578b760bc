#include "sigevo/rates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sigevo {

namespace {

// -n/(2(sigma-sigma1)) (1/m - 1/2), the L^m-data smoothing contribution
double lm_decay(const ValidatedConfig& cfg, double m) {
    return -cfg.dim_n() / (2.0 * cfg.diffusion_order()) * (1.0 / m - 0.5);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error("rate query out of table: " + what);
}

HypothesisCheck checked(std::string ineq, bool ok) { return {std::move(ineq), ok}; }

}  // namespace

RatePrediction linear_decay_exponent(const ValidatedConfig& cfg, const RateQuery& q) {
    validate_query(q);
    const double n = cfg.dim_n();
    const double s1 = cfg.sigma1();
    const double a = cfg.diffusion_order();
    RatePrediction out;

    if (q.kind == EstimateKind::L2L2) {
        if (q.j == 1) {
            out.exponent = -q.s / (2.0 * a);
            out.regime_note = "L2-L2, j=1";
        } else if (q.s < 2.0 * s1) {
            out.exponent = 1.0 - q.s / (2.0 * a);
            out.regime_note = "L2-L2, s < 2 sigma1";
        } else {
            out.exponent = -q.s / (2.0 * a) + s1 / a;
            out.regime_note = "L2-L2, s >= 2 sigma1";
        }
        out.validity.push_back(checked("n >= 1", true));
        return out;
    }

    const double m0 = m_zero(q.m);
    if (q.j == 1) {
        out.exponent = lm_decay(cfg, q.m) - 1.0 - (q.s - 2.0 * s1) / (2.0 * a);
        out.regime_note = "LmL2, j=1";
        out.validity.push_back(checked("n >= 1", true));
        return out;
    }

    if (q.s == 0.0) {
        const double crit = 2.0 * m0 * s1;
        if (n > crit) {
            out.exponent = lm_decay(cfg, q.m) + s1 / a;
            out.regime_note = "LmL2, j=0, n > 2 m0 sigma1";
            out.validity.push_back(checked("n > 2 m0 sigma1", true));
        } else if (n == crit) {
            out.exponent = 0.0;
            out.log_factor = true;
            out.regime_note = "LmL2, j=0, critical n = 2 m0 sigma1 (log factor)";
            out.validity.push_back(checked("n = 2 m0 sigma1", true));
        } else {
            require(false, "n >= 2 m0 sigma1 fails for (s,j) = (0,0)");
        }
        return out;
    }

    std::ostringstream cond;
    cond << "n > m0 (2 sigma1 - s) (" << n << " > " << m0 * (2.0 * s1 - q.s) << ")";
    require(n > m0 * (2.0 * s1 - q.s), cond.str());
    out.exponent = lm_decay(cfg, q.m) - (q.s - 2.0 * s1) / (2.0 * a);
    out.regime_note = "LmL2, j=0, s > 0";
    out.validity.push_back(checked(cond.str(), true));
    return out;
}

RatePrediction profile_rate(const ValidatedConfig& cfg, double s, int j) {
    const double n = cfg.dim_n();
    const double s1 = cfg.sigma1();
    const double a = cfg.diffusion_order();
    require(n > 4.0 * s1, "profile theorem requires n > 4 sigma1");
    RatePrediction out;
    out.exponent = -n / (4.0 * a) - s / (2.0 * a) - j + s1 / a;
    out.regime_note = "asymptotic profile remainder";
    out.validity.push_back(checked("n > 4 sigma1", true));
    return out;
}

std::array<RatePrediction, 4> kernel_piece_rates(const ValidatedConfig& cfg, double m, double s,
                                                 int j) {
    const double n = cfg.dim_n();
    const double s1 = cfg.sigma1();
    const double sg = cfg.sigma();
    const double a = cfg.diffusion_order();
    const double m0 = m_zero(m);
    const double lm = lm_decay(cfg, m);
    const bool k1_ok = n > 2.0 * m0 * s1;

    std::array<RatePrediction, 4> out;

    out[0].exponent = lm - s / (2.0 * a) - j;
    out[0].regime_note = "K0 slow piece";

    if (s1 > 0.0) {
        out[1].exponent =
            -n / (2.0 * s1) * (1.0 / m - 0.5) - s / (2.0 * s1) - j - (sg - 2.0 * s1) / s1;
        out[1].regime_note = "K0 fast piece";
    } else {
        out[1].exponential = true;
        out[1].regime_note = "K0 fast piece: exponentially decaying (sigma1 = 0)";
    }

    require(k1_ok, "K1 pieces require n > 2 m0 sigma1");
    out[2].exponent = lm - s / (2.0 * a) - j + s1 / a;
    out[2].regime_note = "K1 slow piece";

    if (s1 > 0.0) {
        out[3].exponent = -n / (2.0 * s1) * (1.0 / m - 0.5) - s / (2.0 * s1) - j + 1.0;
        out[3].regime_note = "K1 fast piece";
    } else {
        out[3].exponential = true;
        out[3].regime_note = "K1 fast piece: exponentially decaying (sigma1 = 0)";
    }

    for (auto& r : out) r.validity.push_back(checked("n > 2 m0 sigma1", k1_ok));
    return out;
}

RatePrediction profile_gap_rate(const ValidatedConfig& cfg, double m, double s, int j,
                                ProfilePiece piece) {
    const double s1 = cfg.sigma1();
    const double s2 = cfg.sigma2();
    const double sg = cfg.sigma();
    const double a = cfg.diffusion_order();
    const bool steep = s1 + s2 > sg;
    const double lm = lm_decay(cfg, m);

    RatePrediction out;
    if (piece == ProfilePiece::K0Piece) {
        out.exponent = lm - s / (2.0 * a) - j - (steep ? (sg - 2.0 * s1) / a : (s2 - s1) / a);
        out.regime_note = steep ? "K0 gap, sigma1+sigma2 > sigma" : "K0 gap, sigma1+sigma2 <= sigma";
    } else {
        require(cfg.dim_n() > 2.0 * m_zero(m) * s1, "K1 gap requires n > 2 m0 sigma1");
        out.exponent = lm - s / (2.0 * a) - j - (steep ? (sg - 3.0 * s1) / a : (s2 - 2.0 * s1) / a);
        out.regime_note = steep ? "K1 gap, sigma1+sigma2 > sigma" : "K1 gap, sigma1+sigma2 <= sigma";
    }
    return out;
}

RatePrediction gamma_s(const ValidatedConfig& cfg, double s, int j) {
    const double n = cfg.dim_n();
    const double s1 = cfg.sigma1();
    const double s2 = cfg.sigma2();
    const double sg = cfg.sigma();
    const double a = cfg.diffusion_order();
    require(n > 4.0 * s1, "Gamma(s) is stated for m=1 data (m0=2): requires n > 4 sigma1");
    const bool steep = s1 + s2 > sg;

    const double branch1 =
        -n / (4.0 * a) - s / (2.0 * a) - j - (steep ? (sg - 3.0 * s1) / a : (s2 - 2.0 * s1) / a);
    RatePrediction out;
    if (s1 > 0.0) {
        const double branch2 = -n / (4.0 * s1) - s / (2.0 * s1) - j + 1.0;
        out.exponent = std::max(branch1, branch2);
        out.regime_note = steep ? "Gamma(s), sigma1+sigma2 > sigma" : "Gamma(s), sigma1+sigma2 <= sigma";
    } else {
        out.exponent = branch1;  // the -n/(4 sigma1) branch is -inf
        out.regime_note = "Gamma(s), sigma1 = 0 (single branch)";
    }
    out.validity.push_back(checked("n > 4 sigma1", true));
    return out;
}

std::vector<SemilinearRate> semilinear_decay_exponents(const ValidatedConfig& cfg, double m) {
    const HypothesisReport hyp = check_global_existence_hypotheses(cfg, m);
    if (!hyp.admissible) {
        std::string failed;
        for (const auto& c : hyp.checks)
            if (!c.holds) failed += (failed.empty() ? "" : "; ") + c.inequality;
        throw std::domain_error("global-existence hypotheses fail: " + failed);
    }
    const double s1 = cfg.sigma1();
    const double s2 = cfg.sigma2();
    const double a = cfg.diffusion_order();
    const double lm = lm_decay(cfg, m);

    std::vector<SemilinearRate> table;
    auto add = [&table](std::string norm, double e, std::string note) {
        RatePrediction r;
        r.exponent = e;
        r.regime_note = std::move(note);
        table.push_back({std::move(norm), std::move(r)});
    };

    if (cfg.deriv_j() == 0) {
        add("L2(u)", lm + s1 / a, "global existence j=0");
        add("L2(|D|^{2 sigma2} u)", lm - (s2 - s1) / a, "global existence j=0");
        add("L2(u_t)", -1.0, "global existence j=0");
    } else {
        const double s = hyp.s_min;
        add("L2(u)", lm + s1 / a, "global existence j=1");
        add("L2(|D|^s u)", -s2 / a, "global existence j=1");
        add("L2(u_t)", lm + s1 / a - 1.0, "global existence j=1");
        add("L2(|D|^{s-2 sigma2} u_t)", lm + s1 / a - 1.0 - (s - 2.0 * s2) / (2.0 * a),
            "global existence j=1");
    }
    return table;
}

}  // namespace sigevo
