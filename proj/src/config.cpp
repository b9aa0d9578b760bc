#include "sigevo/config.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sigevo {

namespace {

[[noreturn]] void reject(const std::string& what) {
    throw std::invalid_argument("invalid config: " + what);
}

}  // namespace

ValidatedConfig validate(const ProblemConfig& c) {
    if (!(c.sigma >= 1.0)) reject("sigma >= 1 violated");
    if (!(c.sigma1 >= 0.0)) reject("sigma1 >= 0 violated");
    if (!(c.sigma1 < c.sigma / 2.0)) reject("sigma1 < sigma/2 violated");
    if (!(c.sigma / 2.0 < c.sigma2)) reject("sigma/2 < sigma2 violated");
    if (!(c.sigma2 <= c.sigma)) reject("sigma2 <= sigma violated");
    if (!(c.mu1 > 0.0)) reject("mu1 > 0 violated");
    if (!(c.mu2 > 0.0)) reject("mu2 > 0 violated");
    if (c.dim_n < 1) reject("dim_n >= 1 violated");
    if (c.nonlinearity_p && !(*c.nonlinearity_p > 1.0)) reject("nonlinearity_p > 1 violated");
    if (c.deriv_j != 0 && c.deriv_j != 1) reject("deriv_j in {0,1} violated");
    return ValidatedConfig(c);
}

double m_zero(double m) {
    if (!(m >= 1.0) || !(m < 2.0))
        throw std::invalid_argument("m_zero requires m in [1,2); the L2-L2 path does not use m0");
    return 2.0 * m / (2.0 - m);
}

void validate_query(const RateQuery& q) {
    if (!(q.m >= 1.0 && q.m <= 2.0)) throw std::invalid_argument("query: m in [1,2] violated");
    if (!(q.s >= 0.0)) throw std::invalid_argument("query: s >= 0 violated");
    if (q.j != 0 && q.j != 1) throw std::invalid_argument("query: j in {0,1} violated");
    if (q.kind == EstimateKind::LmL2 && q.m == 2.0)
        throw std::invalid_argument("query: LmL2 kind requires m < 2");
}

HypothesisReport check_global_existence_hypotheses(const ValidatedConfig& cfg, double m) {
    if (!cfg.nonlinearity_p())
        throw std::invalid_argument("check_global_existence_hypotheses requires nonlinearity_p");
    const double p = *cfg.nonlinearity_p();
    const double n = cfg.dim_n();
    const double s1 = cfg.sigma1();
    const double s2 = cfg.sigma2();
    const double sg = cfg.sigma();
    const double m0 = m_zero(m);
    const double inf = std::numeric_limits<double>::infinity();

    HypothesisReport rep;
    rep.j = cfg.deriv_j();

    auto note = [&rep](std::string ineq, bool ok) {
        rep.checks.push_back({std::move(ineq), ok});
        return ok;
    };

    std::ostringstream dim;
    dim << "n > 2 m0 sigma1 (" << n << " > " << 2.0 * m0 * s1 << ")";
    rep.dim_ok = note(dim.str(), n > 2.0 * m0 * s1);

    rep.p_window_lo = 2.0 / m;
    if (n <= 4.0 * s2) {
        rep.p_window_hi = inf;
        rep.window_nonempty = true;
    } else if (n < 8.0 * s2 / (2.0 - m)) {
        rep.p_window_hi = n / (n - 4.0 * s2);
        rep.window_nonempty = rep.p_window_lo < rep.p_window_hi;
    } else {
        rep.p_window_hi = -inf;  // no case of the theorem covers this dimension
        rep.window_nonempty = false;
    }
    rep.p_in_window = rep.window_nonempty && p >= rep.p_window_lo && p < rep.p_window_hi;
    note("p in admissible window [2/m, ...)", rep.p_in_window);

    rep.p_critical = 1.0 + 2.0 * m * sg / (n - 2.0 * m * s1);
    rep.p_above_critical = (n > 2.0 * m * s1) && p > rep.p_critical;
    std::ostringstream crit;
    crit << "p > 1 + 2 m sigma / (n - 2 m sigma1) (" << p << " > " << rep.p_critical << ")";
    note(crit.str(), rep.p_above_critical);

    if (rep.j == 1) {
        rep.s_min = std::max(2.0 * s2 + n / 2.0, 2.0 * (sg + s2 - s1));
        const double p_min = std::max(2.0 / m, 1.0 + rep.s_min - 2.0 * s2);
        rep.p_ok_derivative = p > p_min;
        std::ostringstream j1;
        j1 << "p > max{2/m, 1 + s - 2 sigma2} at s = " << rep.s_min;
        note(j1.str(), rep.p_ok_derivative);
        rep.admissible = rep.dim_ok && rep.p_ok_derivative;
    } else {
        rep.admissible = rep.dim_ok && rep.p_in_window && rep.p_above_critical;
    }
    return rep;
}

}  // namespace sigevo
