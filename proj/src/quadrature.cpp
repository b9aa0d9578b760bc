#include "sigevo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace sigevo {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK qk15 values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;
    long index;     // creation index, deterministic tiebreak
    bool log_space; // coordinates are u = log r (tail panels)
};

struct PanelLess {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.index > y.index;
    }
};

// One GK15 evaluation of g over [a, b]; the QUADPACK error heuristic.
template <class F>
Panel gk15(const F& g, double a, double b, long index, bool log_space = false) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = g(mid - half * kXgk[i]);
        fv[14 - i] = g(mid + half * kXgk[i]);
    }
    fv[7] = g(mid);

    double res_k = kWgk[7] * fv[7];
    double res_g = kWg[3] * fv[7];
    double res_abs = kWgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        res_k += kWgk[i] * (fv[i] + fv[14 - i]);
        res_abs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) res_g += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        res_asc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    Panel p{a, b, res_k * half, 0.0, index, log_space};
    double err = std::abs(res_k - res_g) * half;
    res_asc *= half;
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    p.error = err;
    return p;
}

}  // namespace

double unit_sphere_area(int dim_n) {
    return 2.0 * std::pow(M_PI, 0.5 * dim_n) / std::tgamma(0.5 * dim_n);
}

QuadratureResult integrate_radial(const std::function<double(double)>& f, int dim_n,
                                  const std::vector<double>& breakpoints,
                                  const QuadratureOptions& opts) {
    const double omega = unit_sphere_area(dim_n);
    auto g = [&](double r) { return f(r) * std::pow(r, dim_n - 1); };
    // Tail substitution r = e^u turns int_R^inf g dr into int e^u g(e^u) du.
    auto g_log = [&](double u) {
        const double r = std::exp(u);
        return r * g(r);
    };

    // Seed edges: breakpoints inside (0, r_last], plus geometric refinement
    // toward 0 (integrands may have integrable singularities there) and a few
    // panels per decade elsewhere.
    std::vector<double> edges{0.0};
    for (double r = 1e-14; r < opts.r_last; r *= 4.0) edges.push_back(r);
    for (double b : breakpoints)
        if (b > 0.0 && b < opts.r_last) edges.push_back(b);
    edges.push_back(opts.r_last);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    long next_index = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
    double total = 0.0, total_err = 0.0;
    int panels = 0;

    auto push = [&](const Panel& p) {
        total += p.integral;
        total_err += p.error;
        heap.push(p);
        ++panels;
    };

    for (size_t i = 0; i + 1 < edges.size(); ++i)
        push(gk15(g, edges[i], edges[i + 1], next_index++));

    // Tail: unit panels in u = log r until two consecutive panels are negligible.
    {
        double u = std::log(opts.r_last);
        int quiet = 0;
        for (int k = 0; k < 600 && quiet < 2; ++k) {
            Panel p = gk15(g_log, u, u + 1.0, next_index++, true);
            const double scale = std::max(std::abs(total), opts.abs_tol);
            if (std::abs(p.integral) + p.error < 1e-3 * opts.rel_tol * scale)
                ++quiet;
            else
                quiet = 0;
            push(p);
            u += 1.0;
        }
    }

    auto tolerance = [&] {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };

    while (total_err > tolerance()) {
        if (panels >= opts.max_panels) {
            const Panel worst = heap.top();
            std::ostringstream msg;
            msg << "integrate_radial: no convergence after " << panels
                << " panels; worst panel [" << worst.a << ", " << worst.b
                << "] error " << worst.error << " total error " << total_err;
            throw std::runtime_error(msg.str());
        }
        Panel worst = heap.top();
        heap.pop();
        total -= worst.integral;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.log_space) {
            push(gk15(g_log, worst.a, mid, next_index++, true));
            push(gk15(g_log, mid, worst.b, next_index++, true));
        } else {
            push(gk15(g, worst.a, mid, next_index++));
            push(gk15(g, mid, worst.b, next_index++));
        }
    }

    return {omega * total, omega * total_err, panels, true};
}

std::vector<double> standard_breakpoints(const ZoneBoundaries& zb) {
    std::vector<double> bp{0.5 * zb.eps_star, zb.eps_star, 1.0 / zb.eps_star, 2.0 / zb.eps_star};
    if (zb.disc_zero_lo > 0.0) bp.push_back(zb.disc_zero_lo);
    if (zb.disc_zero_hi > 0.0) bp.push_back(zb.disc_zero_hi);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

double radial_norm_l2(const ValidatedConfig& cfg, const std::function<double(double)>& multiplier,
                      double s, std::optional<Zone> zone, const ZoneBoundaries& zb,
                      const QuadratureOptions& opts) {
    auto f = [&](double r) {
        double v = std::pow(r, s) * multiplier(r);
        if (zone) v *= cutoff(*zone, r, zb);
        return v * v;
    };
    const QuadratureResult q = integrate_radial(f, cfg.dim_n(), standard_breakpoints(zb), opts);
    return std::sqrt(q.value) * std::pow(2.0 * M_PI, -0.5 * cfg.dim_n());
}

double p_norm_integral(const ValidatedConfig& cfg, KernelIndex which, int j, double s, double m,
                       double t, const ZoneBoundaries& zb, const QuadratureOptions& opts) {
    const double m0 = m_zero(m);
    auto f = [&](double r) {
        const KernelValues kv = kernel_values(cfg, t, r);
        double k;
        if (which == KernelIndex::K0)
            k = (j == 0) ? kv.k0 : kv.dk0;
        else
            k = (j == 0) ? kv.k1 : kv.dk1;
        return std::pow(std::abs(k), m0) * std::pow(r, m0 * s) * cutoff(Zone::Low, r, zb);
    };
    QuadratureOptions o = opts;
    o.r_last = std::max(2.0 * zb.eps_star, 1e-6);  // integrand vanishes past eps_star
    return integrate_radial(f, cfg.dim_n(), standard_breakpoints(zb), o).value;
}

double profile_diff_norm(const ValidatedConfig& cfg, ProfileDiffPiece piece, double s, int j,
                         double t, const ZoneBoundaries& zb, const QuadratureOptions& opts) {
    auto f = [&](double r) {
        // quadrature nodes past the cutoff support would hit the split-kernel
        // singularity at the zone boundary
        if (cutoff(Zone::Low, r, zb) == 0.0) return 0.0;
        const SplitKernels sk = split_kernels(cfg, t, r);
        double diff;
        if (piece == ProfileDiffPiece::K0VsG0)
            diff = (j == 0) ? sk.k0_1 - ghat0(cfg, t, r) : sk.dk0_1 - dt_ghat0(cfg, t, r);
        else
            diff = (j == 0) ? sk.k1_1 - ghat1(cfg, t, r) : sk.dk1_1 - dt_ghat1(cfg, t, r);
        const double v = std::pow(r, s) * diff * cutoff(Zone::Low, r, zb);
        return v * v;
    };
    QuadratureOptions o = opts;
    o.r_last = std::max(2.0 * zb.eps_star, 1e-6);
    const QuadratureResult q = integrate_radial(f, cfg.dim_n(), standard_breakpoints(zb), o);
    return std::sqrt(q.value) * std::pow(2.0 * M_PI, -0.5 * cfg.dim_n());
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw std::invalid_argument("fit_rate: need at least 4 samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].second > 0.0))
            throw std::invalid_argument("fit_rate: values must be positive");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::invalid_argument("fit_rate: times must be strictly increasing");
    }
    if (!(samples.back().first >= 100.0 * samples.front().first))
        throw std::invalid_argument("fit_rate: times must span at least two decades");

    const size_t n = samples.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [t, v] : samples) {
        const double x = std::log(t), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [t, v] : samples) {
        const double resid = std::log(v) - (fit.slope * std::log(t) + fit.intercept);
        fit.max_residual = std::max(fit.max_residual, std::abs(resid));
    }
    return fit;
}

}  // namespace sigevo
