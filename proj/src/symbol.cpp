#include "sigevo/symbol.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sigevo {

namespace {

struct SymbolCoeffs {
    double b;  // mu1 r^{2 s1} + mu2 r^{2 s2}
    double c;  // r^{2 sigma}
};

SymbolCoeffs coeffs(const ValidatedConfig& cfg, double r) {
    return {cfg.mu1() * std::pow(r, 2.0 * cfg.sigma1()) +
                cfg.mu2() * std::pow(r, 2.0 * cfg.sigma2()),
            std::pow(r, 2.0 * cfg.sigma())};
}

// sum_k y^k/(2k+1)!  == sinh(z)/z with y = z^2 (also valid for y < 0: sin(z)/z)
double sinhc_series(double y) {
    return 1.0 + y * (1.0 / 6.0 + y * (1.0 / 120.0 + y * (1.0 / 5040.0 +
           y * (1.0 / 362880.0 + y * (1.0 / 39916800.0)))));
}

// sum_k y^k/(2k)!  == cosh(z) with y = z^2
double cosh_series(double y) {
    return 1.0 + y * (1.0 / 2.0 + y * (1.0 / 24.0 + y * (1.0 / 720.0 +
           y * (1.0 / 40320.0 + y * (1.0 / 3628800.0)))));
}

// |sqrt(disc) t / 2| below which the series evaluation takes over. The direct
// formulas lose ~eps/z^2 near the double root; the series is exact to O(y^6).
constexpr double kSeriesHalfWidth = 0.35;

}  // namespace

double discriminant(const ValidatedConfig& cfg, double r) {
    auto [b, c] = coeffs(cfg, r);
    return b * b - 4.0 * c;
}

CharacteristicRoots char_roots(const ValidatedConfig& cfg, double r) {
    auto [b, c] = coeffs(cfg, r);
    const double disc = b * b - 4.0 * c;
    CharacteristicRoots out;
    out.discriminant = disc;
    const double threshold = kDegenerateDelta * b * b;
    if (disc > threshold) {
        out.regime = Regime::RealDistinct;
        const double sq = std::sqrt(disc);
        // lambda1 = (-b + sq)/2 cancels when c << b^2; use -2c/(b + sq) instead
        out.lambda1 = (b > 0.0) ? -2.0 * c / (b + sq) : 0.5 * (sq - b);
        out.lambda2 = -0.5 * (b + sq);
    } else if (disc < -threshold) {
        out.regime = Regime::ComplexPair;
        const double om = 0.5 * std::sqrt(-disc);
        out.lambda1 = {-0.5 * b, om};
        out.lambda2 = {-0.5 * b, -om};
    } else {
        out.regime = Regime::NearDegenerate;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            out.lambda1 = 0.5 * (-b + sq);
            out.lambda2 = 0.5 * (-b - sq);
        } else {
            const double om = 0.5 * std::sqrt(-disc);
            out.lambda1 = {-0.5 * b, om};
            out.lambda2 = {-0.5 * b, -om};
        }
    }
    return out;
}

KernelValues kernel_values(const ValidatedConfig& cfg, double t, double r) {
    auto [b, c] = coeffs(cfg, r);
    const double disc = b * b - 4.0 * c;
    const double mean = -0.5 * b;
    const double y = 0.25 * disc * t * t;  // (Delta t)^2, signed

    KernelValues kv{};
    if (std::abs(y) <= kSeriesHalfWidth * kSeriesHalfWidth) {
        const double e = std::exp(mean * t);
        const double sc = sinhc_series(y);
        const double ch = cosh_series(y);
        kv.k1 = e * t * sc;
        kv.k0 = e * (ch - mean * t * sc);
        kv.dk1 = e * (ch + mean * t * sc);
    } else if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double l1 = (b > 0.0) ? -2.0 * c / (b + sq) : 0.5 * (sq - b);
        const double l2 = -0.5 * (b + sq);
        const double e1 = std::exp(l1 * t);
        const double e2 = std::exp(l2 * t);
        kv.k1 = (e1 - e2) / sq;
        kv.k0 = (l1 * e2 - l2 * e1) / sq;
        kv.dk1 = (l1 * e1 - l2 * e2) / sq;
    } else {
        const double om = 0.5 * std::sqrt(-disc);
        const double e = std::exp(mean * t);
        const double s = std::sin(om * t);
        const double co = std::cos(om * t);
        kv.k1 = e * s / om;
        kv.k0 = e * (co - mean * s / om);
        kv.dk1 = e * (co + mean * s / om);
    }
    kv.dk0 = -c * kv.k1;  // Vieta product lambda1 lambda2 = r^{2 sigma}
    return kv;
}

double khat0(const ValidatedConfig& cfg, double t, double r) { return kernel_values(cfg, t, r).k0; }
double khat1(const ValidatedConfig& cfg, double t, double r) { return kernel_values(cfg, t, r).k1; }
double dt_khat0(const ValidatedConfig& cfg, double t, double r) { return kernel_values(cfg, t, r).dk0; }
double dt_khat1(const ValidatedConfig& cfg, double t, double r) { return kernel_values(cfg, t, r).dk1; }

SplitKernels split_kernels(const ValidatedConfig& cfg, double t, double r) {
    const CharacteristicRoots cr = char_roots(cfg, r);
    if (cr.regime != Regime::RealDistinct)
        throw std::domain_error("split_kernels: requires the RealDistinct regime "
                                "(the split is singular near the zone boundary)");
    const double l1 = cr.lambda1.real();
    const double l2 = cr.lambda2.real();
    const double d = l1 - l2;
    const double e1 = std::exp(l1 * t);
    const double e2 = std::exp(l2 * t);
    SplitKernels s{};
    s.k0_1 = -l2 * e1 / d;
    s.k0_2 = l1 * e2 / d;
    s.k1_1 = e1 / d;
    s.k1_2 = -e2 / d;
    s.dk0_1 = -l2 * l1 * e1 / d;
    s.dk0_2 = l1 * l2 * e2 / d;
    s.dk1_1 = l1 * e1 / d;
    s.dk1_2 = -l2 * e2 / d;
    return s;
}

double ghat0(const ValidatedConfig& cfg, double t, double r) {
    return std::exp(-std::pow(r, 2.0 * cfg.diffusion_order()) * t);
}

double ghat1(const ValidatedConfig& cfg, double t, double r) {
    return std::pow(r, -2.0 * cfg.sigma1()) * ghat0(cfg, t, r);
}

double dt_ghat0(const ValidatedConfig& cfg, double t, double r) {
    return -std::pow(r, 2.0 * cfg.diffusion_order()) * ghat0(cfg, t, r);
}

double dt_ghat1(const ValidatedConfig& cfg, double t, double r) {
    return -std::pow(r, 2.0 * cfg.diffusion_order()) * ghat1(cfg, t, r);
}

namespace {

// disc(r) and mu1 r^{2s1 - s} + mu2 r^{2s2 - s} - 2 have the same sign; the
// latter is strictly convex in log r with a unique minimum.
double h_of_u(const ValidatedConfig& cfg, double u) {
    const double a1 = 2.0 * cfg.sigma1() - cfg.sigma();   // < 0
    const double a2 = 2.0 * cfg.sigma2() - cfg.sigma();   // > 0
    return cfg.mu1() * std::exp(a1 * u) + cfg.mu2() * std::exp(a2 * u) - 2.0;
}

double golden_min(const ValidatedConfig& cfg, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = h_of_u(cfg, x1), f2 = h_of_u(cfg, x2);
    for (int i = 0; i < 200; ++i) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = h_of_u(cfg, x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = h_of_u(cfg, x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_zero(const ValidatedConfig& cfg, double lo, double hi) {
    // precondition: h(lo) and h(hi) have opposite signs
    double flo = h_of_u(cfg, lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h_of_u(cfg, mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid; flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ZoneBoundaries find_eps_star(const ValidatedConfig& cfg) {
    const double u_lo = std::log(1e-9), u_hi = std::log(1e9);
    const double u_min = golden_min(cfg, u_lo, u_hi);
    const double h_min = h_of_u(cfg, u_min);

    ZoneBoundaries zb;
    if (h_min < -1e-9) {
        const double u1 = bisect_zero(cfg, u_lo, u_min);
        const double u2 = bisect_zero(cfg, u_hi, u_min);
        zb.disc_zero_lo = std::exp(u1);
        zb.disc_zero_hi = std::exp(u2);
        zb.eps_star = 0.9 * std::min(zb.disc_zero_lo, 1.0 / zb.disc_zero_hi);
    } else if (h_min <= 1e-9) {
        const double r_touch = std::exp(u_min);
        zb.disc_zero_lo = zb.disc_zero_hi = r_touch;
        zb.eps_star = 0.9 * std::min(r_touch, 1.0 / r_touch);
    } else {
        zb.eps_star = 0.5;  // discriminant never vanishes; default zone edge
    }

    // Certify positivity on dense log-spaced samples of both zones.
    const int kSamples = 10000;
    auto check_range = [&](double lo, double hi) {
        const double step = std::log(hi / lo) / (kSamples - 1);
        for (int i = 0; i < kSamples; ++i) {
            const double r = lo * std::exp(step * i);
            if (!(discriminant(cfg, r) > 0.0)) {
                std::ostringstream msg;
                msg << "find_eps_star: could not certify discriminant > 0 at r = " << r
                    << " (eps_star = " << zb.eps_star << ")";
                throw std::runtime_error(msg.str());
            }
        }
    };
    check_range(zb.eps_star * 1e-8, zb.eps_star);
    check_range(1.0 / zb.eps_star, 1e8 / zb.eps_star);
    return zb;
}

namespace {

double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

double cutoff(Zone zone, double r, const ZoneBoundaries& zb) {
    const double e = zb.eps_star;
    const double lo = 1.0 - smoothstep((r - 0.5 * e) / (0.5 * e));
    const double hi = smoothstep((r - 1.0 / e) * e);
    switch (zone) {
        case Zone::Low: return lo;
        case Zone::High: return hi;
        case Zone::Mid: return 1.0 - lo - hi;
    }
    return 0.0;
}

}  // namespace sigevo
