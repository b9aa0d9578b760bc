#include <doctest.h>

#include <cmath>
#include <random>

#include "sigevo/config.hpp"
#include "sigevo/symbol.hpp"

using namespace sigevo;

namespace {

ValidatedConfig make(double sigma, double s1, double s2, double mu1 = 1.0, double mu2 = 1.0,
                     int n = 2) {
    ProblemConfig c;
    c.sigma = sigma; c.sigma1 = s1; c.sigma2 = s2; c.mu1 = mu1; c.mu2 = mu2; c.dim_n = n;
    return validate(c);
}

// Independent oracle: Dormand-Prince 5(4) adaptive integration of the per-mode
// ODE  y'' + b y' + c y = 0  from (y, y')(0). Never touches the kernel formulas.
struct OdeState {
    double y, yp;
};

OdeState integrate_mode_ode(double b, double c, OdeState y0, double t_end) {
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double B5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double B4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
    auto rhs = [b, c](const OdeState& s) { return OdeState{s.yp, -b * s.yp - c * s.y}; };

    OdeState y = y0;
    double t = 0.0;
    double h = std::min(1e-3, t_end > 0 ? t_end : 1e-3);
    const double tol = 1e-12;
    int guard = 0;
    while (t < t_end && guard++ < 4000000) {
        if (t + h > t_end) h = t_end - t;
        OdeState k[7];
        for (int i = 0; i < 7; ++i) {
            OdeState s = y;
            for (int j = 0; j < i; ++j) {
                s.y += h * A[i][j] * k[j].y;
                s.yp += h * A[i][j] * k[j].yp;
            }
            k[i] = rhs(s);
        }
        OdeState y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5.y += h * B5[i] * k[i].y;
            y5.yp += h * B5[i] * k[i].yp;
            y4.y += h * B4[i] * k[i].y;
            y4.yp += h * B4[i] * k[i].yp;
        }
        const double scale = tol + tol * std::max({std::abs(y5.y), std::abs(y5.yp), 1.0});
        const double err =
            std::max(std::abs(y5.y - y4.y), std::abs(y5.yp - y4.yp)) / scale;
        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        h *= std::clamp(0.9 * std::pow(err > 0 ? err : 1e-10, -0.2), 0.2, 5.0);
    }
    REQUIRE(t == doctest::Approx(t_end).epsilon(1e-12));
    return y;
}

double mode_b(const ValidatedConfig& cfg, double r) {
    return cfg.mu1() * std::pow(r, 2 * cfg.sigma1()) + cfg.mu2() * std::pow(r, 2 * cfg.sigma2());
}

}  // namespace

TEST_CASE("discriminant closed forms") {
    const auto friction_visco = make(1.0, 0.0, 1.0);
    CHECK(discriminant(friction_visco, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(discriminant(friction_visco, 0.5) == doctest::Approx(0.5625).epsilon(1e-14));
    const auto ref = make(1.0, 0.25, 0.75);
    CHECK(discriminant(ref, 1.0) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("characteristic roots factor for the friction+visco-elastic case") {
    const auto cfg = make(1.0, 0.0, 1.0);
    const auto cr = char_roots(cfg, 0.5);
    CHECK(cr.regime == Regime::RealDistinct);
    CHECK(cr.lambda1.real() == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(cr.lambda2.real() == doctest::Approx(-1.0).epsilon(1e-14));

    const auto degen = char_roots(cfg, 1.0);
    CHECK(degen.regime == Regime::NearDegenerate);
    CHECK(degen.lambda1.real() == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("small-frequency root asymptotics per the low-zone expansion") {
    const auto cfg = make(1.0, 0.25, 0.75);
    const double r = 0.01;
    const auto cr = char_roots(cfg, r);
    CHECK(cr.lambda1.real() == doctest::Approx(-std::pow(r, 1.5)).epsilon(0.1));
    CHECK(cr.lambda2.real() == doctest::Approx(-std::pow(r, 0.5)).epsilon(0.1));
}

TEST_CASE("root asymptotics with mu-dependent constants at both ends") {
    const auto cfg = make(1.3, 0.2, 1.0, 0.7, 2.0);
    const auto zb = find_eps_star(cfg);
    const double r_lo = 1e-4 * zb.eps_star;
    const auto lo = char_roots(cfg, r_lo);
    CHECK(lo.lambda2.real() / (-0.7 * std::pow(r_lo, 0.4)) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(lo.lambda1.real() * (0.7 * std::pow(r_lo, 0.4)) / (-std::pow(r_lo, 2.6)) ==
          doctest::Approx(1.0).epsilon(0.01));
    const double r_hi = 1e4 / zb.eps_star;
    const auto hi = char_roots(cfg, r_hi);
    CHECK(hi.lambda2.real() / (-2.0 * std::pow(r_hi, 2.0)) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(hi.lambda1.real() * (2.0 * std::pow(r_hi, 2.0)) / (-std::pow(r_hi, 2.6)) ==
          doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Vieta identities hold over random parameter draws") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double sigma = 1.0 + 1.5 * uni(rng);
        const double s1 = 0.49 * sigma * uni(rng);
        const double s2 = std::min(sigma / 2 + (sigma / 2) * uni(rng) + 1e-3, sigma);
        const double mu1 = 0.2 + 2.8 * uni(rng);
        const double mu2 = 0.2 + 2.8 * uni(rng);
        const auto cfg = make(sigma, s1, s2, mu1, mu2);
        const double r = std::pow(10.0, -6.0 + 12.0 * uni(rng));
        const auto cr = char_roots(cfg, r);
        const double b = mode_b(cfg, r);
        const double c = std::pow(r, 2 * sigma);
        CHECK(std::abs(cr.lambda1 + cr.lambda2 + b) <= 1e-12 * b);
        CHECK(std::abs(cr.lambda1 * cr.lambda2 - c) <= 1e-12 * c);
        CHECK(cr.lambda1.real() <= 0.0);
        CHECK(cr.lambda2.real() <= 0.0);
    }
}

TEST_CASE("kernel initial conditions at t = 0") {
    for (const auto& cfg : {make(1.0, 0.0, 1.0), make(1.6, 0.3, 1.2, 0.5, 2.0)}) {
        for (double r : {0.0, 1e-3, 0.3, 1.0, 7.0}) {
            CHECK(khat0(cfg, 0.0, r) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(khat1(cfg, 0.0, r) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(dt_khat0(cfg, 0.0, r) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(dt_khat1(cfg, 0.0, r) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("zero mode is the free particle when sigma1 > 0") {
    const auto cfg = make(1.0, 0.25, 0.75);
    const double t = 3.7;
    CHECK(khat0(cfg, t, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(khat1(cfg, t, 0.0) == doctest::Approx(t).epsilon(1e-14));
    CHECK(dt_khat0(cfg, t, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(dt_khat1(cfg, t, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernel closed forms from the factorized roots") {
    const auto cfg = make(1.0, 0.0, 1.0);
    CHECK(khat1(cfg, 2.0, 0.5) ==
          doctest::Approx((std::exp(-0.5) - std::exp(-2.0)) / 0.75).epsilon(1e-13));
    // double root at r = 1: K1 = t e^{-t}
    CHECK(khat1(cfg, 3.0, 1.0) == doctest::Approx(3.0 * std::exp(-3.0)).epsilon(1e-12));
    // dK0 = -r^{2 sigma} K1
    CHECK(dt_khat0(cfg, 2.0, 0.5) ==
          doctest::Approx(-0.25 * khat1(cfg, 2.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("dK0 + r^{2 sigma} K1 vanishes identically") {
    const auto cfg = make(1.4, 0.3, 1.1, 0.8, 1.7);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double r = std::pow(10.0, -3.0 + 5.0 * uni(rng));
        const double t = 8.0 * uni(rng);
        const double lhs = dt_khat0(cfg, t, r) + std::pow(r, 2.8) * khat1(cfg, t, r);
        CHECK(std::abs(lhs) <= 1e-10 * (1.0 + std::abs(dt_khat0(cfg, t, r))));
    }
}

TEST_CASE("kernels match the adaptive ODE oracle in all three regimes") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto ref = make(1.0, 0.25, 0.75);                 // touches disc = 0 at r = 1
    const auto cplx_cfg = make(1.0, 0.25, 0.75, 0.5, 0.5);  // genuine complex zone

    auto check_one = [&](const ValidatedConfig& cfg, double r, double t) {
        const double b = mode_b(cfg, r);
        const double c = std::pow(r, 2 * cfg.sigma());
        const OdeState y0{2.0 * uni(rng) - 1.0, 2.0 * uni(rng) - 1.0};
        const OdeState truth = integrate_mode_ode(b, c, y0, t);
        const double u = khat0(cfg, t, r) * y0.y + khat1(cfg, t, r) * y0.yp;
        const double up = dt_khat0(cfg, t, r) * y0.y + dt_khat1(cfg, t, r) * y0.yp;
        const double scale = std::abs(truth.y) + std::abs(truth.yp) + 1e-12;
        CHECK(std::abs(u - truth.y) / scale <= 1e-8);
        CHECK(std::abs(up - truth.yp) / scale <= 1e-8);
    };

    for (int i = 0; i < 25; ++i) {
        check_one(ref, std::pow(10.0, -3.0 + 2.7 * uni(rng)), 5.0 * uni(rng));  // low, real
        check_one(ref, 1.0 + 2e-3 * (uni(rng) - 0.5), 4.0 * uni(rng));          // near-degenerate
        check_one(cplx_cfg, 0.5 + 2.0 * uni(rng), 4.0 * uni(rng));              // complex pair
        check_one(ref, 1.5 + 6.0 * uni(rng), 2.0 * uni(rng));                   // high, real
    }
}

TEST_CASE("degenerate continuity: kernels approach the double-root limit") {
    const auto cfg = make(1.0, 0.25, 0.75);  // disc = r (1-r)^2, double root at r = 1
    const double t = 2.5;
    // |K1(t, r) - t e^{lbar t}| -> 0 as the discriminant vanishes
    double prev_gap = 1e300;
    for (double dr : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double r = 1.0 - dr;
        const double lbar = -0.5 * mode_b(cfg, r);
        const double gap = std::abs(khat1(cfg, t, r) - t * std::exp(lbar * t));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-8);
    const double lbar1 = -0.5 * mode_b(cfg, 1.0);
    CHECK(khat1(cfg, t, 1.0) == doctest::Approx(t * std::exp(lbar1 * t)).epsilon(1e-10));

    // the series/direct switch at |sqrt(disc) t / 2| = 0.35 introduces no jump:
    // both evaluations must agree with the exact sinh form near the switch radius
    for (double r : {0.70, 0.72, 0.74, 1.25, 1.28, 1.31}) {
        const double b = mode_b(cfg, r);
        const double A = 0.5 * std::sqrt(discriminant(cfg, r));
        const double sinh_form = std::exp(-0.5 * b * t) * t * std::sinh(A * t) / (A * t);
        CHECK(khat1(cfg, t, r) == doctest::Approx(sinh_form).epsilon(1e-12));
    }
}

TEST_CASE("sinh form of K1 agrees in the overdamped zone") {
    const auto cfg = make(1.2, 0.2, 0.9, 1.3, 0.6);
    for (double r : {1e-3, 1e-2, 0.03}) {
        for (double t : {0.5, 3.0, 20.0}) {
            const double b = mode_b(cfg, r);
            const double A = 0.5 * std::sqrt(discriminant(cfg, r));
            const double sinh_form = std::exp(-0.5 * b * t) * t *
                                     (A * t > 1e-8 ? std::sinh(A * t) / (A * t) : 1.0);
            CHECK(khat1(cfg, t, r) == doctest::Approx(sinh_form).epsilon(1e-11));
        }
    }
}

TEST_CASE("split kernels sum to the full kernels and take the stated values") {
    const auto cfg = make(1.0, 0.0, 1.0);
    const auto s = split_kernels(cfg, 1.0, 0.5);
    CHECK(s.k1_1 == doctest::Approx(std::exp(-0.25) / 0.75).epsilon(1e-13));
    CHECK(s.k0_1 + s.k0_2 == doctest::Approx(khat0(cfg, 1.0, 0.5)).epsilon(1e-12));
    CHECK(s.k1_1 + s.k1_2 == doctest::Approx(khat1(cfg, 1.0, 0.5)).epsilon(1e-12));

    const auto s0 = split_kernels(cfg, 0.0, 0.5);
    CHECK(s0.k0_1 + s0.k0_2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s0.k0_1 == doctest::Approx(1.0 / 0.75).epsilon(1e-13));  // -lambda2/(l1-l2)

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double r = 0.01 + 0.5 * uni(rng);
        const double t = 6.0 * uni(rng);
        const auto sp = split_kernels(cfg, t, r);
        CHECK(sp.k0_1 + sp.k0_2 == doctest::Approx(khat0(cfg, t, r)).epsilon(1e-12));
        CHECK(sp.k1_1 + sp.k1_2 == doctest::Approx(khat1(cfg, t, r)).epsilon(1e-12));
        CHECK(sp.dk1_1 + sp.dk1_2 == doctest::Approx(dt_khat1(cfg, t, r)).epsilon(1e-12));
    }
}

TEST_CASE("split kernels reject the near-degenerate zone") {
    const auto cfg = make(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(split_kernels(cfg, 1.0, 1.0), std::domain_error);
}

TEST_CASE("diffusion profile symbols") {
    const auto cfg = make(1.0, 0.0, 1.0);
    CHECK(ghat0(cfg, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(ghat1(cfg, 1.0, 0.7) == doctest::Approx(ghat0(cfg, 1.0, 0.7)).epsilon(1e-15));

    // self-similarity: r -> r s^{-1/(2(sigma-sigma1))}, t -> s t leaves ghat0 fixed
    const auto cfg2 = make(1.3, 0.4, 1.0);
    const double a = cfg2.diffusion_order();
    for (double r : {0.05, 0.3, 0.9}) {
        const double scaled = ghat0(cfg2, 4.0 * 2.0, r * std::pow(4.0, -1.0 / (2.0 * a)));
        CHECK(scaled == doctest::Approx(ghat0(cfg2, 2.0, r)).epsilon(1e-13));
    }
}

TEST_CASE("sign of the profile defect follows sigma1 + sigma2 vs sigma") {
    // mu1 = mu2 = 1 per the proposition's normalization
    const auto above = make(1.0, 0.3, 0.8);  // sigma1 + sigma2 = 1.1 > 1
    const auto below = make(1.2, 0.2, 0.7);  // 0.9 < 1.2
    const auto zb_a = find_eps_star(above);
    const auto zb_b = find_eps_star(below);
    for (double f : {1e-3, 3e-4, 1e-4}) {
        const double ra = f * zb_a.eps_star;
        const double defect_a =
            -char_roots(above, ra).lambda1.real() - std::pow(ra, 2.0 * above.diffusion_order());
        CHECK(defect_a > 0.0);
        const double rb = f * zb_b.eps_star;
        const double defect_b =
            -char_roots(below, rb).lambda1.real() - std::pow(rb, 2.0 * below.diffusion_order());
        CHECK(defect_b < 0.0);
    }
}

TEST_CASE("find_eps_star brackets discriminant zeros") {
    // touch cases: zero located at r = 1, eps* = 0.9 min(1, 1)
    CHECK(find_eps_star(make(1.0, 0.0, 1.0)).eps_star == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(find_eps_star(make(1.0, 0.25, 0.75)).eps_star == doctest::Approx(0.9).epsilon(1e-6));

    // genuine complex zone: 0.5 sqrt(r) + 0.5 r^{3/2} = 2 r  =>  zeros (2 -+ sqrt(3))^2
    const auto zb = find_eps_star(make(1.0, 0.25, 0.75, 0.5, 0.5));
    const double r_lo = 7.0 - 4.0 * std::sqrt(3.0);
    CHECK(zb.disc_zero_lo == doctest::Approx(r_lo).epsilon(1e-9));
    CHECK(zb.disc_zero_hi == doctest::Approx(1.0 / r_lo).epsilon(1e-9));
    CHECK(zb.eps_star == doctest::Approx(0.9 * r_lo).epsilon(1e-9));

    // no zeros anywhere: default edge
    CHECK(find_eps_star(make(1.0, 0.25, 0.75, 2.0, 2.0)).eps_star == doctest::Approx(0.5));

    // postcondition on a sweep
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double sigma = 1.0 + uni(rng);
        const auto cfg = make(sigma, 0.45 * sigma * uni(rng),
                              sigma * (0.55 + 0.45 * uni(rng)), 0.3 + 2.0 * uni(rng),
                              0.3 + 2.0 * uni(rng));
        const auto z = find_eps_star(cfg);
        CHECK(discriminant(cfg, z.eps_star) > 0.0);
        CHECK(discriminant(cfg, 1.0 / z.eps_star) > 0.0);
    }
}

TEST_CASE("cutoff partition of unity and supports") {
    ZoneBoundaries zb;
    zb.eps_star = 0.9;
    CHECK(cutoff(Zone::Low, 0.0, zb) == 1.0);
    CHECK(cutoff(Zone::Mid, 0.0, zb) == 0.0);
    CHECK(cutoff(Zone::High, 0.0, zb) == 0.0);
    CHECK(cutoff(Zone::Low, 0.75 * zb.eps_star, zb) + cutoff(Zone::Mid, 0.75 * zb.eps_star, zb) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cutoff(Zone::High, 0.75 * zb.eps_star, zb) == 0.0);
    CHECK(cutoff(Zone::High, 3.0 / zb.eps_star, zb) == 1.0);
    for (double r = 0.0; r < 5.0; r += 0.01) {
        const double sum = cutoff(Zone::Low, r, zb) + cutoff(Zone::Mid, r, zb) +
                           cutoff(Zone::High, r, zb);
        CHECK(std::abs(sum - 1.0) <= 1e-15);
    }
}
