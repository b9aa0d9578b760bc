#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sigevo/quadrature.hpp"

using namespace sigevo;

namespace {

ValidatedConfig make(double sigma, double s1, double s2, int n, double mu1 = 1.0,
                     double mu2 = 1.0) {
    ProblemConfig c;
    c.sigma = sigma; c.sigma1 = s1; c.sigma2 = s2; c.mu1 = mu1; c.mu2 = mu2; c.dim_n = n;
    return validate(c);
}

// crude composite-Simpson reference for low-zone integrals (panel-free oracle)
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("unit sphere areas") {
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("radial_norm_l2 reproduces the Gaussian closed form") {
    // multiplier ghat0 with sigma=1, sigma1=0, n=1, t=1:
    // (2 int_0^inf e^{-2r^2} dr / (2pi))^{1/2} ... = (pi/2)^{1/4} / sqrt(2 pi)
    const auto cfg = make(1.0, 0.0, 1.0, 1);
    const auto zb = find_eps_star(cfg);
    auto mult = [&](double r) { return ghat0(cfg, 1.0, r); };
    const double expected = std::pow(M_PI / 2.0, 0.25) / std::sqrt(2.0 * M_PI);
    CHECK(radial_norm_l2(cfg, mult, 0.0, std::nullopt, zb) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("zero multiplier integrates to zero") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    CHECK(radial_norm_l2(cfg, [](double) { return 0.0; }, 0.0, std::nullopt, zb) == 0.0);
}

TEST_CASE("ghat norms obey the exact self-similar scaling law") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    const double a = cfg.diffusion_order();
    for (double s : {0.0, 0.8}) {
        for (double t : {10.0, 200.0}) {
            auto m_t = [&](double r) { return ghat1(cfg, t, r); };
            auto m_4t = [&](double r) { return ghat1(cfg, 4.0 * t, r); };
            const double ratio = radial_norm_l2(cfg, m_4t, s, std::nullopt, zb) /
                                 radial_norm_l2(cfg, m_t, s, std::nullopt, zb);
            const double predicted = std::pow(
                4.0, -cfg.dim_n() / (4.0 * a) - s / (2.0 * a) + cfg.sigma1() / a);
            CHECK(ratio == doctest::Approx(predicted).epsilon(1e-8));
        }
    }
}

TEST_CASE("quadrature self-consistency under tolerance halving") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    auto f = [&](double r) {
        const double k = khat1(cfg, 50.0, r);
        return k * k;
    };
    QuadratureOptions loose;
    loose.rel_tol = 1e-8;
    QuadratureOptions tight;
    tight.rel_tol = 5e-9;
    const auto a = integrate_radial(f, 2, standard_breakpoints(zb), loose);
    const auto b = integrate_radial(f, 2, standard_breakpoints(zb), tight);
    CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate);
}

TEST_CASE("p_norm_integral at t = 0 equals the mass under the cutoff") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    // K0(0) = 1: the integral is omega_1 int chi_L r dr, K1(0) = 0
    const double got = p_norm_integral(cfg, KernelIndex::K0, 0, 0.0, 1.0, 0.0, zb);
    auto chi_r = [&](double r) { return cutoff(Zone::Low, r, zb) * r; };
    const double expected = 2.0 * M_PI * simpson(chi_r, 0.0, zb.eps_star, 4000);
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    CHECK(p_norm_integral(cfg, KernelIndex::K1, 0, 0.0, 1.0, 0.0, zb) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(got > 0.0);
}

TEST_CASE("p_norm_integral doubling ratio matches the declared envelope") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    const double T = 1e3;
    const double ratio = p_norm_integral(cfg, KernelIndex::K1, 0, 0.0, 1.0, 2 * T, zb) /
                         p_norm_integral(cfg, KernelIndex::K1, 0, 0.0, 1.0, T, zb);
    // (1+t)^{-n/(2a) + m0 sigma1/a}: 2^{-2/3}
    CHECK(ratio == doctest::Approx(std::pow(2.0, -2.0 / 3)).epsilon(0.02));
}

TEST_CASE("profile_diff_norm decays at the proposition gap rate") {
    const auto cfg = make(1.0, 0.25, 0.75, 2);
    const auto zb = find_eps_star(cfg);
    std::vector<std::pair<double, double>> samples;
    for (double t : {1e2, 1e3, 1e4}) {
        samples.emplace_back(t, profile_diff_norm(cfg, ProfileDiffPiece::K1VsG1, 0.0, 0, t, zb));
    }
    // predicted -1 by the K1 gap formula; sharp on this configuration
    const double slope = std::log(samples[2].second / samples[0].second) /
                         std::log(samples[2].first / samples[0].first);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.03));

    // t = 0: finite positive difference norm
    const double at0 = profile_diff_norm(cfg, ProfileDiffPiece::K1VsG1, 0.0, 0, 0.0, zb);
    CHECK(std::isfinite(at0));
    CHECK(at0 > 0.0);
}

TEST_CASE("middle-zone norms decay faster than any moderate power") {
    const auto cfg = make(1.0, 0.25, 0.75, 2, 0.5, 0.5);  // genuine complex middle zone
    const auto zb = find_eps_star(cfg);
    std::vector<std::pair<double, double>> samples;
    for (double t : {25.0, 100.0, 400.0, 1600.0, 6400.0}) {
        auto mult = [&](double r) { return khat1(cfg, t, r); };
        samples.emplace_back(t, radial_norm_l2(cfg, mult, 0.0, Zone::Mid, zb));
    }
    // exponential decay: consecutive log-log slopes keep steepening, eventually
    // passing any fixed power
    double prev_slope = 0.0;
    for (size_t i = 1; i < samples.size(); ++i) {
        const double slope = std::log(samples[i].second / samples[i - 1].second) /
                             std::log(samples[i].first / samples[i - 1].first);
        CHECK(slope < prev_slope);
        prev_slope = slope;
    }
    CHECK(prev_slope < -5.0);
}

TEST_CASE("fit_rate recovers exact power laws") {
    std::vector<std::pair<double, double>> s;
    for (double t = 1.0; t <= 1e4 + 1; t *= 10.0) s.emplace_back(t, 3.7 * std::pow(t, -1.0 / 3));
    const auto fit = fit_rate(s);
    CHECK(fit.slope == doctest::Approx(-1.0 / 3).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    CHECK(fit.max_residual <= 1e-12);
}

TEST_CASE("fit_rate tolerates slowly decaying perturbations") {
    std::vector<std::pair<double, double>> s;
    for (double t = 1e3; t <= 1e6 + 1; t *= 2.0)
        s.emplace_back(t, 2.0 * std::pow(t, -1.0 / 3) * (1.0 + std::pow(t, -0.5)));
    CHECK(fit_rate(s).slope == doctest::Approx(-1.0 / 3).epsilon(0.06));  // within 0.02 absolute
}

TEST_CASE("fit_rate preconditions") {
    std::vector<std::pair<double, double>> three{{1, 1}, {10, 1}, {100, 1}};
    CHECK_THROWS_AS(fit_rate(three), std::invalid_argument);
    std::vector<std::pair<double, double>> neg{{1, 1}, {10, -1}, {100, 1}, {1000, 1}};
    CHECK_THROWS_AS(fit_rate(neg), std::invalid_argument);
    std::vector<std::pair<double, double>> narrow{{1, 1}, {2, 1}, {4, 1}, {8, 1}};
    CHECK_THROWS_AS(fit_rate(narrow), std::invalid_argument);
    std::vector<std::pair<double, double>> unsorted{{1, 1}, {10, 1}, {5, 1}, {100, 1}};
    CHECK_THROWS_AS(fit_rate(unsorted), std::invalid_argument);
}
