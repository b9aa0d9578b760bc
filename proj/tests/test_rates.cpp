#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sigevo/rates.hpp"

using namespace sigevo;

namespace {

ValidatedConfig make(double sigma, double s1, double s2, int n) {
    ProblemConfig c;
    c.sigma = sigma; c.sigma1 = s1; c.sigma2 = s2; c.dim_n = n;
    return validate(c);
}

RateQuery q_lm(double m, double s, int j) { return {m, s, j, EstimateKind::LmL2}; }
RateQuery q_l2(double s, int j) { return {2.0, s, j, EstimateKind::L2L2}; }

const ValidatedConfig kRef = make(1.0, 0.25, 0.75, 2);

}  // namespace

TEST_CASE("Lm-L2 decay table on the reference configuration") {
    CHECK(linear_decay_exponent(kRef, q_lm(1, 0, 0)).exponent ==
          doctest::Approx(-1.0 / 3).epsilon(1e-14));
    // s = 2 sigma1, j = 1: -2/3 - 1 - 0
    CHECK(linear_decay_exponent(kRef, q_lm(1, 0.5, 1)).exponent ==
          doctest::Approx(-5.0 / 3).epsilon(1e-14));
    // s = 2 sigma2, j = 0: -2/3 - (1.5-0.5)/1.5
    CHECK(linear_decay_exponent(kRef, q_lm(1, 1.5, 0)).exponent ==
          doctest::Approx(-4.0 / 3).epsilon(1e-14));
    // s = 0, j = 1: -2/3 - 1 + 1/3
    CHECK(linear_decay_exponent(kRef, q_lm(1, 0, 1)).exponent ==
          doctest::Approx(-4.0 / 3).epsilon(1e-14));
}

TEST_CASE("critical dimension rows") {
    // n = 2 m0 sigma1 = 1 with m = 1: log factor, zero exponent
    const auto crit = make(1.0, 0.25, 0.8, 1);
    const auto r = linear_decay_exponent(crit, q_lm(1, 0, 0));
    CHECK(r.log_factor);
    CHECK(r.exponent == doctest::Approx(0.0));
    // below the critical dimension the (0,0) row is out of table
    const auto below = make(1.0, 0.4, 0.8, 1);  // 2 m0 sigma1 = 1.6 > 1
    CHECK_THROWS_AS(linear_decay_exponent(below, q_lm(1, 0, 0)), std::domain_error);
}

TEST_CASE("L2-L2 table rows and the s = 2 sigma1 boundary") {
    CHECK(linear_decay_exponent(kRef, q_l2(0, 0)).exponent == doctest::Approx(1.0));  // s < 2s1
    // boundary uses the >= branch: -s/(2a) + s1/a = -1/3 + 1/3
    const auto bdry = linear_decay_exponent(kRef, q_l2(0.5, 0));
    CHECK(bdry.exponent == doctest::Approx(0.0));
    CHECK(bdry.regime_note.find(">=") != std::string::npos);
    CHECK(linear_decay_exponent(kRef, q_l2(1.5, 1)).exponent == doctest::Approx(-1.0));
}

TEST_CASE("profile remainder rate") {
    CHECK(profile_rate(kRef, 0, 0).exponent == doctest::Approx(-1.0 / 3).epsilon(1e-14));
    CHECK(profile_rate(kRef, 1.5, 0).exponent == doctest::Approx(-4.0 / 3).epsilon(1e-14));
    CHECK(profile_rate(kRef, 0, 1).exponent == doctest::Approx(-4.0 / 3).epsilon(1e-14));
    // sigma1 = 0: plain -n/(4 sigma)
    CHECK(profile_rate(make(1.5, 0.0, 1.0, 3), 0, 0).exponent ==
          doctest::Approx(-0.5).epsilon(1e-14));
    // requires n > 4 sigma1
    CHECK_THROWS_AS(profile_rate(make(1.0, 0.49, 0.8, 1), 0, 0), std::domain_error);
}

TEST_CASE("kernel piece rates on the reference configuration") {
    const auto pieces = kernel_piece_rates(kRef, 1.0, 0.0, 0);
    CHECK(pieces[0].exponent == doctest::Approx(-2.0 / 3).epsilon(1e-14));  // K0 slow
    CHECK(pieces[1].exponent == doctest::Approx(-4.0).epsilon(1e-14));      // K0 fast
    CHECK(pieces[2].exponent == doctest::Approx(-1.0 / 3).epsilon(1e-14)); // K1 slow
    CHECK(pieces[3].exponent == doctest::Approx(-1.0).epsilon(1e-14));     // K1 fast
}

TEST_CASE("kernel piece rates flag the exponential pieces at sigma1 = 0") {
    const auto pieces = kernel_piece_rates(make(1.0, 0.0, 1.0, 2), 1.0, 0.0, 0);
    CHECK(pieces[1].exponential);
    CHECK(pieces[3].exponential);
    CHECK_FALSE(pieces[0].exponential);
}

TEST_CASE("profile gap rates with the sigma1 + sigma2 case split") {
    // reference: sigma1 + sigma2 = 1 <= sigma, K1 piece at m=1, s=0, j=0
    CHECK(profile_gap_rate(kRef, 1, 0, 0, ProfilePiece::K1Piece).exponent ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(profile_gap_rate(kRef, 1, 0, 0, ProfilePiece::K0Piece).exponent ==
          doctest::Approx(-2.0 / 3 - 0.5 / 0.75).epsilon(1e-13));
    // sigma1 + sigma2 > sigma flips to the -(sigma - 2 sigma1) numerator for K0
    const auto steep = make(1.0, 0.3, 0.8, 2);
    const auto k0 = profile_gap_rate(steep, 1, 0, 0, ProfilePiece::K0Piece);
    CHECK(k0.exponent ==
          doctest::Approx(-2.0 / (2 * 0.7) * 0.5 - (1.0 - 0.6) / 0.7).epsilon(1e-13));
    CHECK(k0.regime_note.find("> sigma") != std::string::npos);
}

TEST_CASE("gap rate lies strictly below the profile rate across admissible configs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int tested = 0;
    while (tested < 1000) {
        const double sigma = 1.0 + 1.5 * uni(rng);
        const double s1 = 0.45 * sigma * uni(rng);
        const double s2 = std::min(sigma, sigma / 2 * (1.0 + uni(rng)) + 1e-3);
        const int n = 1 + static_cast<int>(6 * uni(rng));
        if (!(n > 4 * s1)) continue;
        const auto cfg = make(sigma, s1, s2, n);
        const double s = 2.0 * uni(rng);
        const int j = uni(rng) < 0.5 ? 0 : 1;
        const double prof = profile_rate(cfg, s, j).exponent;
        for (auto piece : {ProfilePiece::K0Piece, ProfilePiece::K1Piece})
            CHECK(profile_gap_rate(cfg, 1.0, s, j, piece).exponent < prof);
        ++tested;
    }
}

TEST_CASE("Gamma(s) takes the max of its two branches") {
    // reference config, s = 0, j = 0: both branches equal -1
    CHECK(gamma_s(kRef, 0, 0).exponent == doctest::Approx(-1.0).epsilon(1e-13));
    // sigma1 = 0 keeps only the K1-gap branch
    const auto s10 = make(1.0, 0.0, 1.0, 2);
    CHECK(gamma_s(s10, 0, 0).exponent ==
          doctest::Approx(profile_gap_rate(s10, 1, 0, 0, ProfilePiece::K1Piece).exponent)
              .epsilon(1e-13));
    // Gamma(s) < profile rate whenever n > 4 sigma1
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int tested = 0;
    while (tested < 500) {
        const double sigma = 1.0 + uni(rng);
        const double s1 = 0.45 * sigma * uni(rng);
        const double s2 = std::min(sigma, sigma / 2 * (1.0 + uni(rng)) + 1e-3);
        const int n = 1 + static_cast<int>(5 * uni(rng));
        if (!(n > 4 * s1)) continue;
        const auto cfg = make(sigma, s1, s2, n);
        const double s = 2.0 * uni(rng);
        CHECK(gamma_s(cfg, s, 0).exponent < profile_rate(cfg, s, 0).exponent);
        ++tested;
    }
}

TEST_CASE("semilinear decay tables") {
    ProblemConfig pc = kRef.raw();
    pc.nonlinearity_p = 3.0;
    const auto cfg = validate(pc);
    const auto table = semilinear_decay_exponents(cfg, 1.0);
    REQUIRE(table.size() == 3);
    CHECK(table[0].rate.exponent == doctest::Approx(-1.0 / 3).epsilon(1e-14));  // ||u||
    CHECK(table[1].rate.exponent == doctest::Approx(-4.0 / 3).epsilon(1e-14));  // |||D|^{2s2}u||
    CHECK(table[2].rate.exponent == doctest::Approx(-1.0).epsilon(1e-14));      // ||u_t||

    pc.deriv_j = 1;
    pc.nonlinearity_p = 9.0;
    const auto cfg1 = validate(pc);
    const auto t1 = semilinear_decay_exponents(cfg1, 1.0);
    REQUIRE(t1.size() == 4);
    CHECK(t1[1].rate.exponent == doctest::Approx(-0.75 / 0.75).epsilon(1e-14));  // -sigma2/(sigma-sigma1)

    // sigma1 -> 0 reduces ||u|| to -n/(2 sigma)(1/m - 1/2)
    ProblemConfig flat;
    flat.sigma = 1.0; flat.sigma1 = 0.0; flat.sigma2 = 1.0; flat.dim_n = 3;
    flat.nonlinearity_p = 3.0;
    const auto t0 = semilinear_decay_exponents(validate(flat), 1.0);
    CHECK(t0[0].rate.exponent == doctest::Approx(-0.75).epsilon(1e-14));
}

TEST_CASE("semilinear table surfaces failing hypotheses") {
    ProblemConfig pc = kRef.raw();
    pc.nonlinearity_p = 2.0;  // below critical 2.333
    CHECK_THROWS_AS(semilinear_decay_exponents(validate(pc), 1.0), std::domain_error);
}

TEST_CASE("exponent monotonicity in s and m") {
    for (double m : {1.0, 1.2, 1.5}) {
        double prev = linear_decay_exponent(kRef, q_lm(m, 0.6, 0)).exponent;
        for (double s = 0.8; s < 3.0; s += 0.2) {
            const double cur = linear_decay_exponent(kRef, q_lm(m, s, 0)).exponent;
            CHECK(cur < prev);
            prev = cur;
        }
    }
    // decreasing m toward 1 strengthens the decay
    double prev = linear_decay_exponent(kRef, q_lm(1.9, 1.0, 0)).exponent;
    for (double m : {1.6, 1.3, 1.0}) {
        const double cur = linear_decay_exponent(kRef, q_lm(m, 1.0, 0)).exponent;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("profile rate equals the K1 slow piece at m = 1") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int tested = 0;
    while (tested < 200) {
        const double sigma = 1.0 + uni(rng);
        const double s1 = 0.4 * sigma * uni(rng);
        const double s2 = std::min(sigma, sigma / 2 * (1.0 + uni(rng)) + 1e-3);
        const int n = 1 + static_cast<int>(4 * uni(rng));
        if (!(n > 4 * s1)) continue;
        const auto cfg = make(sigma, s1, s2, n);
        const double s = 2.0 * uni(rng);
        const int j = uni(rng) < 0.5 ? 0 : 1;
        const auto pieces = kernel_piece_rates(cfg, 1.0, s, j);
        CHECK(profile_rate(cfg, s, j).exponent ==
              doctest::Approx(pieces[2].exponent).epsilon(1e-12));
        ++tested;
    }
}
