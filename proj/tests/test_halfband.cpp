#include <doctest.h>

#include <cmath>
#include <tuple>
#include <utility>

#include "conelet/halfband.hpp"

using namespace conelet;

TEST_SUITE("halfband") {

TEST_CASE("binomials are exact") {
    CHECK(binom(0, 0) == 1.0);
    CHECK(binom(5, 2) == 10.0);
    CHECK(binom(56, 18) == 212327989773900.0);
    CHECK(binom(57, 18) == 310325523515700.0);
    CHECK(binom(4, 7) == 0.0);
}

TEST_CASE("series coefficients") {
    CHECK(halfband_q(1, 1) == std::vector<double>{1.0});
    CHECK(halfband_q(3, 2) == std::vector<double>{1.0, 3.0});
    auto q = halfband_q(39, 19);
    REQUIRE(q.size() == 19);
    CHECK(q.back() == 212327989773900.0);
}

TEST_CASE("expanded lowpass power polynomial") {
    // (1-y) and (1-y)^2 (1+2y) = 1 - 3y^2 + 2y^3
    CHECK(halfband_p(1, 1) == std::vector<double>{1.0, -1.0});
    auto p = halfband_p(2, 2);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p[2] == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(p[3] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("boundary values and range") {
    for (auto [K, L] : {std::pair{1, 1}, {2, 2}, {39, 18}, {39, 19}}) {
        CHECK(m0_sq(K, L, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m0_sq(K, L, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
        for (int i = 0; i <= 100; ++i) {
            double xi = -0.5 + i / 100.0;
            double v = m0_sq(K, L, xi);
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-9);
            CHECK(v == doctest::Approx(m0_sq(K, L, -xi)).epsilon(1e-12));
        }
    }
}

TEST_CASE("point values against independent evaluation") {
    CHECK(m0_sq(39, 19, 0.2) == doctest::Approx(0.37489794679208516).epsilon(1e-13));
    CHECK(m0_sq(39, 19, 1.0 / 6.0) == doctest::Approx(0.9007758580357794).epsilon(1e-13));
    CHECK(m0_sq(39, 18, 0.3) == doctest::Approx(9.298095467413075e-08).epsilon(1e-10));
    CHECK(m0_sq(2, 2, 0.25) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(m0_sq(39, 19, 0.25) == doctest::Approx(0.003754087767075119).epsilon(1e-12));
}

TEST_CASE("bandpass is the shifted lowpass") {
    for (int i = 0; i <= 40; ++i) {
        double xi = -1.0 + i / 20.0;
        CHECK(m1_sq(39, 18, xi) == doctest::Approx(m0_sq(39, 18, xi + 0.5)).epsilon(1e-13));
    }
    CHECK(m1_sq(39, 19, 0.25) == doctest::Approx(0.0037540877670750833).epsilon(1e-12));
    CHECK(m1_sq(39, 19, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m1_sq(39, 19, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("complementary halfband identity in the K=L case") {
    for (auto [K, L] : {std::pair{1, 1}, {2, 2}, {19, 19}}) {
        for (int i = 0; i <= 64; ++i) {
            double xi = i / 128.0;
            CHECK(m0_sq(K, L, xi) + m0_sq(K, L, xi + 0.5) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotone decrease of the lowpass power") {
    // factored evaluation (1-y)^K Q(y) is cancellation-free, unlike the
    // expanded coefficient list, so monotonicity is checked through m0_sq
    // tolerance absorbs ulp-level wobble where the flat start saturates at 1.0
    for (auto [K, L] : {std::pair{39, 18}, {39, 19}, {19, 19}}) {
        double prev = m0_sq(K, L, 0.0);
        for (int i = 1; i <= 10000; ++i) {
            double xi = 0.5 * i / 10000.0;
            double v = m0_sq(K, L, xi);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        CHECK(m0_sq(K, L, 0.25) <= 0.5 + 1e-12); // equality in the K = L case
        CHECK(prev == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("expanded coefficients divide back to the series") {
    // synthetic division by (1-y), K times, must recover Q exactly;
    // these parameter choices keep every intermediate integer below 2^53
    for (auto [K, L] : {std::pair{12, 12}, {20, 10}, {16, 8}}) {
        std::vector<double> cur = halfband_p(K, L);
        for (int pass = 0; pass < K; ++pass) {
            std::vector<double> next(cur.size() - 1);
            double carry = 0.0;
            for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
                carry += cur[i];
                next[i] = carry;
            }
            REQUIRE(cur.back() == -carry); // exact: remainder of the division is zero
            cur = std::move(next);
        }
        CHECK(cur == halfband_q(K, L));
    }
}

TEST_CASE("expanded coefficients match the factored form where stable") {
    // the expanded list alternates integers up to ~1e24 for (39,18), so float
    // evaluation is only meaningful near y = 0 where the terms stay small
    auto p = halfband_p(39, 18);
    auto q = halfband_q(39, 18);
    CHECK(p.size() == 39 + 18);
    CHECK(p[0] == 1.0);
    for (int i = 0; i <= 20; ++i) {
        double y = i / 100.0;
        double factored = std::pow(1.0 - y, 39) * polyval(q, y);
        CHECK(polyval(p, y) == doctest::Approx(factored).epsilon(1e-8));
    }
}

TEST_CASE("reduced-order variant") {
    CHECK(tilde_m0_sq(39, 27, 18, 0.2) == doctest::Approx(49.479911436637565).epsilon(1e-12));
    CHECK(tilde_m0_sq(39, 17, 18, 0.37) == doctest::Approx(0.1330614751387274).epsilon(1e-12));
    // Kprime = K collapses to the plain lowpass power
    for (int i = 0; i <= 1000; ++i) {
        double xi = i / 1000.0;
        CHECK(tilde_m0_sq(39, 39, 18, xi) ==
              doctest::Approx(m0_sq(39, 18, xi)).epsilon(1e-11));
    }
    // Kprime = 0 at xi = 1/2: plain sum of the series coefficients
    double s = 0.0;
    for (double c : halfband_q(39, 18)) s += c;
    CHECK(tilde_m0_sq(39, 0, 18, 0.5) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("interference constant") {
    CHECK(c2_constant(2, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c2_constant(2, 0, 2) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c2_constant(39, 27, 18) == doctest::Approx(63.35652993100531).epsilon(1e-12));
    CHECK(c2_constant(39, 17, 18) == doctest::Approx(10390.142902059204).epsilon(1e-12));
    CHECK(c2_constant(39, 27, 19) == doctest::Approx(78.29034786553675).epsilon(1e-12));
    CHECK(c2_constant(39, 0, 18) == doctest::Approx(97997533741800.0).epsilon(1e-12));
    CHECK(c2_constant(39, 0, 19) == doctest::Approx(310325523515700.0).epsilon(1e-12));
}

TEST_CASE("interference constant dominates the grid maximum") {
    const std::tuple<int, int, int> sets[] = {{39, 27, 18}, {39, 17, 18}, {39, 27, 19}};
    for (auto [K, Kp, L] : sets) {
        double c2 = c2_constant(K, Kp, L);
        double mx = 0.0;
        for (int i = 0; i <= 4096; ++i)
            mx = std::max(mx, tilde_m0_sq(K, Kp, L, i / 4096.0));
        CHECK(mx <= c2 * (1.0 + 1e-9));
    }
}

TEST_CASE("interference constant respects the closed-form cap") {
    // c2(K, 0, L) <= 2^(2K - L/2 - 1)
    const std::pair<int, int> sets[] = {{39, 18}, {39, 19}, {30, 20}, {15, 10}};
    for (auto [K, L] : sets) {
        double cap = std::pow(2.0, 2.0 * K - 0.5 * L - 1.0);
        CHECK(c2_constant(K, 0, L) <= cap * (1.0 + 1e-9));
    }
}

TEST_CASE("absolute first moment of the reduced-power coefficients") {
    CHECK(h_abs_moment(39, 27, 18) == doctest::Approx(278.48281365781065).epsilon(1e-11));
    CHECK(h_abs_moment(39, 27, 19) == doctest::Approx(353.992040309649).epsilon(1e-11));
}

TEST_CASE("hypothesis gates") {
    CHECK(concavity_hypothesis(39, 18));
    CHECK(concavity_hypothesis(39, 19));
    CHECK_FALSE(concavity_hypothesis(39, 2));
    CHECK(growth_hypothesis(39, 27, 18));
    CHECK(growth_hypothesis(39, 27, 19));
    CHECK_FALSE(growth_hypothesis(39, 35, 18)); // (K-Kp)/(Kp+L-1) < 1/4
    CHECK_FALSE(growth_hypothesis(39, 27, 5));  // L too small
    CHECK(sparsity_hypothesis(39, 18));
    CHECK(sparsity_hypothesis(39, 19));
    CHECK_FALSE(sparsity_hypothesis(3, 18));
    CHECK_FALSE(sparsity_hypothesis(39, 30));
}

} // TEST_SUITE
