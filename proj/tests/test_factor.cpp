#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "conelet/factor.hpp"
#include "conelet/halfband.hpp"

using namespace conelet;

TEST_SUITE("factor") {

TEST_CASE("two-tap case") {
    FactorResult r = spectral_factorize(1, 1);
    REQUIRE(r.taps.size() == 2);
    CHECK(r.taps[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.taps[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("four-tap closed form") {
    FactorResult r = spectral_factorize(2, 2);
    REQUIRE(r.taps.size() == 4);
    const double s3 = std::sqrt(3.0);
    const double closed[4] = {(1 + s3) / 8, (3 + s3) / 8, (3 - s3) / 8, (1 - s3) / 8};
    for (int i = 0; i < 4; ++i)
        CHECK(r.taps[i] == doctest::Approx(closed[i]).epsilon(1e-10));
}

TEST_CASE("tap count, normalization, and residual across the parameter range") {
    for (auto [K, L] : {std::pair{1, 1}, {2, 2}, {5, 5}, {12, 12}, {19, 19},
                        {20, 10}, {30, 15}, {39, 18}, {39, 19}}) {
        CAPTURE(K);
        CAPTURE(L);
        FactorResult r = spectral_factorize(K, L);
        CHECK(r.taps.size() == static_cast<std::size_t>(K + L));
        double s = std::accumulate(r.taps.begin(), r.taps.end(), 0.0);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        double tol = K + L <= 30 ? 1e-10 : 1e-8;
        CHECK(r.residual <= tol);
        // re-measure independently of the struct field
        CHECK(roundtrip_residual(r.taps, K, L) <= tol);
    }
}

TEST_CASE("magnitude response matches the power polynomial pointwise") {
    FactorResult r = spectral_factorize(39, 19);
    for (int i = 0; i <= 200; ++i) {
        double xi = i / 200.0;
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < r.taps.size(); ++n) {
            re += r.taps[n] * std::cos(2.0 * M_PI * n * xi);
            im -= r.taps[n] * std::sin(2.0 * M_PI * n * xi);
        }
        CHECK(re * re + im * im == doctest::Approx(m0_sq(39, 19, xi)).epsilon(5e-8));
    }
}

TEST_CASE("minimum phase: zeros inside the closed unit disc") {
    // cumulative-energy test: among all spectral factors with the same
    // magnitude, the minimum-phase one maximizes sum_{n<m} h_n^2 for every m;
    // in particular it beats its own reversal.
    for (auto [K, L] : {std::pair{2, 2}, {5, 5}, {19, 19}}) {
        FactorResult r = spectral_factorize(K, L);
        double fwd = 0.0, rev = 0.0;
        std::size_t half = r.taps.size() / 2;
        for (std::size_t i = 0; i < half; ++i) {
            fwd += r.taps[i] * r.taps[i];
            rev += r.taps[r.taps.size() - 1 - i] * r.taps[r.taps.size() - 1 - i];
        }
        CHECK(fwd > rev);
    }
}

TEST_CASE("tolerance contract") {
    CHECK(factor_tolerance(15, 15) == 1e-10);
    CHECK(factor_tolerance(20, 11) == 1e-8);
    CHECK(factor_tolerance(39, 19) == 1e-8);
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(spectral_factorize(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(spectral_factorize(1, 0), std::invalid_argument);
}

} // TEST_SUITE
