#include <doctest.h>

#include <cmath>

#include "conelet/factor.hpp"
#include "conelet/halfband.hpp"
#include "conelet/scaling.hpp"

using namespace conelet;

TEST_SUITE("scaling") {

TEST_CASE("truncated product point values") {
    CHECK(phi_hat_sq(39, 18, 0.2) == doctest::Approx(0.30578154109195094).epsilon(1e-12));
    CHECK(phi_hat_sq(39, 19, 1.0 / 6.0) ==
          doctest::Approx(0.9007758556847019).epsilon(1e-12));
    CHECK(phi_hat_sq(39, 19, 3.7) ==
          doctest::Approx(5.099966244691649e-67).epsilon(1e-8));
    CHECK(phi_hat_sq(39, 18, 0.04) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi_hat_sq(39, 18, 0.0) == 1.0);
}

TEST_CASE("product bounds and symmetry") {
    for (int i = 0; i <= 200; ++i) {
        double xi = -4.0 + i / 25.0;
        double v = phi_hat_sq(39, 18, xi);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v == doctest::Approx(phi_hat_sq(39, 18, -xi)).epsilon(1e-12));
        CHECK(phi_hat_abs(39, 18, xi) == doctest::Approx(std::sqrt(v)).epsilon(1e-13));
    }
}

TEST_CASE("dilation recurrence of the truncated product") {
    // prod(J at xi) = msq(xi) * prod(J-1 at xi/2)
    for (double xi : {0.13, 0.4, 1.7}) {
        CHECK(phi_hat_sq(39, 18, xi, 30) ==
              doctest::Approx(m0_sq(39, 18, xi) * phi_hat_sq(39, 18, xi / 2.0, 29))
                  .epsilon(1e-12));
    }
}

TEST_CASE("certified lower bound") {
    CHECK(phi_lower_bound(39, 18, 40) == doctest::Approx(0.8593456804946424).epsilon(1e-12));
    CHECK(phi_lower_bound(39, 19, 40) == doctest::Approx(0.9007758556843768).epsilon(1e-12));
    // the bound is a true lower bound on [-1/6, 1/6]
    double lb = phi_lower_bound(39, 18, 40);
    for (int i = 0; i <= 100; ++i) {
        double xi = -1.0 / 6.0 + i / 300.0;
        CHECK(phi_hat_sq(39, 18, xi) >= lb - 1e-12);
    }
    // monotone improvement as the depth grows, converged by J0 = 40
    CHECK(phi_lower_bound(39, 18, 45) ==
          doctest::Approx(phi_lower_bound(39, 18, 40)).epsilon(1e-9));
}

TEST_CASE("default truncation depth rule") {
    int j0 = default_j0(39, 18);
    CHECK(j0 >= 10);
    // deeper truncation only raises the certified bound, and the increments
    // halve with each extra level, so the J0 = 40 reference is converged
    double prev = phi_lower_bound(39, 18, j0);
    double prev_gap = 1.0;
    for (int j = j0 + 1; j <= j0 + 8; ++j) {
        double cur = phi_lower_bound(39, 18, j);
        CHECK(cur >= prev);
        double gap = cur - prev;
        CHECK(gap <= 0.55 * prev_gap + 1e-300);
        prev = cur;
        prev_gap = gap;
    }
    CHECK(phi_lower_bound(39, 18, 40) - prev < 1e-3);
}

TEST_CASE("cascade samples satisfy the refinement equation") {
    FactorResult fr = spectral_factorize(5, 5);
    const int levels = 7;
    std::vector<double> phi = cascade_phi(fr.taps, levels);
    const double h = std::ldexp(1.0, -levels);

    // integral normalization: sum phi * h = 1
    double total = 0.0;
    for (double v : phi) total += v;
    CHECK(total * h == doctest::Approx(1.0).epsilon(1e-9));

    // refinement equation residual at grid points: phi(x) = 2 sum h_n phi(2x-n)
    const int n_taps = static_cast<int>(fr.taps.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        double x2 = 2.0 * (static_cast<double>(i) * h);
        double acc = 0.0;
        for (int n = 0; n < n_taps; ++n) {
            double arg = x2 - n;
            long idx = std::lround(arg / h);
            if (idx < 0 || idx >= static_cast<long>(phi.size())) continue;
            acc += 2.0 * fr.taps[static_cast<std::size_t>(n)] * phi[static_cast<std::size_t>(idx)];
        }
        worst = std::max(worst, std::abs(acc - phi[i]));
    }
    CHECK(worst <= 1e-9);
}

} // TEST_SUITE
