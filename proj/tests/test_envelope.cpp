#include <doctest.h>

#include <cmath>

#include "conelet/envelope.hpp"
#include "conelet/halfband.hpp"
#include "conelet/scaling.hpp"

using namespace conelet;

TEST_SUITE("envelope") {

TEST_CASE("constants for the published parameter sets") {
    FeasibilityEnvelope e = feasibility_envelope(39, 27, 18);
    CHECK(e.alpha == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(e.gamma == doctest::Approx(9.007289292331972).epsilon(1e-12));
    CHECK(e.q == doctest::Approx(14.937726549547083).epsilon(1e-12));
    CHECK(e.qprime == doctest::Approx(3.982533007920461).epsilon(1e-12));
    CHECK(e.r == doctest::Approx(7.965066015840922).epsilon(1e-12));
    CHECK(e.tail_product == doctest::Approx(58.27257291927789).epsilon(1e-10));
    CHECK(e.hypotheses_ok);

    FeasibilityEnvelope e2 = feasibility_envelope(39, 17, 18);
    CHECK(e2.alpha == doctest::Approx(22.0).epsilon(1e-15));
    CHECK(e2.gamma == doctest::Approx(15.328536061897553).epsilon(1e-12));
    CHECK(e2.q == doctest::Approx(15.505890644108169).epsilon(1e-12));
    CHECK(e2.qprime == doctest::Approx(3.6364010271384095).epsilon(1e-12));
    CHECK(e2.r == doctest::Approx(7.272802054276819).epsilon(1e-12));
    CHECK(e2.h_moment == doctest::Approx(52349.803639127436).epsilon(1e-10));
    CHECK(e2.tail_product == doctest::Approx(1839.4216134832661).epsilon(1e-10));

    FeasibilityEnvelope e3 = feasibility_envelope(39, 27, 19);
    CHECK(e3.alpha == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(e3.gamma == doctest::Approx(8.85461872564922).epsilon(1e-12));
    CHECK(e3.q == doctest::Approx(15.070038898323459).epsilon(1e-12));
    CHECK(e3.qprime == doctest::Approx(3.8983775519763215).epsilon(1e-12));
    CHECK(e3.r == doctest::Approx(7.796755103952643).epsilon(1e-12));
    CHECK(e3.tail_product == doctest::Approx(59.88876345158926).epsilon(1e-10));
}

TEST_CASE("structural orderings of the constants") {
    for (int kp : {16, 18, 20, 24, 27}) {
        for (int l : {18, 19}) {
            FeasibilityEnvelope e = feasibility_envelope(39, kp, l);
            CHECK(e.q > e.r);
            CHECK(e.r > e.qprime);
            CHECK(e.qprime > 0.0);
            CHECK(e.r == doctest::Approx(2.0 * e.qprime).epsilon(1e-15));
            CHECK(e.alpha > e.gamma);
            CHECK(e.gamma > 0.0);
        }
    }
}

TEST_CASE("moment sum and decay constant oracles") {
    CHECK(h_abs_moment(39, 27, 18) == doctest::Approx(278.48281365781065).epsilon(1e-11));
    CHECK(h_abs_moment(39, 27, 19) == doctest::Approx(353.992040309649).epsilon(1e-11));
    CHECK(c2_constant(39, 27, 18) == doctest::Approx(63.35652993100531).epsilon(1e-11));
    CHECK(c2_constant(39, 17, 18) == doctest::Approx(10390.142902059204).epsilon(1e-11));
    CHECK(c2_constant(39, 27, 19) == doctest::Approx(78.29034786553675).epsilon(1e-11));
}

TEST_CASE("scaling-symbol envelope dominates the truncated product") {
    FeasibilityEnvelope e = feasibility_envelope(39, 27, 18);
    // logarithmic xi sweep across five decades plus a linear one near 1
    for (int i = 0; i <= 400; ++i) {
        double xi = std::pow(10.0, -2.0 + i * (4.0 / 400.0));
        double bound = phi_upper_envelope(e, xi);
        double val = phi_hat_sq(39, 18, xi);
        CHECK(val <= bound * (1.0 + 1e-12) + 1e-300);
    }
    for (int i = 1; i <= 100; ++i) {
        double xi = i * 0.04;
        CHECK(phi_hat_sq(39, 18, xi) <= phi_upper_envelope(e, xi) * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("three-factor envelope dominates the bandpass magnitude") {
    FeasibilityEnvelope e = feasibility_envelope(39, 27, 18);
    double worst_slack = 0.0;
    for (int i1 = -40; i1 <= 40; ++i1) {
        for (int i2 = -40; i2 <= 40; ++i2) {
            double xi1 = i1 * 0.125;
            double xi2 = i2 * 0.125;
            double mag = psi_hat_abs(39, 18, xi1, xi2);
            double env = psi_envelope(e, xi1, xi2);
            CHECK(mag <= env * (1.0 + 1e-12) + 1e-300);
            if (env > 0.0) worst_slack = std::max(worst_slack, mag / env);
        }
    }
    CHECK(worst_slack <= 1.0 + 1e-12);
}

TEST_CASE("envelope factors saturate at one") {
    FeasibilityEnvelope e = feasibility_envelope(39, 27, 18);
    CHECK(psi_envelope(e, 1.0 / e.qprime, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(psi_envelope(e, 0.0, 0.0) == 0.0); // |q xi1|^alpha kills the origin
    // far tail decays at rate gamma in each axis
    double v1 = psi_envelope(e, 8.0, 0.0);
    double v2 = psi_envelope(e, 16.0, 0.0);
    CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, -e.gamma)).epsilon(1e-12));
    double w1 = psi_envelope(e, 1.0 / e.qprime, 8.0);
    double w2 = psi_envelope(e, 1.0 / e.qprime, 16.0);
    CHECK(w2 / w1 == doctest::Approx(std::pow(2.0, -e.gamma)).epsilon(1e-12));
}

TEST_CASE("auxiliary symbol point values") {
    CHECK(tilde_m0_sq(39, 27, 18, 0.2) ==
          doctest::Approx(49.479911436637565).epsilon(1e-12));
    CHECK(tilde_m0_sq(39, 17, 18, 0.37) ==
          doctest::Approx(0.1330614751387274).epsilon(1e-12));
}

} // TEST_SUITE
