#include "conelet/envelope.hpp"
#include "conelet/halfband.hpp"
#include "conelet/scaling.hpp"
#include <cmath>
#include <stdexcept>

namespace conelet {

FeasibilityEnvelope feasibility_envelope(int K, int Kprime, int L, int J1) {
    if (K <= Kprime) throw std::invalid_argument("feasibility_envelope: need Kprime < K");
    if (J1 < 1) throw std::invalid_argument("feasibility_envelope: J1 must be >= 1");
    FeasibilityEnvelope env;
    env.K = K;
    env.Kprime = Kprime;
    env.L = L;
    env.J1 = J1;
    env.alpha = static_cast<double>(K - Kprime);
    env.C2 = c2_constant(K, Kprime, L);
    env.gamma = env.alpha - 0.5 * std::log2(env.C2);
    env.q = 4.0 * M_PI * std::pow(env.C2, 1.0 / (2.0 * env.alpha));
    env.C1 = 1.0 - m0_sq(K, L, 1.0 / 6.0);
    double prod = 1.0;
    for (int j = 0; j < J1; ++j)
        prod *= tilde_m0_sq(K, Kprime, L, std::ldexp(1.0 / (2.0 * M_PI), -j));
    env.tail_product = prod;
    env.h_moment = h_abs_moment(K, Kprime, L);
    const double fudge = std::exp(std::ldexp(env.h_moment, -J1 + 1));
    env.qprime = 2.0 * M_PI * std::pow(env.C2 * prod * fudge, -1.0 / (2.0 * env.gamma));
    env.r = 2.0 * env.qprime;
    env.hypotheses_ok = growth_hypothesis(K, Kprime, L) && env.gamma > 0.0 &&
                        env.alpha > env.gamma;
    return env;
}

double phi_upper_envelope(const FeasibilityEnvelope& env, double xi) {
    const double t = std::abs(env.qprime * xi);
    if (t <= 1.0) return 1.0;
    return std::pow(t, -2.0 * env.gamma);
}

double psi_hat_abs(int K, int L, double xi1, double xi2, int J) {
    const double m1 = std::sqrt(std::max(0.0, m1_sq(K, L, 4.0 * xi1)));
    return m1 * phi_hat_abs(K, L, xi1, J) * phi_hat_abs(K, L, 2.0 * xi2, J);
}

double psi_envelope(const FeasibilityEnvelope& env, double xi1, double xi2) {
    const double a = std::min(1.0, std::pow(std::abs(env.q * xi1), env.alpha));
    const double b = std::min(1.0, std::pow(std::abs(env.qprime * xi1), -env.gamma));
    const double c = std::min(1.0, std::pow(std::abs(env.r * xi2), -env.gamma));
    return a * b * c;
}

} // namespace conelet
