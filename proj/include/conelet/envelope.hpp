#pragma once
// Three-factor decay envelope for the bandpass generator
//   psi_hat(xi) = m1(4 xi1) phi_hat(xi1) phi_hat(2 xi2)
// with constants (alpha, gamma, q, q', r) derived from (K, Kprime, L).
#include <vector>

namespace conelet {

struct FeasibilityEnvelope {
    int K = 0, Kprime = 0, L = 0;
    int J1 = 40;
    double alpha = 0.0;    // K - Kprime
    double gamma = 0.0;    // alpha - log2(C2)/2
    double q = 0.0;        // 4 pi C2^{1/(2 alpha)}
    double qprime = 0.0;
    double r = 0.0;        // 2 qprime
    double C1 = 0.0;       // 1 - |m0(1/6)|^2
    double C2 = 0.0;
    double h_moment = 0.0; // sum |h(n)| |n| for |tilde m0|^2
    double tail_product = 0.0; // Prod_{j<J1} |tilde m0(2^{-j}/(2pi))|^2
    bool hypotheses_ok = false;
};

FeasibilityEnvelope feasibility_envelope(int K, int Kprime, int L, int J1 = 40);

// min{1, C2 |2 pi xi|^{-2 gamma} * tail_product * exp(2^{-J1+1} h_moment)}
// pointwise dominator of phi_hat_sq
double phi_upper_envelope(const FeasibilityEnvelope& env, double xi);

// |psi_hat| magnitude via closed-form magnitude products
double psi_hat_abs(int K, int L, double xi1, double xi2, int J = 40);

// the certified three-factor dominator of |psi_hat|:
//   min{1,|q xi1|^alpha} min{1,|q' xi1|^{-gamma}} min{1,|r xi2|^{-gamma}}
double psi_envelope(const FeasibilityEnvelope& env, double xi1, double xi2);

} // namespace conelet
