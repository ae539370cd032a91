#pragma once
// Spectral factorization of the halfband magnitude polynomial into real
// minimum-phase lowpass taps h with sum(h) = 1 and |hhat(xi)|^2 = P(sin^2 pi xi).
#include <vector>

namespace conelet {

struct FactorResult {
    std::vector<double> taps;   // length K+L, minimum phase, sum = 1
    double residual = 0.0;      // max_xi | |hhat|^2 - P(sin^2 pi xi) | on a dense grid
};

// residual tolerance contract: 1e-10 for K+L <= 30, 1e-8 above
double factor_tolerance(int K, int L);

// throws std::runtime_error("factorization failed ...") if the residual
// exceeds factor_tolerance after refinement
FactorResult spectral_factorize(int K, int L);

// max_xi | |hhat(xi)|^2 - P(sin^2 pi xi) | over a 4001-point grid
double roundtrip_residual(const std::vector<double>& taps, int K, int L);

} // namespace conelet
