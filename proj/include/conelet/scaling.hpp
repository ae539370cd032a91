#pragma once
// Scaling-function evaluation: frequency-domain truncated products of the
// halfband magnitude, certified lower bound near the origin, and the spatial
// cascade refinement with a two-method cross-check against the DFT route.
#include <vector>

namespace conelet {

// Prod_{j=0}^{J-1} |m0(2^{-j} xi)|^2, clamped to the envelope domain |xi| <= 2^16
double phi_hat_sq(int K, int L, double xi, int J = 40);

// complex-free magnitude |phi_hat| = sqrt(phi_hat_sq)
double phi_hat_abs(int K, int L, double xi, int J = 40);

// scalar lower bound for phi_hat_sq on [-1/6, 1/6]:
//   Prod_{j<J0} |m0(2^{-j}/6)|^2 * exp(-2^{-J0+2} * (1 - |m0(1/6)|^2))
// requires the concavity hypothesis and 2^{-J0} C1 <= 1/2
double phi_lower_bound(int K, int L, int J0);

// smallest J0 with 2^{-J0} C1 <= 1/2, plus margin
int default_j0(int K, int L, int margin = 10);

// spatial samples of phi on the dyadic grid 2^{-levels} * {0..(ntaps-1)*2^levels}
// via the cascade refinement phi(x) = 2 sum h_n phi(2x - n)
std::vector<double> cascade_phi(const std::vector<double>& taps, int levels);

} // namespace conelet
