#pragma once
// Maximally flat halfband magnitude polynomials and derived constants.
//
// Everything here is a pure function of small integer parameters (K, Kprime, L):
//   msq(xi)       = (1-y)^K * Q(y),  y = sin^2(pi xi),  Q(y) = sum_{n<L} C(K-1+n,n) y^n
//   tilde msq(xi) = (1-y)^Kprime * Q(y)
// msq is the squared magnitude of a lowpass filter with flatness order K at
// xi=1/2 and L at xi=0; the tilde variant redistributes the cosine factor.
#include <vector>
#include <cstdint>
#include "conelet/dd.hpp"

namespace conelet {

// exact binomial in 128-bit integer arithmetic (asserts no overflow)
__int128 binom_i128(int n, int k);
double binom(int n, int k); // exact while representable, else nearest double

// coefficients of Q(y) = sum_{n=0}^{L-1} C(K-1+n, n) y^n (exact doubles for K<=64, L<=20)
std::vector<double> halfband_q(int K, int L);

// expanded coefficients of P(y) = (1-y)^K Q(y), degree K+L-1, exact integer expansion
std::vector<double> halfband_p(int K, int L);

// Horner evaluation of a coefficient list at y
double polyval(const std::vector<double>& c, double y);

// |m0(xi)|^2 = P(sin^2 pi xi); clamped to [0,1] only by mathematics, not code
double m0_sq(int K, int L, double xi);

// |m1(xi)|^2 = |m0(xi+1/2)|^2
double m1_sq(int K, int L, double xi);

// |tilde m0(xi)|^2 = (cos^2 pi xi)^Kprime * Q(sin^2 pi xi)
double tilde_m0_sq(int K, int Kprime, int L, double xi);

// C2 = sum_{n<L} C(K-1+n,n) (Kp/(Kp+n))^Kp (n/(Kp+n))^n, 0^0 = 1;
// upper bound for max_xi |tilde m0|^2
double c2_constant(int K, int Kprime, int L);

// sum_n |h(n)| * |n| over the cosine-series coefficients of |tilde m0|^2,
// computed from the exact finite trigonometric expansion
double h_abs_moment(int K, int Kprime, int L);

// hypothesis gates used by certification paths
bool concavity_hypothesis(int K, int L);              // (L-1)/(K+L-2) >= 1/4
bool growth_hypothesis(int K, int Kprime, int L);     // L>=6, L+1<=K<=3L-2, (K-Kp)/(Kp+L-1)>=1/4
bool sparsity_hypothesis(int K, int L);               // 3L/2 <= K, L >= 2

} // namespace conelet
