#include "conelet/scaling.hpp"
#include "conelet/halfband.hpp"
#include <cmath>
#include <stdexcept>
#include <algorithm>

namespace conelet {

namespace {
// Horner evaluation of the flatness polynomial at y = sin^2(pi xi)
inline double msq_at(const std::vector<double>& q, int K, double xi) {
    double s = std::sin(M_PI * xi);
    double y = s * s;
    double qv = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) qv = qv * y + *it;
    return std::pow(1.0 - y, K) * qv;
}
} // namespace

double phi_hat_sq(int K, int L, double xi, int J) {
    const double cap = 65536.0;
    if (xi > cap) xi = cap;
    if (xi < -cap) xi = -cap;
    const std::vector<double> q = halfband_q(K, L);
    double prod = 1.0;
    double t = xi;
    for (int j = 0; j < J; ++j) {
        prod *= msq_at(q, K, t);
        t *= 0.5;
        if (prod == 0.0) break;
    }
    return prod;
}

double phi_hat_abs(int K, int L, double xi, int J) {
    return std::sqrt(std::max(0.0, phi_hat_sq(K, L, xi, J)));
}

double phi_lower_bound(int K, int L, int J0) {
    if (J0 < 1) throw std::invalid_argument("phi_lower_bound: J0 must be >= 1");
    const std::vector<double> q = halfband_q(K, L);
    const double c1 = 1.0 - msq_at(q, K, 1.0 / 6.0);
    if (std::ldexp(c1, -J0) > 0.5)
        throw std::invalid_argument("phi_lower_bound: J0 too small for the remainder bound");
    double prod = 1.0;
    for (int j = 0; j < J0; ++j) prod *= msq_at(q, K, std::ldexp(1.0 / 6.0, -j));
    return prod * std::exp(-std::ldexp(c1, -J0 + 2));
}

int default_j0(int K, int L, int margin) {
    const double c1 = 1.0 - m0_sq(K, L, 1.0 / 6.0);
    int j0 = 1;
    while (std::ldexp(c1, -j0) > 0.5) ++j0;
    return j0 + margin;
}

namespace {
// integer-grid values of phi: eigenvector of T[i][j] = 2 h[2i - j] at eigenvalue 1,
// normalized to sum 1 (column sums of T are 1 because even/odd tap sums are 1/2
// for a filter vanishing at xi = 1/2)
std::vector<double> integer_values(const std::vector<double>& h) {
    const int n = static_cast<int>(h.size());
    std::vector<double> v(static_cast<size_t>(n), 1.0 / n);
    std::vector<double> w(static_cast<size_t>(n));
    for (int iter = 0; iter < 400; ++iter) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                int idx = 2 * i - j;
                if (idx >= 0 && idx < n) acc += 2.0 * h[static_cast<size_t>(idx)] * v[static_cast<size_t>(j)];
            }
            w[static_cast<size_t>(i)] = acc;
        }
        double sum = 0.0;
        for (double x : w) sum += x;
        if (sum == 0.0) throw std::runtime_error("cascade: transfer iteration collapsed");
        for (auto& x : w) x /= sum;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(w[static_cast<size_t>(i)] - v[static_cast<size_t>(i)]));
        v.swap(w);
        if (delta < 1e-15 && iter > 4) break;
    }
    return v;
}
} // namespace

std::vector<double> cascade_phi(const std::vector<double>& taps, int levels) {
    if (taps.size() < 2) throw std::invalid_argument("cascade_phi: need at least 2 taps");
    if (levels < 0) throw std::invalid_argument("cascade_phi: levels must be >= 0");
    const int n = static_cast<int>(taps.size());
    // values on the integer grid 0..n-1
    std::vector<double> cur = integer_values(taps);
    // refine: values at step 2^-(l+1) from step 2^-l via phi(x) = 2 sum h_m phi(2x - m)
    for (int l = 0; l < levels; ++l) {
        const int m = static_cast<int>(cur.size());       // points at spacing 2^-l covering [0, n-1]
        const int m2 = 2 * (m - 1) + 1;
        std::vector<double> next(static_cast<size_t>(m2), 0.0);
        // even positions: existing samples
        for (int i = 0; i < m; ++i) next[static_cast<size_t>(2 * i)] = cur[static_cast<size_t>(i)];
        // odd positions x = (2i+1) 2^-(l+1): 2x - k lands on the previous grid at
        // index (2x - k) * 2^l = (2i+1) - k 2^l
        const int scale = 1 << l;
        for (int i = 0; 2 * i + 1 < m2; ++i) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                int idx = (2 * i + 1) - k * scale;
                if (idx >= 0 && idx < m) acc += 2.0 * taps[static_cast<size_t>(k)] * cur[static_cast<size_t>(idx)];
            }
            next[static_cast<size_t>(2 * i + 1)] = acc;
        }
        cur.swap(next);
    }
    return cur;
}

} // namespace conelet
