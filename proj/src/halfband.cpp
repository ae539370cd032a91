#include "conelet/halfband.hpp"
#include <cmath>
#include <stdexcept>
#include <algorithm>

namespace conelet {

__int128 binom_i128(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        // multiply first, divide exactly afterwards (C(n, i) is integral)
        __int128 num = r * (n - k + i);
        r = num / i;
    }
    return r;
}

double binom(int n, int k) {
    return static_cast<double>(binom_i128(n, k));
}

std::vector<double> halfband_q(int K, int L) {
    if (K < 1 || L < 1) throw std::invalid_argument("halfband_q: K, L must be >= 1");
    std::vector<double> q(static_cast<size_t>(L));
    for (int n = 0; n < L; ++n) q[static_cast<size_t>(n)] = binom(K - 1 + n, n);
    return q;
}

std::vector<double> halfband_p(int K, int L) {
    // exact integer expansion of (1-y)^K * Q(y); magnitudes stay well inside __int128
    std::vector<__int128> acc(static_cast<size_t>(K + L), 0);
    for (int n = 0; n < L; ++n) {
        __int128 qn = binom_i128(K - 1 + n, n);
        for (int i = 0; i <= K; ++i) {
            __int128 term = qn * binom_i128(K, i);
            if (i % 2) term = -term;
            acc[static_cast<size_t>(n + i)] += term;
        }
    }
    std::vector<double> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<double>(acc[i]);
    return out;
}

double polyval(const std::vector<double>& c, double y) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * y + *it;
    return r;
}

double m0_sq(int K, int L, double xi) {
    double s = std::sin(M_PI * xi);
    double y = s * s;
    double qv = polyval(halfband_q(K, L), y);
    return std::pow(1.0 - y, K) * qv;
}

double m1_sq(int K, int L, double xi) { return m0_sq(K, L, xi + 0.5); }

double tilde_m0_sq(int K, int Kprime, int L, double xi) {
    double s = std::sin(M_PI * xi);
    double y = s * s;
    double qv = polyval(halfband_q(K, L), y);
    return std::pow(1.0 - y, Kprime) * qv;
}

double c2_constant(int K, int Kprime, int L) {
    double sum = 0.0;
    for (int n = 0; n < L; ++n) {
        double term = binom(K - 1 + n, n);
        if (Kprime > 0) term *= std::pow(double(Kprime) / double(Kprime + n), Kprime);
        if (n > 0) term *= std::pow(double(n) / double(Kprime + n), n);
        sum += term;
    }
    return sum;
}

double h_abs_moment(int K, int Kprime, int L) {
    // coefficients of (1-y)^Kprime Q(y) in y: exact integers
    const int deg = Kprime + L - 1;
    std::vector<__int128> py(static_cast<size_t>(deg + 1), 0);
    for (int n = 0; n < L; ++n) {
        __int128 qn = binom_i128(K - 1 + n, n);
        for (int i = 0; i <= Kprime; ++i) {
            __int128 term = qn * binom_i128(Kprime, i);
            if (i % 2) term = -term;
            py[static_cast<size_t>(n + i)] += term;
        }
    }
    // substitute y = (1-c)/2, c = cos(2 pi xi): collect coefficients of c^s in dd
    std::vector<dd> pc(static_cast<size_t>(deg + 1), dd(0.0));
    for (int m = 0; m <= deg; ++m) {
        if (py[static_cast<size_t>(m)] == 0) continue;
        dd pm(static_cast<double>(py[static_cast<size_t>(m)]));
        {   // exact __int128 -> dd conversion
            __int128 v = py[static_cast<size_t>(m)];
            double hi = static_cast<double>(v);
            double lo = static_cast<double>(v - static_cast<__int128>(hi));
            pm = dd(hi, lo);
        }
        dd scale = pm / dd(std::ldexp(1.0, m)); // py[m] / 2^m
        for (int i = 0; i <= m; ++i) {
            dd term = scale * dd(binom(m, i));
            if (i % 2) term = -term;
            pc[static_cast<size_t>(i)] = pc[static_cast<size_t>(i)] + term;
        }
    }
    // expand c^s into cosine harmonics: c^s = 2^{-s} sum_i C(s,i) cos((s-2i) theta)
    std::vector<dd> harm(static_cast<size_t>(deg + 1), dd(0.0));
    for (int s = 0; s <= deg; ++s) {
        if (pc[static_cast<size_t>(s)].hi == 0.0 && pc[static_cast<size_t>(s)].lo == 0.0) continue;
        dd scale = pc[static_cast<size_t>(s)] / dd(std::ldexp(1.0, s));
        for (int i = 0; i <= s; ++i) {
            int t = std::abs(s - 2 * i);
            harm[static_cast<size_t>(t)] = harm[static_cast<size_t>(t)] + scale * dd(binom(s, i));
        }
    }
    // |h(n)| |n|: cos(n theta) harmonic weight splits across +-n Fourier coefficients,
    // so the two-sided absolute moment equals sum_{n>=1} |harm[n]| * n
    dd total(0.0);
    for (int n = 1; n <= deg; ++n) total = total + dd_abs(harm[static_cast<size_t>(n)]) * dd(double(n));
    return to_double(total);
}

bool concavity_hypothesis(int K, int L) {
    return 4 * (L - 1) >= (K + L - 2);
}

bool growth_hypothesis(int K, int Kprime, int L) {
    if (L < 6) return false;
    if (!(L + 1 <= K && K <= 3 * L - 2)) return false;
    return 4 * (K - Kprime) >= (Kprime + L - 1);
}

bool sparsity_hypothesis(int K, int L) {
    return 2 * K >= 3 * L && L >= 2;
}

} // namespace conelet
