#include "conelet/transform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <stdexcept>

#include "conelet/fft.hpp"
#include "conelet/halfband.hpp"
#include "conelet/parallel.hpp"
#include "conelet/scaling.hpp"

namespace conelet {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// fractional DFT frequency of bin p on an N-grid, in [-1/2, 1/2)
inline double bin_freq(int p, int N) {
    return (p < N / 2 ? p : p - N) / static_cast<double>(N);
}

// Largest power of two <= max(1, d).
int pow2_floor(int d) {
    if (d <= 1) return 1;
    return 1 << (std::bit_width(static_cast<unsigned>(d)) - 1);
}

// Reciprocal-of-integer test: c = 1/n for integer n >= 1.
bool reciprocal_integer(double c, int* n_out) {
    if (!(c > 0.0) || c > 1.0 + 1e-12) return false;
    double n = 1.0 / c;
    double r = std::round(n);
    if (std::abs(n - r) > 1e-9 * r) return false;
    *n_out = static_cast<int>(r);
    return true;
}

// Coverage ladder for the horizontal cone (see transform.hpp).
std::pair<int, int> ladder_steps(int j, int j_max) {
    int e = j_max - 1 - j;
    if (e == 0) return {2, 1};
    if (e == 1) return {1, 2};
    return {1 << (e - 1), 1 << (e / 2)};
}

int clamp_step(int d, int N) {
    d = std::min(pow2_floor(d), std::max(1, N / 8));
    return pow2_floor(std::max(1, d));
}

struct BandTask {
    int j, k;
    std::size_t h_slot, v_slot;
};

} // namespace

int subband_count(int j_max) {
    int total = 1;
    for (int j = 0; j < j_max; ++j) {
        int kmax = static_cast<int>(std::ceil(std::pow(2.0, j / 2.0)));
        total += 2 * (2 * kmax + 1);
    }
    return total;
}

int default_j_max(int N) {
    int lg = 0;
    while ((1 << (lg + 1)) <= N) ++lg;
    return std::max(1, lg - 3);
}

ShearletSystem build_system(int K, int L, int N, int j_max,
                            double c1, double c2, int threads) {
    if (!is_pow2(N) || N < 16)
        throw std::invalid_argument("image size must be a power of two >= 16");
    if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
    if ((1LL << j_max) > N) throw std::domain_error("scale overflow");
    if (K <= 0 || L <= 0) throw std::invalid_argument("filter orders must be positive");

    ShearletSystem sys;
    sys.N = N;
    sys.j_max = j_max;
    sys.K = K;
    sys.L = L;
    sys.c1 = c1;
    sys.c2 = c2;
    sys.sigma = std::ldexp(1.0, j_max - 3);

    int n_inv1 = 1, n_inv2 = 1;
    sys.decimated = reciprocal_integer(c1, &n_inv1) && reciprocal_integer(c2, &n_inv2);

    // --- subband metadata (order: low-pass, then per j ascending, per k
    // ascending, horizontal before vertical) ---
    auto push_band = [&](char cone, int j, int k, int d1, int d2) {
        SubbandInfo b;
        b.cone = cone;
        b.j = j;
        b.k = k;
        b.d1 = d1;
        b.d2 = d2;
        b.n1 = N / d1;
        b.n2 = N / d2;
        b.offset = sys.coeff_count;
        sys.coeff_count += static_cast<std::size_t>(b.n1) * b.n2;
        sys.subbands.push_back(b);
    };

    int d_low = 1;
    if (sys.decimated) {
        d_low = clamp_step((1 << std::max(0, j_max - 2)) / std::max(n_inv1, n_inv2), N);
    }
    push_band('l', 0, 0, d_low, d_low);

    std::vector<BandTask> tasks;
    for (int j = 0; j < j_max; ++j) {
        int kmax = static_cast<int>(std::ceil(std::pow(2.0, j / 2.0)));
        auto [l1, l2] = ladder_steps(j, j_max);
        int d1 = 1, d2 = 1;
        if (sys.decimated) {
            d1 = clamp_step(l1 / n_inv1, N);
            d2 = clamp_step(l2 / n_inv2, N);
        }
        for (int k = -kmax; k <= kmax; ++k) {
            tasks.push_back({j, k, sys.subbands.size(), sys.subbands.size() + 1});
            push_band('h', j, k, d1, d2);
            push_band('v', j, k, d2, d1);
        }
    }

    // --- filters ---
    const std::size_t nn = static_cast<std::size_t>(N) * N;
    sys.filters.assign(sys.subbands.size(), {});

    std::vector<double> fx(N);
    for (int p = 0; p < N; ++p) fx[p] = bin_freq(p, N);
    const double sig = sys.sigma;

    // low-pass: separable sum over wrap-around aliases
    {
        std::vector<std::vector<double>> prows;
        for (int a = -1; a <= 1; ++a) {
            std::vector<double> row(N);
            double mx = 0.0;
            for (int p = 0; p < N; ++p) {
                row[p] = phi_hat_abs(K, L, sig * (fx[p] + a));
                mx = std::max(mx, row[p]);
            }
            if (mx > 1e-14) prows.push_back(std::move(row));
        }
        std::vector<double> W(nn, 0.0);
        for (const auto& r1 : prows)
            for (const auto& r2 : prows)
                for (int p1 = 0; p1 < N; ++p1) {
                    double v = r1[p1];
                    if (v == 0.0) continue;
                    double* dst = W.data() + static_cast<std::size_t>(p1) * N;
                    for (int p2 = 0; p2 < N; ++p2) dst[p2] += v * r2[p2];
                }
        sys.filters[0] = std::move(W);
    }

    parallel_for(static_cast<int>(tasks.size()), [&](int ti) {
        const BandTask& t = tasks[ti];
        const double aj = std::ldexp(1.0, -t.j);
        const double rtaj = std::pow(2.0, -0.5 * t.j);
        std::vector<double> W(nn, 0.0);
        std::vector<double> f1(N), a1row(N);
        for (int a1 = -1; a1 <= 1; ++a1) {
            double mx = 0.0;
            for (int p = 0; p < N; ++p) {
                double u1 = sig * (fx[p] + a1);
                double m1 = std::sqrt(std::max(0.0, m1_sq(K, L, 4.0 * aj * u1)));
                f1[p] = m1 * phi_hat_abs(K, L, aj * u1);
                a1row[p] = 2.0 * t.k * aj * u1;
                mx = std::max(mx, f1[p]);
            }
            if (mx < 1e-13) continue;
            for (int a2 = -1; a2 <= 1; ++a2) {
                for (int p1 = 0; p1 < N; ++p1) {
                    if (f1[p1] == 0.0) continue;
                    const double base = a1row[p1];
                    double* dst = W.data() + static_cast<std::size_t>(p1) * N;
                    for (int p2 = 0; p2 < N; ++p2) {
                        double u2 = sig * (fx[p2] + a2);
                        dst[p2] += f1[p1] * phi_hat_abs(K, L, base + 2.0 * rtaj * u2);
                    }
                }
            }
        }
        // vertical cone: transpose
        std::vector<double> Wv(nn);
        for (int p1 = 0; p1 < N; ++p1)
            for (int p2 = 0; p2 < N; ++p2)
                Wv[static_cast<std::size_t>(p2) * N + p1] =
                    W[static_cast<std::size_t>(p1) * N + p2];
        sys.filters[t.h_slot] = std::move(W);
        sys.filters[t.v_slot] = std::move(Wv);
    }, threads);

    sys.gsym.assign(nn, 0.0);
    for (const auto& W : sys.filters)
        for (std::size_t p = 0; p < nn; ++p) sys.gsym[p] += W[p] * W[p];

    return sys;
}

CoefficientSet analyze(const ShearletSystem& sys, const std::vector<double>& img,
                       int threads) {
    const int N = sys.N;
    if (img.size() != static_cast<std::size_t>(N) * N)
        throw std::invalid_argument("dimension mismatch");

    std::vector<cplx> F = fft2_of_real(img, N, N);

    CoefficientSet out;
    out.N = N;
    out.j_max = sys.j_max;
    out.K = sys.K;
    out.L = sys.L;
    out.c1 = sys.c1;
    out.c2 = sys.c2;
    out.subbands = sys.subbands;
    out.data.assign(sys.coeff_count, 0.0);

    parallel_for(static_cast<int>(sys.subbands.size()), [&](int i) {
        const SubbandInfo& b = sys.subbands[i];
        const std::vector<double>& W = sys.filters[i];
        const int n1 = b.n1, n2 = b.n2;
        std::vector<cplx> folded(static_cast<std::size_t>(n1) * n2, cplx(0.0));
        for (int m1 = 0; m1 < b.d1; ++m1)
            for (int q1 = 0; q1 < n1; ++q1) {
                const std::size_t src_row = static_cast<std::size_t>(q1 + m1 * n1) * N;
                cplx* dst = folded.data() + static_cast<std::size_t>(q1) * n2;
                for (int m2 = 0; m2 < b.d2; ++m2) {
                    const int col0 = m2 * n2;
                    for (int q2 = 0; q2 < n2; ++q2) {
                        const std::size_t s = src_row + col0 + q2;
                        dst[q2] += F[s] * W[s];
                    }
                }
            }
        std::vector<double> c = ifft2_real(std::move(folded), n1, n2);
        const double scale = 1.0 / std::sqrt(static_cast<double>(b.d1) * b.d2);
        double* dst = out.data.data() + b.offset;
        for (std::size_t t = 0; t < c.size(); ++t) dst[t] = c[t] * scale;
    }, threads);

    return out;
}

namespace {

void check_match(const ShearletSystem& sys, const CoefficientSet& coeffs) {
    if (coeffs.N != sys.N || coeffs.j_max != sys.j_max || coeffs.K != sys.K ||
        coeffs.L != sys.L || coeffs.subbands.size() != sys.subbands.size())
        throw std::invalid_argument("metadata mismatch");
    for (std::size_t i = 0; i < sys.subbands.size(); ++i) {
        const SubbandInfo &a = sys.subbands[i], &b = coeffs.subbands[i];
        if (a.n1 != b.n1 || a.n2 != b.n2 || a.offset != b.offset)
            throw std::invalid_argument("metadata mismatch");
    }
    std::size_t total = sys.coeff_count;
    if (coeffs.data.size() != total) throw std::invalid_argument("metadata mismatch");
}

} // namespace

std::vector<double> adjoint(const ShearletSystem& sys, const CoefficientSet& coeffs,
                            int threads) {
    check_match(sys, coeffs);
    const int N = sys.N;
    const std::size_t nsub = sys.subbands.size();

    // phase 1: small forward DFT of every subband grid (independent)
    std::vector<std::vector<cplx>> small(nsub);
    parallel_for(static_cast<int>(nsub), [&](int i) {
        const SubbandInfo& b = sys.subbands[i];
        std::vector<cplx> s(coeffs.grid(i), coeffs.grid(i) +
                            static_cast<std::size_t>(b.n1) * b.n2);
        fft2_inplace(s.data(), b.n1, b.n2, -1);
        small[i] = std::move(s);
    }, threads);

    // phase 2: accumulate filter-weighted tilings row by row; the subband
    // order inside each row is fixed, so results do not depend on the thread
    // partition of rows.
    std::vector<cplx> acc(static_cast<std::size_t>(N) * N, cplx(0.0));
    parallel_for(N, [&](int p1) {
        cplx* arow = acc.data() + static_cast<std::size_t>(p1) * N;
        for (std::size_t i = 0; i < nsub; ++i) {
            const SubbandInfo& b = sys.subbands[i];
            const double w = std::sqrt(static_cast<double>(b.d1) * b.d2);
            const double* Wrow = sys.filters[i].data() + static_cast<std::size_t>(p1) * N;
            const cplx* srow = small[i].data() +
                               static_cast<std::size_t>(p1 % b.n1) * b.n2;
            for (int p2 = 0; p2 < N; ++p2) {
                double wv = w * Wrow[p2];
                if (wv != 0.0) arow[p2] += wv * srow[p2 % b.n2];
            }
        }
    }, threads);

    return ifft2_real(std::move(acc), N, N);
}

std::vector<double> frame_apply(const ShearletSystem& sys, const std::vector<double>& img,
                                int threads) {
    return adjoint(sys, analyze(sys, img, threads), threads);
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double y = a[i] * b[i] - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

std::vector<double> symbol_divide(const ShearletSystem& sys, const std::vector<double>& r) {
    std::vector<cplx> R = fft2_of_real(r, sys.N, sys.N);
    for (std::size_t p = 0; p < R.size(); ++p) R[p] /= sys.gsym[p];
    return ifft2_real(std::move(R), sys.N, sys.N);
}

// Preconditioned CG on the frame operator. Returns the achieved relative
// residual through *stats; throws on stall or indefiniteness.
std::vector<double> solve_frame(const ShearletSystem& sys, const std::vector<double>& b,
                                double tol, int max_iter, SolveStats* stats,
                                bool precondition, int threads) {
    const std::size_t nn = b.size();
    std::vector<double> x(nn, 0.0), r = b;
    double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        if (stats) { stats->iterations = 0; stats->relative_residual = 0.0; }
        return x;
    }
    std::vector<double> z = precondition ? symbol_divide(sys, r) : r;
    std::vector<double> p = z;
    double rz = dot(r, z);
    int it = 0;
    double rel = 1.0;
    for (it = 1; it <= max_iter; ++it) {
        std::vector<double> Ap = frame_apply(sys, p, threads);
        double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) throw std::runtime_error("not positive definite");
        double alpha = rz / pAp;
        for (std::size_t i = 0; i < nn; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        rel = std::sqrt(dot(r, r)) / b_norm;
        if (rel <= tol) break;
        z = precondition ? symbol_divide(sys, r) : r;
        double rz_next = dot(r, z);
        double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < nn; ++i) p[i] = z[i] + beta * p[i];
    }
    if (stats) {
        stats->iterations = std::min(it, max_iter);
        stats->relative_residual = rel;
    }
    if (rel > tol) {
        std::ostringstream os;
        os << "CG stalled after " << max_iter << " iterations, relative residual "
           << rel;
        throw std::runtime_error(os.str());
    }
    return x;
}

} // namespace

std::vector<double> reconstruct(const ShearletSystem& sys, const CoefficientSet& coeffs,
                                double tol, int max_iter, SolveStats* stats,
                                bool precondition, int threads) {
    std::vector<double> b = adjoint(sys, coeffs, threads);
    return solve_frame(sys, b, tol, max_iter, stats, precondition, threads);
}

std::pair<double, double> numeric_frame_bounds(const ShearletSystem& sys, int iters,
                                               std::uint64_t seed, int threads) {
    if (iters < 1) throw std::invalid_argument("iters must be >= 1");
    const std::size_t nn = static_cast<std::size_t>(sys.N) * sys.N;

    auto random_unit = [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> v(nn);
        for (auto& x : v) x = u(rng);
        double nrm = std::sqrt(dot(v, v));
        for (auto& x : v) x /= nrm;
        return v;
    };

    // top of the spectrum: power iteration with Rayleigh quotient
    std::vector<double> x = random_unit(seed);
    double lam_max = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> y = frame_apply(sys, x, threads);
        lam_max = dot(x, y);  // x has unit norm
        double nrm = std::sqrt(dot(y, y));
        if (nrm == 0.0) throw std::runtime_error("not positive definite");
        for (std::size_t i = 0; i < nn; ++i) x[i] = y[i] / nrm;
    }

    // bottom: inverse iteration via preconditioned CG solves
    std::vector<double> v = random_unit(seed ^ 0x9e3779b97f4a7c15ULL);
    double lam_min = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> y =
            solve_frame(sys, v, 1e-11, 5000, nullptr, true, threads);
        double nrm = std::sqrt(dot(y, y));
        if (nrm == 0.0) throw std::runtime_error("not positive definite");
        for (std::size_t i = 0; i < nn; ++i) v[i] = y[i] / nrm;
        std::vector<double> Sv = frame_apply(sys, v, threads);
        lam_min = dot(v, Sv);
    }
    return {lam_min, lam_max};
}

} // namespace conelet
