#include "conelet/cartoon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "conelet/factor.hpp"
#include "conelet/fft.hpp"
#include "conelet/parallel.hpp"

namespace conelet {

namespace {

constexpr double kPi = std::numbers::pi;

// Self-contained draws so the generator is identical on every platform.
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}
double gauss(std::mt19937_64& rng) {
    double u1 = 0.0;
    do { u1 = u01(rng); } while (u1 == 0.0);
    double u2 = u01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// sup over a dense grid of |d^2/dtheta^2| of the periodic series, spectral
// differentiation on M points
double curv_sup(const std::vector<double>& rho, int M) {
    std::vector<cplx> f(rho.begin(), rho.end());
    fft2_inplace(f.data(), 1, M, -1);
    for (int t = 0; t < M; ++t) {
        double n = t < M / 2 ? t : t - M;
        f[t] *= -n * n;
    }
    std::vector<double> rpp = ifft2_real(std::move(f), 1, M);
    double s = 0.0;
    for (double v : rpp) s = std::max(s, std::abs(v));
    return s;
}

} // namespace

CartoonImage make_cartoon(const CartoonSpec& spec) {
    if (spec.N < 16 || (spec.N & (spec.N - 1)) != 0)
        throw std::invalid_argument("raster size must be a power of two >= 16");
    if (!(spec.nu > 0.0)) throw std::invalid_argument("curvature budget must be positive");
    if (!(spec.rho0 > 0.0 && spec.rho0 < 1.0))
        throw std::invalid_argument("rho0 must lie in (0,1)");
    if (spec.supersample < 1) throw std::invalid_argument("supersample must be >= 1");

    std::mt19937_64 rng(spec.seed);
    const int M = 4096;

    // raw profile: low harmonics for shape wander, a mid band that carries
    // most of the curvature budget (amplitude ~ 1 at n ~ 8..14 maximizes
    // boundary length per unit of sup|rho''|)
    const int n_max = 14;
    std::vector<double> amp_cos(n_max, 0.0), amp_sin(n_max, 0.0);
    for (int n = 1; n <= 3; ++n) {
        double g = 0.15 * gauss(rng);
        double ph = 2.0 * kPi * u01(rng);
        amp_cos[n - 1] = g * std::cos(ph);
        amp_sin[n - 1] = -g * std::sin(ph);
    }
    for (int n = 8; n <= 14; ++n) {
        double mag = (0.7 + 0.6 * u01(rng)) * (u01(rng) < 0.5 ? 1.0 : -1.0);
        double ph = 2.0 * kPi * u01(rng);
        amp_cos[n - 1] = mag * std::cos(ph);
        amp_sin[n - 1] = -mag * std::sin(ph);
    }

    std::vector<double> raw(M, 0.0);
    for (int t = 0; t < M; ++t) {
        double th = 2.0 * kPi * t / M;
        double v = 0.0;
        for (int n = 1; n <= n_max; ++n)
            v += amp_cos[n - 1] * std::cos(n * th) + amp_sin[n - 1] * std::sin(n * th);
        raw[t] = v;
    }
    double sup = 0.0;
    for (double v : raw) sup = std::max(sup, std::abs(v));
    if (sup > 0.0)
        for (double& v : raw) v /= sup;

    // scale the series so sup|rho''| meets the budget exactly (or s = 1 if the
    // full-range profile stays below it); rho = rho0*(0.8 + 0.2*s*raw)
    auto rho_of = [&](double s) {
        std::vector<double> rho(M);
        for (int t = 0; t < M; ++t) rho[t] = spec.rho0 * (0.8 + 0.2 * s * raw[t]);
        return rho;
    };
    double s = 1.0;
    if (curv_sup(rho_of(1.0), M) > spec.nu) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (curv_sup(rho_of(mid), M) > spec.nu ? hi : lo) = mid;
        }
        s = lo;
    }
    std::vector<double> rho = rho_of(s);
    double curv = curv_sup(rho, M);
    if (curv > spec.nu * (1.0 + 1e-9))
        throw std::runtime_error("curvature budget infeasible");

    CartoonImage out;
    out.N = spec.N;
    out.series_scale = s;
    out.curvature_sup = curv;
    out.rho_const = spec.rho0 * 0.8;
    out.rho_cos.resize(n_max);
    out.rho_sin.resize(n_max);
    const double unit = spec.rho0 * 0.2 * s / (sup > 0.0 ? sup : 1.0);
    for (int n = 1; n <= n_max; ++n) {
        out.rho_cos[n - 1] = unit * amp_cos[n - 1];
        out.rho_sin[n - 1] = unit * amp_sin[n - 1];
    }

    // perimeter of the drawn boundary (radius rho/2, pixel units):
    // integral of hypot(r, dr/dtheta)
    {
        std::vector<cplx> f(rho.begin(), rho.end());
        fft2_inplace(f.data(), 1, M, -1);
        for (int t = 0; t < M; ++t) {
            double n = t < M / 2 ? (t == M / 2 ? 0 : t) : t - M;
            f[t] *= cplx(0.0, n);
        }
        std::vector<double> rp = ifft2_real(std::move(f), 1, M);
        double p = 0.0;
        for (int t = 0; t < M; ++t) p += std::hypot(0.5 * rho[t], 0.5 * rp[t]);
        out.perimeter_px = p * (2.0 * kPi / M) * spec.N;
    }

    const double cx = 0.5 + 0.02 * gauss(rng);
    const double cy = 0.5 + 0.02 * gauss(rng);
    out.center_x = cx;
    out.center_y = cy;

    // smooth band-limited fields, sup-normalized
    auto field = [&](double amp) {
        std::vector<double> f(static_cast<std::size_t>(spec.N) * spec.N, 0.0);
        for (int h = 0; h < 3; ++h) {
            int kx = 1 + static_cast<int>(u01(rng) * 3.0);
            int ky = 1 + static_cast<int>(u01(rng) * 3.0);
            kx = std::min(kx, 3);
            ky = std::min(ky, 3);
            double p1 = 2.0 * kPi * u01(rng), p2 = 2.0 * kPi * u01(rng);
            double g = gauss(rng);
            for (int i = 0; i < spec.N; ++i) {
                double x = (i + 0.5) / spec.N;
                double rowv = g * std::cos(2.0 * kPi * kx * x + p1);
                double* dst = f.data() + static_cast<std::size_t>(i) * spec.N;
                for (int jj = 0; jj < spec.N; ++jj) {
                    double y = (jj + 0.5) / spec.N;
                    dst[jj] += rowv * std::cos(2.0 * kPi * ky * y + p2);
                }
            }
        }
        double mx = 0.0;
        for (double v : f) mx = std::max(mx, std::abs(v));
        if (mx > 0.0)
            for (double& v : f) v *= amp / mx;
        return f;
    };
    std::vector<double> f0 = field(spec.amp0);
    std::vector<double> f1 = field(spec.amp1);

    // indicator of the star body, supersampled and box-averaged
    const int ss = spec.supersample;
    const int NS = spec.N * ss;
    std::vector<double> inside(static_cast<std::size_t>(spec.N) * spec.N, 0.0);
    if (!spec.smooth_only) {
        const double w = 1.0 / (static_cast<double>(ss) * ss);
        for (int i = 0; i < NS; ++i) {
            double x = (i + 0.5) / NS - cx;
            double* dst = inside.data() + static_cast<std::size_t>(i / ss) * spec.N;
            for (int jj = 0; jj < NS; ++jj) {
                double y = (jj + 0.5) / NS - cy;
                double th = std::atan2(y, x);
                if (th < 0.0) th += 2.0 * kPi;
                double ft = th * M / (2.0 * kPi);
                int t0 = static_cast<int>(ft) % M;
                double fr = ft - std::floor(ft);
                double r_at = 0.5 * ((1.0 - fr) * rho[t0] + fr * rho[(t0 + 1) % M]);
                if (x * x + y * y <= r_at * r_at) dst[jj / ss] += w;
            }
        }
    }

    out.pixels.resize(static_cast<std::size_t>(spec.N) * spec.N);
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        double v = spec.base + f0[i] + (spec.jump + f1[i]) * inside[i];
        out.pixels[i] = std::min(1.0, std::max(0.0, v));
    }
    return out;
}

namespace {

double deflate(std::size_t n, double err) {
    double ln = std::log(static_cast<double>(n));
    return n >= 2 ? err * static_cast<double>(n) * static_cast<double>(n) / (ln * ln * ln)
                  : err;
}

// indices of the n largest magnitudes, ties resolved by storage order
std::vector<std::size_t> magnitude_order(const std::vector<double>& data) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(data[a]) > std::abs(data[b]);
    });
    return order;
}

} // namespace

std::vector<DecayPoint> n_term_error(const ShearletSystem& sys,
                                     const std::vector<double>& img,
                                     const std::vector<std::size_t>& n_list,
                                     double tol, int threads) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] < n_list[i - 1])
            throw std::invalid_argument("n_list must be ascending");

    CoefficientSet coeffs = analyze(sys, img, threads);
    std::vector<std::size_t> order = magnitude_order(coeffs.data);

    std::vector<DecayPoint> curve;
    CoefficientSet kept = coeffs;
    for (std::size_t n : n_list) {
        std::fill(kept.data.begin(), kept.data.end(), 0.0);
        std::size_t m = std::min(n, order.size());
        for (std::size_t i = 0; i < m; ++i) kept.data[order[i]] = coeffs.data[order[i]];
        std::vector<double> rec = reconstruct(sys, kept, tol, 2000, nullptr, true, threads);
        double err = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) {
            double d = img[i] - rec[i];
            err += d * d;
        }
        curve.push_back({n, err, deflate(n, err)});
    }
    return curve;
}

// --- separable periodic orthonormal wavelet transform ------------------------

namespace {

struct Dwt {
    std::vector<double> h, g;

    // one analysis split along rows of an r x c array (stride c)
    void split_rows(const std::vector<double>& x, int r, int c,
                    std::vector<double>& lo, std::vector<double>& hi) const {
        const int half = r / 2;
        lo.assign(static_cast<std::size_t>(half) * c, 0.0);
        hi.assign(static_cast<std::size_t>(half) * c, 0.0);
        for (int t = 0; t < half; ++t)
            for (std::size_t n = 0; n < h.size(); ++n) {
                int src = static_cast<int>((2 * t + n) % static_cast<std::size_t>(r));
                const double* xr = x.data() + static_cast<std::size_t>(src) * c;
                double* lr = lo.data() + static_cast<std::size_t>(t) * c;
                double* hr = hi.data() + static_cast<std::size_t>(t) * c;
                for (int q = 0; q < c; ++q) {
                    lr[q] += h[n] * xr[q];
                    hr[q] += g[n] * xr[q];
                }
            }
    }

    void merge_rows(const std::vector<double>& lo, const std::vector<double>& hi,
                    int half, int c, std::vector<double>& x) const {
        const int r = 2 * half;
        x.assign(static_cast<std::size_t>(r) * c, 0.0);
        for (int t = 0; t < half; ++t)
            for (std::size_t n = 0; n < h.size(); ++n) {
                int dst = static_cast<int>((2 * t + n) % static_cast<std::size_t>(r));
                double* xr = x.data() + static_cast<std::size_t>(dst) * c;
                const double* lr = lo.data() + static_cast<std::size_t>(t) * c;
                const double* hr = hi.data() + static_cast<std::size_t>(t) * c;
                for (int q = 0; q < c; ++q) xr[q] += h[n] * lr[q] + g[n] * hr[q];
            }
    }
};

std::vector<double> transpose(const std::vector<double>& x, int r, int c) {
    std::vector<double> y(x.size());
    for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < c; ++jj)
            y[static_cast<std::size_t>(jj) * r + i] = x[static_cast<std::size_t>(i) * c + jj];
    return y;
}

} // namespace

std::vector<DecayPoint> wavelet_n_term_error(const std::vector<double>& img,
                                             int N, int L,
                                             const std::vector<std::size_t>& n_list,
                                             int levels) {
    if (img.size() != static_cast<std::size_t>(N) * N)
        throw std::invalid_argument("dimension mismatch");
    if (levels < 1 || (N >> levels) < 1)
        throw std::invalid_argument("too many levels");

    Dwt d;
    {
        FactorResult fr = spectral_factorize(L, L);
        d.h.resize(fr.taps.size());
        for (std::size_t i = 0; i < fr.taps.size(); ++i)
            d.h[i] = fr.taps[i] * std::sqrt(2.0);
        d.g.resize(d.h.size());
        for (std::size_t i = 0; i < d.h.size(); ++i)
            d.g[i] = (i % 2 == 0 ? 1.0 : -1.0) * d.h[d.h.size() - 1 - i];
    }

    // analysis: store [LH, HL, HH] per level, coarsest LL last
    std::vector<double> a = img;
    int side = N;
    std::vector<std::array<std::vector<double>, 3>> bands(levels);
    for (int l = 0; l < levels; ++l) {
        std::vector<double> lo, hi, ll, lh, hl, hh;
        d.split_rows(a, side, side, lo, hi);
        int half = side / 2;
        std::vector<double> loT = transpose(lo, half, side);
        std::vector<double> hiT = transpose(hi, half, side);
        d.split_rows(loT, side, half, ll, lh);
        d.split_rows(hiT, side, half, hl, hh);
        bands[l] = {transpose(lh, half, half), transpose(hl, half, half),
                    transpose(hh, half, half)};
        a = transpose(ll, half, half);
        side = half;
    }

    // flatten: coarsest LL first, then per level coarse-to-fine LH, HL, HH
    std::vector<double> flat;
    flat.reserve(img.size());
    flat.insert(flat.end(), a.begin(), a.end());
    for (int l = levels - 1; l >= 0; --l)
        for (const auto& b : bands[l]) flat.insert(flat.end(), b.begin(), b.end());

    std::vector<std::size_t> order = magnitude_order(flat);

    std::vector<DecayPoint> curve;
    for (std::size_t n : n_list) {
        std::vector<double> kept(flat.size(), 0.0);
        std::size_t m = std::min(n, order.size());
        for (std::size_t i = 0; i < m; ++i) kept[order[i]] = flat[order[i]];

        // unflatten and synthesize
        int cs = N >> levels;
        std::size_t pos = 0;
        std::vector<double> ll(kept.begin(), kept.begin() + static_cast<std::size_t>(cs) * cs);
        pos += static_cast<std::size_t>(cs) * cs;
        for (int l = levels - 1; l >= 0; --l) {
            std::array<std::vector<double>, 3> tri;
            std::size_t bs = static_cast<std::size_t>(cs) * cs;
            for (auto& b : tri) {
                b.assign(kept.begin() + pos, kept.begin() + pos + bs);
                pos += bs;
            }
            int half = cs, full = 2 * cs;
            std::vector<double> loT, hiT, lo, hi, x;
            d.merge_rows(transpose(ll, half, half), transpose(tri[0], half, half),
                         half, half, loT);
            d.merge_rows(transpose(tri[1], half, half), transpose(tri[2], half, half),
                         half, half, hiT);
            lo = transpose(loT, full, half);
            hi = transpose(hiT, full, half);
            d.merge_rows(lo, hi, half, full, x);
            ll = std::move(x);
            cs = full;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) {
            double dv = img[i] - ll[i];
            err += dv * dv;
        }
        curve.push_back({n, err, deflate(n, err)});
    }
    return curve;
}

SlopeFit slope_fit(const std::vector<DecayPoint>& curve,
                   std::size_t n_lo, std::size_t n_hi) {
    std::vector<double> xs, ys, yd;
    for (const auto& p : curve) {
        if (p.n_kept < n_lo || p.n_kept > n_hi || p.n_kept < 2) continue;
        double lN = std::log(static_cast<double>(p.n_kept));
        xs.push_back(lN);
        ys.push_back(std::log(std::max(p.err, 1e-300)));
        yd.push_back(std::log(std::max(p.err, 1e-300)) + 2.0 * lN - 3.0 * std::log(lN));
    }
    if (xs.size() < 4) throw std::runtime_error("insufficient points");

    auto ols = [&](const std::vector<double>& y) {
        double n = static_cast<double>(xs.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += y[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * y[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        return std::pair<double, double>{slope, (sy - slope * sx) / n};
    };
    SlopeFit fit;
    auto [m1, b1] = ols(ys);
    auto [m2, b2] = ols(yd);
    fit.slope = m1;
    fit.intercept = b1;
    fit.deflated_slope = m2;
    fit.deflated_intercept = b2;
    fit.points = static_cast<int>(xs.size());
    return fit;
}

} // namespace conelet
