#include "conelet/factor.hpp"
#include "conelet/halfband.hpp"
#include "conelet/dd.hpp"
#include <complex>
#include <cmath>
#include <stdexcept>
#include <algorithm>

namespace conelet {

namespace {

using cplx = std::complex<double>;

// Durand-Kerner simultaneous root iteration; deterministic fixed schedule
std::vector<cplx> all_roots(const std::vector<double>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg <= 0) return {};
    std::vector<cplx> a(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) a[i] = coeffs[i] / coeffs.back();

    auto eval = [&](cplx z) {
        cplx r = 0.0;
        for (int i = deg; i >= 0; --i) r = r * z + a[static_cast<size_t>(i)];
        return r;
    };

    // Cauchy-style radius
    double R = 0.0;
    for (int i = 0; i < deg; ++i)
        R = std::max(R, std::pow(std::abs(a[static_cast<size_t>(i)]), 1.0 / (deg - i)));
    R = 2.0 * std::max(R, 0.5);

    std::vector<cplx> z(static_cast<size_t>(deg));
    for (int m = 0; m < deg; ++m) {
        double th = 2.0 * M_PI * m / deg + 0.7; // fixed phase offset avoids real-axis stalls
        z[static_cast<size_t>(m)] = R * cplx(std::cos(th), std::sin(th));
    }
    for (int it = 0; it < 600; ++it) {
        double step = 0.0;
        for (int m = 0; m < deg; ++m) {
            cplx denom = 1.0;
            for (int l = 0; l < deg; ++l)
                if (l != m) denom *= (z[static_cast<size_t>(m)] - z[static_cast<size_t>(l)]);
            cplx d = eval(z[static_cast<size_t>(m)]) / denom;
            z[static_cast<size_t>(m)] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-14) break;
    }
    return z;
}

// one Newton step of the y-polynomial in complex double-double
cdd newton_polish(const std::vector<double>& coeffs, cdd y, int iters) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    for (int it = 0; it < iters; ++it) {
        cdd p{dd(0.0), dd(0.0)}, d{dd(0.0), dd(0.0)};
        for (int i = deg; i >= 0; --i) {
            d = d * y + p;
            p = p * y + cdd{dd(coeffs[static_cast<size_t>(i)]), dd(0.0)};
        }
        if (cdd_abs2(d).hi == 0.0) break;
        y = y - p / d;
    }
    return y;
}

std::vector<dd> conv(const std::vector<dd>& a, const std::vector<dd>& b) {
    std::vector<dd> out(a.size() + b.size() - 1, dd(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

} // namespace

double factor_tolerance(int K, int L) { return (K + L <= 30) ? 1e-10 : 1e-8; }

double roundtrip_residual(const std::vector<double>& taps, int K, int L) {
    const auto q = halfband_q(K, L);
    const int M = 4000;
    double worst = 0.0;
    for (int i = 0; i <= M; ++i) {
        double xi = double(i) / M - 0.5;
        cplx z = std::exp(cplx(0.0, -2.0 * M_PI * xi));
        cplx h = 0.0;
        for (auto it = taps.rbegin(); it != taps.rend(); ++it) h = h * z + *it;
        double s = std::sin(M_PI * xi);
        double y = s * s;
        double target = std::pow(1.0 - y, K) * polyval(q, y);
        worst = std::max(worst, std::abs(std::norm(h) - target));
    }
    return worst;
}

FactorResult spectral_factorize(int K, int L) {
    if (K < 1 || L < 1) throw std::invalid_argument("spectral_factorize: K, L must be >= 1");
    const auto q = halfband_q(K, L);

    // y-roots of Q, refined to ~31 digits
    std::vector<cdd> yroots;
    for (const cplx& z0 : all_roots(q)) {
        cdd y{dd(z0.real()), dd(z0.imag())};
        yroots.push_back(newton_polish(q, y, 5));
    }

    // Each y-root maps to the w-plane via w^2 - 2(1-2y) w + 1 = 0 (the root
    // pair multiplies to 1). Taps are assembled in ascending powers of
    // x = z^{-1}, so a transfer-function zero at z0 appears at x = 1/z0;
    // minimum phase (|z0| <= 1) therefore keeps the w-root with |w| >= 1,
    // which is also the cancellation-free branch.
    std::vector<cdd> wroots;
    for (const cdd& y : yroots) {
        cdd b{dd(1.0) - dd(2.0) * y.re, -(dd(2.0) * y.im)};
        cdd disc = cdd_sqrt(b * b - cdd{dd(1.0), dd(0.0)});
        cdd wp = b + disc, wm = b - disc;
        cdd w = (cdd_abs2(wp) > cdd_abs2(wm)) ? wp : wm;
        wroots.push_back(w);
    }

    // assemble real factors: conjugate pairs -> quadratics, real roots -> linear
    std::vector<dd> poly{dd(1.0)};
    std::vector<bool> used(wroots.size(), false);
    const double im_eps = 1e-20;
    for (size_t i = 0; i < wroots.size(); ++i) {
        if (used[i]) continue;
        const cdd& w = wroots[i];
        if (std::abs(to_double(w.im)) < im_eps) {
            poly = conv(poly, {-(w.re), dd(1.0)});
            used[i] = true;
            continue;
        }
        // find the conjugate partner
        size_t match = i;
        double best = 1e300;
        for (size_t j = i + 1; j < wroots.size(); ++j) {
            if (used[j]) continue;
            double dre = to_double(wroots[j].re - w.re);
            double dim = to_double(wroots[j].im + w.im);
            double d = dre * dre + dim * dim;
            if (d < best) { best = d; match = j; }
        }
        if (match == i) throw std::runtime_error("factorization failed: unpaired complex root");
        used[i] = used[match] = true;
        dd re = (w.re + wroots[match].re) * dd(0.5);
        dd mag2 = (cdd_abs2(w) + cdd_abs2(wroots[match])) * dd(0.5);
        poly = conv(poly, {mag2, -(dd(2.0) * re), dd(1.0)});
    }

    // multiply by (1+w)^K
    std::vector<dd> bin(static_cast<size_t>(K + 1), dd(0.0));
    for (int i = 0; i <= K; ++i) bin[static_cast<size_t>(i)] = dd(binom(K, i));
    poly = conv(poly, bin);

    dd total(0.0);
    for (const dd& c : poly) total = total + c;
    FactorResult out;
    out.taps.resize(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) out.taps[i] = to_double(poly[i] / total);

    out.residual = roundtrip_residual(out.taps, K, L);
    if (!(out.residual <= factor_tolerance(K, L)))
        throw std::runtime_error("factorization failed: residual " + std::to_string(out.residual));
    return out;
}

} // namespace conelet
