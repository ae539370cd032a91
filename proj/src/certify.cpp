#include "conelet/certify.hpp"
#include "conelet/halfband.hpp"
#include "conelet/scaling.hpp"
#include "conelet/parallel.hpp"
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <algorithm>
#include <limits>

namespace conelet {

namespace {

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// memoized front-end: the constant is reused heavily across the gamma' grid
// and across certificates sharing an envelope
double shear_cached(double gamma, int grid) {
    static std::map<std::pair<double, int>, double> memo;
    static std::mutex mu;
    const std::pair<double, int> key{gamma, grid};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    double v = shear_sum_constant(gamma, grid);
    {
        std::lock_guard<std::mutex> lock(mu);
        memo.emplace(key, v);
    }
    return v;
}

} // namespace

double shear_sum_constant(double gamma, int grid, double tail_T) {
    if (gamma <= 1.0) throw std::invalid_argument("shear_sum_constant: gamma must be > 1");
    if (grid < 4) throw std::invalid_argument("shear_sum_constant: grid too small");
    const double T = tail_T;
    double best = 2.0 + 2.0 / (gamma - 1.0); // d -> 0 envelope
    for (int di = 1; di <= grid; ++di) {
        const double d = 4.0 * di / grid;
        const double md = std::min(1.0, d);
        const double tail = 2.0 * (std::pow(T, -gamma) + std::pow(T, 1.0 - gamma) / (d * (gamma - 1.0)));
        for (int xj = 0; xj < grid; ++xj) {
            const double x1 = 0.5 * d * xj / grid;
            // lattice points with |x1 + k d| <= 1 each contribute exactly 1
            const double k_hi = std::floor((1.0 - x1) / d);
            const double k_lo = std::ceil((-1.0 - x1) / d);
            KahanSum sum;
            sum.add(k_hi - k_lo + 1.0);
            // explicit terms on 1 < |t| <= T
            for (double k = k_hi + 1.0;; k += 1.0) {
                const double t = x1 + k * d;
                if (t > T) break;
                sum.add(std::pow(t, -gamma));
            }
            for (double k = k_lo - 1.0;; k -= 1.0) {
                const double t = -(x1 + k * d);
                if (t > T) break;
                sum.add(std::pow(t, -gamma));
            }
            sum.add(tail);
            best = std::max(best, md * sum.s);
        }
    }
    return best;
}

double d1_constant(double h) {
    if (h <= 2.0) throw std::domain_error("d1_constant: h out of range");
    return 2.0 * (1.0 + 1.0 / (h - 1.0)) + 4.0 / (h - 1.0) * (1.0 + 1.0 / (h - 2.0));
}

double d2_constant(double h) {
    if (h <= 2.0) throw std::domain_error("d2_constant: h out of range");
    return 6.0 * (1.0 + 1.0 / (h - 1.0)) + 4.0 / (h - 1.0) * (1.0 + 1.0 / (h - 2.0));
}

double lsup_bound(const FeasibilityEnvelope& env, int p, double mu, LsupMode mode) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("lsup_bound: mu must be in (0,1)");
    if (p < 1) throw std::invalid_argument("lsup_bound: p must be >= 1");
    const double q = env.q, r = env.r, qp = env.qprime;
    const double a = env.alpha, g = env.gamma;
    const double ceil_log = std::ceil(std::log(q / qp) / std::log(1.0 / mu));
    const double bracket = ceil_log + 1.0 / (1.0 - std::pow(mu, 2.0 * a - 1.0))
                                    + 1.0 / (1.0 - std::pow(mu, 2.0 * g));
    double lead;
    if (mode == LsupMode::regular) {
        lead = p * (q / r * (2.0 + 2.0 / (2.0 * g - 1.0)) + 1.0);
    } else {
        lead = p * (q / r * shear_cached(2.0 * g, 512));
    }
    return lead * bracket;
}

double linf_bound(int K, int L, int J0) {
    return m0_sq(K, L, 1.0 / 6.0) * std::pow(phi_lower_bound(K, L, J0), 2);
}

RBreakdown r_bound(const FeasibilityEnvelope& env, const ParamSet& set, double gamma_prime,
                   bool multiplier_cap2, int shear_grid) {
    const double g = env.gamma;
    if (!(gamma_prime > 1.0 && gamma_prime < g - 2.0))
        throw std::domain_error("r_bound: gamma_prime out of range");
    if (set.c1 < set.c2) throw std::invalid_argument("r_bound: need c1 >= c2");
    const double q = env.q, r = env.r, qp = env.qprime;
    const double a = env.alpha, gp = gamma_prime;
    const double mu = set.mu;
    const double p = set.p;
    const double Cg = shear_cached(g, shear_grid);
    const double Cgp = shear_cached(gp, shear_grid);
    const double ceil_log = std::ceil(std::log(q / qp) / std::log(1.0 / mu));
    const double inv_g = 1.0 / (1.0 - std::pow(mu, g));
    const double inv_ag = 1.0 / (1.0 - std::pow(mu, a - g));
    const double T1 = p * (q / r * Cg) * (ceil_log + inv_g + inv_ag) * std::pow(2.0 * set.c1 / qp, g);
    const double T2 = p * (q / r * Cgp)
        * (2.0 * ceil_log + 1.0 / (1.0 - std::pow(mu, gp)) + 1.0 / (1.0 - std::pow(mu, a - gp)) + inv_g + inv_ag)
        * std::pow(2.0 * q * set.c2 / (qp * r), g - gp);
    const double T3 = p * (q / r * Cg) * inv_g * std::pow(2.0 * set.c1 / qp, g);
    double mult = std::ceil(set.c1 / set.c2);
    if (multiplier_cap2) mult = std::min(mult, 2.0);
    RBreakdown out;
    out.T1 = T1;
    out.T2 = T2;
    out.T3 = T3;
    out.C_gamma = Cg;
    out.C_gamma_prime = Cgp;
    out.value = T1 * d1_constant(g) + mult * T2 * d2_constant(g - gp) + T3 * (d1_constant(g) + d2_constant(g));
    return out;
}

namespace {

// one full certificate evaluation at fixed truncation depths
FrameCertificate certify_once(int K, int L, std::pair<int, int> kp, const ParamSet& set,
                              const CertifyOptions& opts, int J0, int J1) {
    FrameCertificate cert;
    cert.Kp_sup = kp.first;
    cert.Kp_r = kp.second;
    cert.J0 = J0;
    cert.J1 = J1;
    const FeasibilityEnvelope env_sup = feasibility_envelope(K, kp.first, L, J1);
    const FeasibilityEnvelope env_r = feasibility_envelope(K, kp.second, L, J1);
    if (!env_sup.hypotheses_ok || !env_r.hypotheses_ok)
        throw std::invalid_argument("certify: envelope hypotheses violated for the Kprime pair");
    cert.linf = linf_bound(K, L, J0);
    cert.lsup = lsup_bound(env_sup, set.p, set.mu, LsupMode::regular);

    const double g = env_r.gamma;
    const double lo = 1.0 + 1e-3, hi = g - 2.0 - 1e-3;
    if (!(hi > lo)) throw std::invalid_argument("certify: gamma too small for any admissible gamma'");
    const int n = std::max(2, opts.gamma_grid);
    std::vector<double> gps(static_cast<size_t>(n)), rvals(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        gps[static_cast<size_t>(i)] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    const bool cap2 = !opts.published_multiplier;
    parallel_for(n, [&](int i) {
        rvals[static_cast<size_t>(i)] =
            r_bound(env_r, set, gps[static_cast<size_t>(i)], cap2, opts.shear_grid).value;
    });
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (rvals[static_cast<size_t>(i)] < rvals[static_cast<size_t>(best)]) best = i;
    cert.gamma_prime = gps[static_cast<size_t>(best)];
    const RBreakdown rb = r_bound(env_r, set, cert.gamma_prime, cap2, opts.shear_grid);
    cert.rtilde = rb.value;
    cert.T1 = rb.T1;
    cert.T2 = rb.T2;
    cert.T3 = rb.T3;
    cert.C_of_gamma = rb.C_gamma;
    cert.C_of_gamma_prime = rb.C_gamma_prime;
    cert.D1_val = d1_constant(g);
    cert.D2_val = d2_constant(g - cert.gamma_prime);
    const double det = set.c1 * set.c2;
    cert.A_low = (cert.linf - cert.rtilde) / det;
    cert.B_high = (cert.lsup + cert.rtilde) / det;
    cert.valid = cert.A_low > 0.0;
    cert.ratio = cert.valid ? cert.B_high / cert.A_low
                            : std::numeric_limits<double>::quiet_NaN();
    return cert;
}

} // namespace

FrameCertificate certify(int K, int L, std::pair<int, int> kprime_pair, const ParamSet& set,
                         const CertifyOptions& opts) {
    int J0 = opts.J0 > 0 ? opts.J0 : default_j0(K, L, 10);
    int J1 = opts.J1;
    FrameCertificate cert = certify_once(K, L, kprime_pair, set, opts, J0, J1);
    if (opts.J0 > 0) return cert; // fixed depths requested
    // deepen until the ratio stabilizes to 6 significant digits
    for (int step = 0; step < 8; ++step) {
        J0 += 5;
        J1 += 5;
        FrameCertificate next = certify_once(K, L, kprime_pair, set, opts, J0, J1);
        const bool both_invalid = !next.valid && !cert.valid;
        const bool stable = next.valid && cert.valid &&
                            std::abs(next.ratio - cert.ratio) <= 1e-6 * std::abs(next.ratio);
        cert = next;
        if (stable || both_invalid) break;
    }
    return cert;
}

CalderonEstimate numeric_calderon(int K, int L, int j_max, int n_xi1, int n_slope) {
    if (n_xi1 < 2 || n_slope < 2) throw std::invalid_argument("numeric_calderon: grid too small");
    const std::vector<double> q = halfband_q(K, L);
    double inf_est = std::numeric_limits<double>::infinity();
    double sup_est = 0.0;
    std::vector<double> vals(static_cast<size_t>(n_xi1 * n_slope));
    parallel_for(n_xi1, [&](int ix) {
        const double xi1 = std::pow(4.0, double(ix) / double(n_xi1 - 1)); // log-spaced [1, 4]
        for (int is = 0; is < n_slope; ++is) {
            const double slope = -1.0 + 2.0 * double(is) / double(n_slope - 1);
            const double xi2 = slope * xi1;
            KahanSum phi;
            for (int j = 0; j <= j_max; ++j) {
                const double aj = std::ldexp(1.0, -j);
                const double u = aj * xi1;
                if (u < 1e-3) break; // the m1(4u) factor underflows past here
                const double f1 = m1_sq(K, L, 4.0 * u) * phi_hat_sq(K, L, u);
                if (f1 < 1e-300) continue;
                const double sq = std::sqrt(aj) * xi2;
                const int kmax = static_cast<int>(std::ceil(std::pow(2.0, 0.5 * j)));
                for (int k = -kmax; k <= kmax; ++k) {
                    const double v = k * u + sq;
                    const double f2 = phi_hat_sq(K, L, 2.0 * v);
                    if (f2 > 0.0) phi.add(f1 * f2);
                }
            }
            vals[static_cast<size_t>(ix * n_slope + is)] = phi.s;
        }
    });
    for (double v : vals) {
        inf_est = std::min(inf_est, v);
        sup_est = std::max(sup_est, v);
    }
    return CalderonEstimate{inf_est, sup_est};
}

KprimeSearchResult kprime_search(int K, int L, const ParamSet& set, const CertifyOptions& opts) {
    const int kp_max = (4 * K - L + 1) / 5;
    std::vector<int> adm;
    for (int kp = 0; kp <= kp_max; ++kp) {
        if (!growth_hypothesis(K, kp, L)) continue;
        const FeasibilityEnvelope env = feasibility_envelope(K, kp, L, opts.J1);
        if (env.hypotheses_ok) adm.push_back(kp);
    }
    KprimeSearchResult res;
    if (adm.empty()) throw std::runtime_error("kprime_search: no admissible pair");
    const int na = static_cast<int>(adm.size());
    std::vector<FrameCertificate> certs(static_cast<size_t>(na * na));
    std::vector<char> ok(static_cast<size_t>(na * na), 0);
    parallel_for(na * na, [&](int idx) {
        const int i = idx / na, j = idx % na;
        try {
            certs[static_cast<size_t>(idx)] = certify(K, L, {adm[static_cast<size_t>(i)], adm[static_cast<size_t>(j)]}, set, opts);
            ok[static_cast<size_t>(idx)] = certs[static_cast<size_t>(idx)].valid ? 1 : 0;
        } catch (const std::exception&) {
            ok[static_cast<size_t>(idx)] = 0;
        }
    });
    // deterministic reduction in (Kp_sup, Kp_r) lexicographic order
    for (int idx = 0; idx < na * na; ++idx) {
        if (!ok[static_cast<size_t>(idx)]) continue;
        const FrameCertificate& c = certs[static_cast<size_t>(idx)];
        if (!res.found || c.ratio < res.cert.ratio) {
            res.found = true;
            res.cert = c;
            res.pair = {c.Kp_sup, c.Kp_r};
        }
    }
    if (!res.found) throw std::runtime_error("kprime_search: no admissible pair");
    return res;
}

std::vector<TableRow> published_table() {
    return {
        {39, 18, 1.00, 0.40, 27, 17, 37.1204},
        {39, 18, 1.00, 0.30, 27, 15, 32.0208},
        {39, 18, 1.00, 0.25, 27, 15, 31.9105},
        {39, 18, 1.00, 0.15, 27, 15, 31.9019},
        {39, 18, 1.00, 0.10, 27, 15, 31.9019},
        {39, 19, 0.90, 0.40, 27, 18, 44.5359},
        {39, 19, 0.90, 0.30, 27, 16, 28.4307},
        {39, 19, 0.90, 0.25, 27, 15, 28.0983},
        {39, 19, 0.90, 0.20, 27, 15, 28.0699},
        {39, 19, 0.90, 0.15, 27, 15, 28.0683},
    };
}

} // namespace conelet
