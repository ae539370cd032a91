#pragma once
// Closed-form frame-bound certification: shear interference constants,
// upper/lower Calderon-sum bounds, translation-interference penalty, and the
// assembled bound ratio, plus the discrete-sum diagnostic and parameter search.
#include "conelet/envelope.hpp"
#include <vector>
#include <string>

namespace conelet {

struct ParamSet {
    double c1 = 1.0, c2 = 1.0; // translation sampling steps (c1 >= c2)
    int p = 1;                 // scale growth lag
    double mu = 0.5;           // scale growth ratio bound
};

struct FrameCertificate {
    double linf = 0.0, lsup = 0.0, rtilde = 0.0;
    double gamma_prime = 0.0;
    double T1 = 0.0, T2 = 0.0, T3 = 0.0;
    double D1_val = 0.0, D2_val = 0.0;
    double C_of_gamma = 0.0, C_of_gamma_prime = 0.0;
    double A_low = 0.0, B_high = 0.0, ratio = 0.0;
    bool valid = false;
    int Kp_sup = 0, Kp_r = 0; // Kprime used for the upper path / interference path
    int J0 = 0, J1 = 0;
};

struct CertifyOptions {
    int J0 = -1;               // -1: convergence rule
    int J1 = 40;
    int gamma_grid = 64;       // log-spaced gamma' candidates
    int shear_grid = 512;      // grid density for the shear interference constant
    bool published_multiplier = true; // ceil(c1/c2) uncapped (reproduces the printed table);
                                      // false: displayed min{ceil(c1/c2), 2}
};

// sup over a (d, x1) grid of min{1, d} * sum_k min{1, |x1 + k d|^{-gamma}}
// (d = |x2|; lattice terms beyond |t| > tail_T bounded by integral comparison;
// the d -> 0 envelope 2 + 2/(gamma-1) seeds the supremum)
double shear_sum_constant(double gamma, int grid = 512, double tail_T = 4.0);

// D1(h) = 2(1 + 1/(h-1)) + (4/(h-1))(1 + 1/(h-2)); D2 = D1 + 4(1 + 1/(h-1)); need h > 2
double d1_constant(double h);
double d2_constant(double h);

// upper Calderon bound; mode regular uses the sharpened shear constant
enum class LsupMode { general, regular };
double lsup_bound(const FeasibilityEnvelope& env, int p, double mu, LsupMode mode);

// certified lower bound on the cone: |m0(1/6)|^2 * phi_lower_bound^2
double linf_bound(int K, int L, int J0);

struct RBreakdown {
    double value = 0.0, T1 = 0.0, T2 = 0.0, T3 = 0.0;
    double C_gamma = 0.0, C_gamma_prime = 0.0;
};
// translation-interference penalty at a fixed gamma'; multiplier_cap2 selects
// the displayed min{ceil(c1/c2),2} variant, otherwise plain ceil(c1/c2)
RBreakdown r_bound(const FeasibilityEnvelope& env, const ParamSet& set, double gamma_prime,
                   bool multiplier_cap2, int shear_grid = 512);

FrameCertificate certify(int K, int L, std::pair<int,int> kprime_pair, const ParamSet& set,
                         const CertifyOptions& opts = {});

// direct truncated summation of Phi(xi,0) over cone samples
struct CalderonEstimate { double inf_est = 0.0, sup_est = 0.0; };
CalderonEstimate numeric_calderon(int K, int L, int j_max, int n_xi1 = 64, int n_slope = 33);

struct KprimeSearchResult {
    std::pair<int,int> pair{0, 0};
    FrameCertificate cert;
    bool found = false;
};
KprimeSearchResult kprime_search(int K, int L, const ParamSet& set, const CertifyOptions& opts = {});

// Table layout helper: the published parameter grid (two panels)
struct TableRow {
    int K, L; double c1, c2; int Kp_sup, Kp_r; double published;
};
std::vector<TableRow> published_table();

} // namespace conelet
