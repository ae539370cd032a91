#pragma once
// Digital cone-adapted directional multiscale transform on square periodic
// images.
//
// The system is a bank of zero-phase frequency-domain filters: one low-pass
// plus, per scale j < j_max, sheared band-pass wedges for a horizontal cone
// (slope index |k| <= ceil(2^{j/2})) and their transposes for the vertical
// cone. Filters are sampled from closed-form squared-magnitude formulas, so
// every filter is real, even, and non-negative; wrap-around aliasing of the
// sampled envelopes is folded in explicitly.
//
// Translation grids: when both sampling steps are reciprocals of integers the
// coefficients live on per-subband decimated lattices chosen by a fixed
// coverage ladder (below); otherwise the full N x N grid is kept and the
// steps are only recorded. Each decimated channel carries amplitude
// sqrt(d1*d2) so that channel density does not tilt the frame spectrum.
//
// Coverage ladder (e = j_max-1-j, horizontal cone; vertical swaps the pair):
//   e = 0: (2, 1)      finest scale
//   e = 1: (1, 2)      kept dense along x1: its pass band sits exactly on the
//                      finest scale's fold-mirror line, so it must resolve
//                      the +/- frequency pairs that coarser lattices glue
//   e >= 2: (2^{e-1}, 2^{floor(e/2)})
//   low-pass: 2^{j_max-2} in both axes (clamped to keep at least an 8x8 grid)
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace conelet {

struct SubbandInfo {
    char cone;   // 'l' low-pass, 'h' horizontal, 'v' vertical
    int j;       // scale (0 for the low-pass)
    int k;       // shear index (0 for the low-pass)
    int d1, d2;  // decimation steps along rows / columns
    int n1, n2;  // coefficient grid shape: n1 = N/d1, n2 = N/d2
    std::size_t offset;  // start of this subband in flat coefficient storage
};

struct ShearletSystem {
    int N = 0;      // image size (power of two)
    int j_max = 0;  // number of band-pass scales
    int K = 0, L = 0;
    double c1 = 1.0, c2 = 1.0;  // requested sampling steps
    bool decimated = false;     // ladder applied (c1, c2 reciprocal integers)
    double sigma = 1.0;         // frequency dilation pinning scale j_max-1 at Nyquist
    std::vector<SubbandInfo> subbands;          // [0] is the low-pass
    std::vector<std::vector<double>> filters;   // N x N real frequency filters
    std::vector<double> gsym;                   // sum of squared filters (N x N)
    std::size_t coeff_count = 0;

    const SubbandInfo& band(std::size_t i) const { return subbands[i]; }
};

struct CoefficientSet {
    // metadata echo (must match the system on adjoint/reconstruct)
    int N = 0;
    int j_max = 0;
    int K = 0, L = 0;
    double c1 = 1.0, c2 = 1.0;
    std::vector<SubbandInfo> subbands;
    std::vector<double> data;  // concatenated row-major per-subband grids

    double* grid(std::size_t i) { return data.data() + subbands[i].offset; }
    const double* grid(std::size_t i) const { return data.data() + subbands[i].offset; }
};

// Number of subbands: 1 + 2 * sum_{j<j_max} (2*ceil(2^{j/2}) + 1).
int subband_count(int j_max);

// Default scale count for an N x N image: log2(N) - 3, at least 1.
int default_j_max(int N);

// Build the filter bank. Throws std::invalid_argument on non-power-of-two N
// and std::domain_error("scale overflow") when 2^{j_max} > N.
ShearletSystem build_system(int K, int L, int N, int j_max,
                            double c1 = 1.0, double c2 = 1.0,
                            int threads = 0);

// Analysis: frequency-domain multiply by each (conjugated = identical, the
// filters are real) filter, then lattice decimation realized by spectrum
// folding and a small inverse DFT. Linear in the image.
CoefficientSet analyze(const ShearletSystem& sys, const std::vector<double>& img,
                       int threads = 0);

// Exact adjoint of analyze.
std::vector<double> adjoint(const ShearletSystem& sys, const CoefficientSet& coeffs,
                            int threads = 0);

// adjoint(analyze(img)) in one call (the frame operator S).
std::vector<double> frame_apply(const ShearletSystem& sys, const std::vector<double>& img,
                                int threads = 0);

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

// Conjugate-gradient solve of S f = adjoint(coeffs), stopping at relative
// residual <= tol. precondition=true divides residuals pointwise by the
// frequency symbol sum (a Jacobi step that removes the bulk of the spectral
// spread); set it false to expose raw CG behavior. Throws std::runtime_error
// ("CG stalled ...") if max_iter is exhausted, with the residual in the text.
std::vector<double> reconstruct(const ShearletSystem& sys, const CoefficientSet& coeffs,
                                double tol, int max_iter = 2000,
                                SolveStats* stats = nullptr,
                                bool precondition = true, int threads = 0);

// Extreme eigenvalues of S: power iteration for the top, inverse iteration
// (preconditioned CG solves) for the bottom, both Rayleigh-quotient refined.
// Deterministic: the probe vector comes from a fixed-seed generator. Throws
// std::runtime_error("not positive definite") if a CG step sees p'Sp <= 0.
std::pair<double, double> numeric_frame_bounds(const ShearletSystem& sys, int iters,
                                               std::uint64_t seed = 0x5eed5eedULL,
                                               int threads = 0);

} // namespace conelet
