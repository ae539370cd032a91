#pragma once
// Cartoon-image generator (C^2 star-shaped region on smooth background),
// nonlinear N-term approximation curves for the shearlet system and a
// separable orthonormal wavelet baseline, and log-log slope fitting.
#include <cstddef>
#include <cstdint>
#include <vector>

#include "conelet/transform.hpp"

namespace conelet {

struct CartoonSpec {
    int N = 256;              // raster size (power of two)
    std::uint64_t seed = 1;
    double nu = 10.0;         // curvature budget: sup over theta of |rho''|
    double rho0 = 0.75;       // max radius of the star body, < 1 (unit coords)
    double jump = 0.9;        // interior brightness step across the boundary
    double base = 0.05;       // background brightness level
    double amp0 = 0.01;       // sup-amplitude of the background smooth field
    double amp1 = 0.01;       // sup-amplitude of the interior smooth field
    int supersample = 4;      // boundary anti-aliasing factor
    bool smooth_only = false; // drop the star: background field only
};

struct CartoonImage {
    int N = 0;
    std::vector<double> pixels;     // row-major, values in [0,1]
    // radius series rho(theta) = rho_const + sum_n a_n cos(n th) + b_n sin(n th),
    // unit coordinates; the drawn radius is rho/2 around the image center
    double rho_const = 0.0;
    std::vector<double> rho_cos, rho_sin;  // index 0 <-> harmonic 1
    double series_scale = 0.0;      // chosen scale factor s in [0,1]
    double curvature_sup = 0.0;     // achieved sup|rho''|
    double perimeter_px = 0.0;      // boundary length in pixels
    double center_x = 0.0, center_y = 0.0;
};

// Deterministic in (spec); throws std::invalid_argument on bad parameters and
// std::runtime_error("curvature budget infeasible") if no scale meets nu.
CartoonImage make_cartoon(const CartoonSpec& spec);

struct DecayPoint {
    std::size_t n_kept = 0;
    double err = 0.0;           // squared l2 error of the N-term reconstruction
    double err_deflated = 0.0;  // err * N^2 / (ln N)^3
};

// Keep the n largest-magnitude coefficients (global across subbands; ties
// resolved by storage order: cone, j, k, then row-major position) and
// reconstruct by conjugate gradients. n_list must be ascending.
std::vector<DecayPoint> n_term_error(const ShearletSystem& sys,
                                     const std::vector<double>& img,
                                     const std::vector<std::size_t>& n_list,
                                     double tol = 1e-8, int threads = 0);

// Same N-term protocol through a periodic separable orthonormal wavelet
// transform whose lowpass is the spectral factor of the K=L halfband.
std::vector<DecayPoint> wavelet_n_term_error(const std::vector<double>& img,
                                             int N, int L,
                                             const std::vector<std::size_t>& n_list,
                                             int levels = 5);

struct SlopeFit {
    double slope = 0.0, intercept = 0.0;            // ln err vs ln N
    double deflated_slope = 0.0, deflated_intercept = 0.0;
    int points = 0;
};

// Ordinary least squares over curve points with n_lo <= n_kept <= n_hi;
// throws std::runtime_error("insufficient points") below 4 points.
SlopeFit slope_fit(const std::vector<DecayPoint>& curve,
                   std::size_t n_lo, std::size_t n_hi);

} // namespace conelet
