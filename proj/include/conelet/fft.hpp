#pragma once
// Thin FFTW wrapper: cached-plan complex 2-D transforms of arbitrary
// (power-of-two in practice) shape. Plans use FFTW_ESTIMATE so the chosen
// algorithm is a pure function of the shape — results are reproducible
// across runs and machines with the same FFTW build.
#include <complex>
#include <vector>

namespace conelet {

using cplx = std::complex<double>;

// In-place 2-D DFT of an n1 x n2 row-major array. sign: -1 forward, +1 inverse.
// The inverse is unnormalized (FFTW convention); callers divide by n1*n2.
void fft2_inplace(cplx* data, int n1, int n2, int sign);

// Forward DFT of a real row-major image into a freshly allocated complex array.
std::vector<cplx> fft2_of_real(const std::vector<double>& img, int n1, int n2);

// Normalized inverse DFT, returning only the real part.
std::vector<double> ifft2_real(std::vector<cplx> spec, int n1, int n2);

} // namespace conelet
