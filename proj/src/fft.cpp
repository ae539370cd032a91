#include "conelet/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace conelet {

namespace {

// FFTW's planner is not thread-safe; executions on distinct buffers are.
// Plans are created once per (n1, n2, sign) and reused with the new-array
// execute interface.
std::mutex plan_mutex;
std::map<std::tuple<int, int, int>, fftw_plan>& plan_cache() {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(int n1, int n2, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(n1, n2, sign);
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Planning with FFTW_ESTIMATE never touches the buffer contents, but a
    // scratch buffer is still required to create the plan.
    std::vector<cplx> scratch(static_cast<std::size_t>(n1) * n2);
    fftw_plan p = fftw_plan_dft_2d(
        n1, n2, reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, p);
    return p;
}

} // namespace

void fft2_inplace(cplx* data, int n1, int n2, int sign) {
    if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("fft2: empty shape");
    fftw_plan p = get_plan(n1, n2, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

std::vector<cplx> fft2_of_real(const std::vector<double>& img, int n1, int n2) {
    if (img.size() != static_cast<std::size_t>(n1) * n2)
        throw std::invalid_argument("fft2_of_real: size mismatch");
    std::vector<cplx> out(img.begin(), img.end());
    fft2_inplace(out.data(), n1, n2, -1);
    return out;
}

std::vector<double> ifft2_real(std::vector<cplx> spec, int n1, int n2) {
    if (spec.size() != static_cast<std::size_t>(n1) * n2)
        throw std::invalid_argument("ifft2_real: size mismatch");
    fft2_inplace(spec.data(), n1, n2, +1);
    std::vector<double> out(spec.size());
    const double scale = 1.0 / (static_cast<double>(n1) * n2);
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i].real() * scale;
    return out;
}

} // namespace conelet
