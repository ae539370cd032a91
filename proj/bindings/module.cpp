// Python bindings for the main library operations: filter design,
// certification, the discrete transform, reconstruction, and the benchmark
// helpers. Arrays cross the boundary as NumPy float64.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conelet/cartoon.hpp"
#include "conelet/certify.hpp"
#include "conelet/envelope.hpp"
#include "conelet/factor.hpp"
#include "conelet/halfband.hpp"
#include "conelet/scaling.hpp"
#include "conelet/transform.hpp"
#include "conelet/version.hpp"

namespace py = pybind11;
using namespace conelet;

namespace {

std::vector<double> to_image(const py::array_t<double, py::array::c_style>& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("expected a square 2-D float64 array");
    return std::vector<double>(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const std::vector<double>& v, int n1, int n2) {
    py::array_t<double> out({n1, n2});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_conelet, m) {
    m.attr("__version__") = kVersion;

    m.def("m0_sq", &m0_sq, py::arg("K"), py::arg("L"), py::arg("xi"));
    m.def("m1_sq", &m1_sq, py::arg("K"), py::arg("L"), py::arg("xi"));
    m.def("phi_hat_sq", &phi_hat_sq, py::arg("K"), py::arg("L"), py::arg("xi"),
          py::arg("J") = 40);
    m.def("spectral_factor", [](int K, int L) {
        FactorResult r = spectral_factorize(K, L);
        return py::make_tuple(r.taps, r.residual);
    }, py::arg("K"), py::arg("L"));

    py::class_<FrameCertificate>(m, "FrameCertificate")
        .def_readonly("linf", &FrameCertificate::linf)
        .def_readonly("lsup", &FrameCertificate::lsup)
        .def_readonly("rtilde", &FrameCertificate::rtilde)
        .def_readonly("A_low", &FrameCertificate::A_low)
        .def_readonly("B_high", &FrameCertificate::B_high)
        .def_readonly("ratio", &FrameCertificate::ratio)
        .def_readonly("valid", &FrameCertificate::valid);
    m.def("certify", [](int K, int L, int kp_sup, int kp_r, double c1, double c2) {
        ParamSet set;
        set.c1 = c1;
        set.c2 = c2;
        return certify(K, L, {kp_sup, kp_r}, set);
    }, py::arg("K"), py::arg("L"), py::arg("kp_sup"), py::arg("kp_r"),
       py::arg("c1") = 1.0, py::arg("c2") = 0.4);

    py::class_<SubbandInfo>(m, "SubbandInfo")
        .def_readonly("cone", &SubbandInfo::cone)
        .def_readonly("j", &SubbandInfo::j)
        .def_readonly("k", &SubbandInfo::k)
        .def_readonly("n1", &SubbandInfo::n1)
        .def_readonly("n2", &SubbandInfo::n2)
        .def_readonly("offset", &SubbandInfo::offset);

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_readonly("N", &CoefficientSet::N)
        .def_readonly("subbands", &CoefficientSet::subbands)
        .def_property_readonly("data", [](const CoefficientSet& c) {
            py::array_t<double> out(static_cast<py::ssize_t>(c.data.size()));
            std::copy(c.data.begin(), c.data.end(), out.mutable_data());
            return out;
        })
        .def("set_data", [](CoefficientSet& c, py::array_t<double> d) {
            if (static_cast<std::size_t>(d.size()) != c.data.size())
                throw std::invalid_argument("size mismatch");
            std::copy(d.data(), d.data() + d.size(), c.data.begin());
        });

    py::class_<ShearletSystem>(m, "ShearletSystem")
        .def_readonly("N", &ShearletSystem::N)
        .def_readonly("j_max", &ShearletSystem::j_max)
        .def_readonly("subbands", &ShearletSystem::subbands)
        .def_property_readonly("coefficients", [](const ShearletSystem& s) {
            return s.coeff_count;
        });
    m.def("build_system", &build_system, py::arg("K"), py::arg("L"), py::arg("N"),
          py::arg("j_max"), py::arg("c1") = 1.0, py::arg("c2") = 1.0,
          py::arg("threads") = 0);
    m.def("default_j_max", &default_j_max, py::arg("N"));

    m.def("analyze", [](const ShearletSystem& sys,
                        py::array_t<double, py::array::c_style> img, int threads) {
        return analyze(sys, to_image(img), threads);
    }, py::arg("system"), py::arg("image"), py::arg("threads") = 0);
    m.def("adjoint", [](const ShearletSystem& sys, const CoefficientSet& c, int threads) {
        return to_array(adjoint(sys, c, threads), sys.N, sys.N);
    }, py::arg("system"), py::arg("coefficients"), py::arg("threads") = 0);
    m.def("reconstruct", [](const ShearletSystem& sys, const CoefficientSet& c,
                            double tol, int threads) {
        return to_array(reconstruct(sys, c, tol, 2000, nullptr, true, threads),
                        sys.N, sys.N);
    }, py::arg("system"), py::arg("coefficients"), py::arg("tol") = 1e-8,
       py::arg("threads") = 0);
    m.def("numeric_frame_bounds", [](const ShearletSystem& sys, int iters, int threads) {
        return numeric_frame_bounds(sys, iters, 0x5eed5eedULL, threads);
    }, py::arg("system"), py::arg("iters") = 30, py::arg("threads") = 0);

    py::class_<CartoonSpec>(m, "CartoonSpec")
        .def(py::init<>())
        .def_readwrite("N", &CartoonSpec::N)
        .def_readwrite("seed", &CartoonSpec::seed)
        .def_readwrite("nu", &CartoonSpec::nu)
        .def_readwrite("rho0", &CartoonSpec::rho0)
        .def_readwrite("jump", &CartoonSpec::jump)
        .def_readwrite("smooth_only", &CartoonSpec::smooth_only);
    m.def("make_cartoon", [](const CartoonSpec& spec) {
        CartoonImage c = make_cartoon(spec);
        return py::make_tuple(to_array(c.pixels, c.N, c.N), c.perimeter_px,
                              c.curvature_sup);
    }, py::arg("spec"));
}
