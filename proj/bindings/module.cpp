#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracscatter/boundary_oracle.hpp"
#include "fracscatter/delta_analytics.hpp"
#include "fracscatter/scan.hpp"

namespace py = pybind11;
using namespace fracscatter;

PYBIND11_MODULE(_fracscatter, mod) {
  mod.doc() = "scattering observables of the 1-D fractional Schrodinger equation "
              "for non-Hermitian delta and barrier potentials";

  py::class_<LevyContext>(mod, "LevyContext")
      .def(py::init<double, double, double, double>(), py::arg("alpha"), py::arg("v") = 1e-5,
           py::arg("m") = 1.0, py::arg("hbar") = 1.0)
      .def_readonly("alpha", &LevyContext::alpha)
      .def_readonly("v", &LevyContext::v)
      .def_readonly("m", &LevyContext::m)
      .def_readonly("hbar", &LevyContext::hbar)
      .def("diffusion_coefficient", &LevyContext::diffusion_coefficient)
      .def("with_alpha", &LevyContext::with_alpha);

  mod.def("principal_pow", [](cplx z, cplx w) { return principal_pow(z, w); }, py::arg("z"),
          py::arg("w"));
  mod.def("wavenumber", &wavenumber, py::arg("ctx"), py::arg("energy"));
  mod.def("inside_wavenumber", &inside_wavenumber, py::arg("ctx"), py::arg("energy"),
          py::arg("potential"));
  mod.def("epsilon_ratio", &epsilon_ratio, py::arg("ctx"), py::arg("energy"), py::arg("potential"));

  py::class_<TransferMatrix>(mod, "TransferMatrix")
      .def_readonly("m11", &TransferMatrix::m11)
      .def_readonly("m12", &TransferMatrix::m12)
      .def_readonly("m21", &TransferMatrix::m21)
      .def_readonly("m22", &TransferMatrix::m22)
      .def("det", &TransferMatrix::det)
      .def("__mul__", [](const TransferMatrix& a, const TransferMatrix& b) { return a * b; });

  py::class_<ComplexDelta>(mod, "ComplexDelta")
      .def(py::init([](cplx zeta, double x0) { return ComplexDelta{zeta, x0}; }), py::arg("zeta"),
           py::arg("x0") = 0.0)
      .def_readonly("zeta", &ComplexDelta::zeta)
      .def_readonly("x0", &ComplexDelta::x0);

  py::class_<ComplexBarrier>(mod, "ComplexBarrier")
      .def(py::init([](cplx height, double width) { return ComplexBarrier{height, width}; }),
           py::arg("height"), py::arg("width"))
      .def_readonly("height", &ComplexBarrier::height)
      .def_readonly("width", &ComplexBarrier::width);

  mod.def("delta_matrix", &delta_matrix, py::arg("ctx"), py::arg("zeta"), py::arg("energy"));
  mod.def("barrier_matrix", &barrier_matrix, py::arg("ctx"), py::arg("height"), py::arg("width"),
          py::arg("energy"));

  py::class_<ScatteringSet>(mod, "ScatteringSet")
      .def_readonly("t_l", &ScatteringSet::t_l)
      .def_readonly("t_r", &ScatteringSet::t_r)
      .def_readonly("r_l", &ScatteringSet::r_l)
      .def_readonly("r_r", &ScatteringSet::r_r)
      .def_readonly("T", &ScatteringSet::T)
      .def_readonly("R_l", &ScatteringSet::R_l)
      .def_readonly("R_r", &ScatteringSet::R_r);

  mod.def("scattering_set", &scattering_set, py::arg("matrix"), py::arg("energy") = 0.0,
          py::arg("alpha") = 0.0);
  mod.def("cpa_residual", &cpa_residual, py::arg("matrix"));
  mod.def("cpa_certificate", &cpa_certificate, py::arg("ctx"), py::arg("height"), py::arg("width"),
          py::arg("energy"));

  py::enum_<ShiftClass>(mod, "ShiftClass")
      .value("BlueShift", ShiftClass::BlueShift)
      .value("RedShift", ShiftClass::RedShift)
      .value("Bounded", ShiftClass::Bounded)
      .value("Indeterminate", ShiftClass::Indeterminate);

  mod.def("delta_ss_energy", &delta_ss_energy, py::arg("ctx"), py::arg("rho"));
  mod.def("classify_shift", &classify_shift, py::arg("rho"), py::arg("v"), py::arg("hbar") = 1.0);

  py::class_<SingularityReport>(mod, "SingularityReport")
      .def_readonly("e_star", &SingularityReport::e_star)
      .def_readonly("alpha_star", &SingularityReport::alpha_star)
      .def_readonly("residual", &SingularityReport::residual)
      .def_readonly("depth", &SingularityReport::depth)
      .def_readonly("bracket_lo", &SingularityReport::bracket_lo)
      .def_readonly("bracket_hi", &SingularityReport::bracket_hi)
      .def_readonly("certificate", &SingularityReport::certificate);

  const auto as_potential = [](py::object pot) -> Potential {
    if (py::isinstance<ComplexDelta>(pot)) return pot.cast<ComplexDelta>();
    return pot.cast<ComplexBarrier>();
  };

  mod.def("find_ss",
          [as_potential](py::object pot, const LevyContext& ctx, double e_lo, double e_hi,
                         double threshold) {
            FindOptions opts;
            opts.threshold_decades = threshold;
            return find_ss(as_potential(pot), ctx, e_lo, e_hi, opts);
          },
          py::arg("potential"), py::arg("ctx"), py::arg("e_lo"), py::arg("e_hi"),
          py::arg("threshold") = 6.0);
  mod.def("find_cpa",
          [as_potential](py::object pot, const LevyContext& ctx, double e_lo, double e_hi,
                         double threshold) {
            FindOptions opts;
            opts.threshold_decades = threshold;
            return find_cpa(as_potential(pot), ctx, e_lo, e_hi, opts);
          },
          py::arg("potential"), py::arg("ctx"), py::arg("e_lo"), py::arg("e_hi"),
          py::arg("threshold") = 6.0);

  py::class_<OracleScattering>(mod, "OracleScattering")
      .def_readonly("t", &OracleScattering::t)
      .def_readonly("r_l", &OracleScattering::r_l)
      .def_readonly("r_r", &OracleScattering::r_r);

  mod.def("boundary_matching_scattering", &boundary_matching_scattering, py::arg("ctx"),
          py::arg("height"), py::arg("width"), py::arg("energy"));

  py::register_exception<spectral_singular_error>(mod, "SpectralSingularError");
}
