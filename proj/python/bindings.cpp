#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pstqec/catalog.hpp"
#include "pstqec/chain.hpp"
#include "pstqec/dynamics.hpp"
#include "pstqec/error.hpp"
#include "pstqec/impossibility.hpp"

namespace py = pybind11;
using namespace pstqec;

PYBIND11_MODULE(_pstqec, m) {
  m.doc() = "Majorana codes for dephased spin-chain state transfer";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<MalformedInput>(m, "MalformedInput", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
  py::register_exception<EncodingError>(m, "EncodingError", base.ptr());
  py::register_exception<FrameError>(m, "FrameError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<ChainSpec>(m, "ChainSpec")
      .def_readonly("n", &ChainSpec::n)
      .def_readonly("couplings", &ChainSpec::couplings)
      .def_readonly("fields", &ChainSpec::fields)
      .def_readonly("lam", &ChainSpec::lambda)
      .def_readonly("t0", &ChainSpec::t0)
      .def("__repr__", [](const ChainSpec& s) {
        return "ChainSpec(n=" + std::to_string(s.n) + ", t0=" + std::to_string(s.t0) + ")";
      });

  m.def("standard_chain", &standard_chain, py::arg("n"), py::arg("lam") = 1.0);
  m.def("custom_chain", &custom_chain, py::arg("couplings"), py::arg("fields"), py::arg("t0"), py::arg("lam") = 1.0);
  m.def("parse_chain", &parse_chain_text, py::arg("text"));
  m.def("pst_fidelity", &pst_fidelity);
  m.def("spectral_symmetry_residual", &spectral_symmetry_residual);
  m.def("propagator", py::overload_cast<const ChainSpec&, double>(&propagator), py::arg("spec"), py::arg("t"));

  m.def("catalog_names", [] {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    return names;
  });
  m.def(
      "verify_code_json",
      [](const std::string& name) {
        CatalogEntry e = resolve_code(name);
        VerificationReport r = verify_catalog_entry(e);
        return report_json(r, check_claims(e, r), -1);
      },
      py::arg("name"));

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("gamma", &SweepPoint::gamma)
      .def_readonly("f_encoded", &SweepPoint::f_encoded)
      .def_readonly("f_unencoded", &SweepPoint::f_unencoded)
      .def_readonly("decode_failure_rate", &SweepPoint::decode_failure_rate);

  m.def(
      "dephasing_sweep",
      [](const ChainSpec& spec, const std::string& code, const std::vector<double>& gammas, std::size_t steps_encoded,
         std::size_t steps_unencoded, unsigned threads) {
        SweepOptions o;
        o.steps_encoded = steps_encoded;
        o.steps_unencoded = steps_unencoded;
        o.threads = threads;
        StabilizerCode c = entry_code(resolve_code(code));
        py::gil_scoped_release nogil;
        return run_sweep(spec, c, gammas, o);
      },
      py::arg("spec"), py::arg("code"), py::arg("gammas"), py::arg("steps_encoded") = 0, py::arg("steps_unencoded") = 0,
      py::arg("threads") = 1);

  py::class_<ReflectionOperator>(m, "ReflectionOperator")
      .def_readonly("n", &ReflectionOperator::n)
      .def_readonly("r", &ReflectionOperator::r)
      .def_readonly("max_diagonal", &ReflectionOperator::max_diagonal)
      .def_readonly("min_antidiagonal", &ReflectionOperator::min_antidiagonal)
      .def_readonly("hermitian_residual", &ReflectionOperator::hermitian_residual)
      .def_readonly("involution_residual", &ReflectionOperator::involution_residual);

  py::class_<ReturnModes>(m, "ReturnModes")
      .def_readonly("m", &ReturnModes::m)
      .def_readonly("w", &ReturnModes::w)
      .def_readonly("singular", &ReturnModes::singular)
      .def_readonly("defect", &ReturnModes::defect)
      .def_readonly("max_sigma", &ReturnModes::max_sigma)
      .def_readonly("gap", &ReturnModes::gap)
      .def("unit_count", &ReturnModes::unit_count, py::arg("tol") = 1e-8);

  m.def("compute_R", &compute_R, py::arg("spec"), py::arg("tol") = 1e-10);
  m.def("compute_W", &compute_W, py::arg("r"), py::arg("m"));

  py::class_<RepetitionResult>(m, "RepetitionResult")
      .def_readonly("rep", &RepetitionResult::rep)
      .def_readonly("error_probability", &RepetitionResult::error_probability)
      .def_readonly("flip_probability", &RepetitionResult::flip_probability)
      .def_readonly("six_state_infidelity", &RepetitionResult::six_state_infidelity);

  m.def(
      "repetition_experiment",
      [](std::size_t n, std::size_t rep, std::size_t site, double t_err) {
        py::gil_scoped_release nogil;
        return repetition_experiment(n, rep, site, t_err);
      },
      py::arg("n"), py::arg("rep"), py::arg("site"), py::arg("t_err"));
}
