#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rspd/bounds.hpp"
#include "rspd/commands.hpp"
#include "rspd/constructor.hpp"
#include "rspd/design_io.hpp"
#include "rspd/manifest.hpp"
#include "rspd/precoder.hpp"
#include "rspd/verifier.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

std::string construct(std::size_t n, std::size_t k) { return design_to_json(rspd::build_rs_pdssdc(n, k)).dump(); }

std::string baseline(std::size_t n, std::size_t k) {
  return design_to_json(rspd::build_dostbc_baseline(n, k)).dump();
}

std::string verify(const std::string& design, std::size_t draws, std::uint64_t seed) {
  rspd::VerifyOptions opt;
  opt.draws = draws;
  opt.seed = seed;
  return report_to_json(rspd::verify(rspd::design_from_json(json::parse(design)), opt)).dump();
}

std::string simulate(const std::string& config) {
  const auto specs = rspd::parse_sim_config(json::parse(config));
  const auto run = rspd::run_simulation(specs);
  json curves = json::array();
  for (std::size_t i = 0; i < run.curves.size(); ++i) {
    auto c = rspd::curve_to_json(run.curves[i]);
    c["name"] = run.names[i];
    curves.push_back(c);
  }
  return json{{"curves", curves}}.dump();
}

std::vector<rspd::cplx> interleave(const std::vector<rspd::cplx>& s) {
  return rspd::interleave(s, rspd::build_precoders(s.size()));
}

}  // namespace

PYBIND11_MODULE(_rspd, m) {
  m.doc() = "Precoded single-symbol decodable distributed STBC toolkit";
  m.attr("__version__") = rspd::toolkit_version();

  py::register_exception<rspd::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<rspd::DesignError>(m, "DesignError", PyExc_ValueError);
  py::register_exception<rspd::VerificationError>(m, "VerificationError", PyExc_ValueError);

  m.def("construct_json", &construct, py::arg("n"), py::arg("k"));
  m.def("baseline_json", &baseline, py::arg("n"), py::arg("k"));
  m.def("verify_json", &verify, py::arg("design"), py::arg("draws") = 20, py::arg("seed") = 20240601);
  m.def("simulate_json", &simulate, py::arg("config"));
  m.def("fig3_preset_json", [] { return rspd::fig3_preset().dump(); });
  m.def("table_csv", &rspd::table_csv, py::arg("n_max"), py::arg("k_max"));
  m.def("interleave", &interleave, py::arg("s"));
  m.def(
      "rate_upper_bound",
      [](std::size_t n, std::size_t k) {
        const auto b = rspd::rate_upper_bound(n, k).bound;
        return std::pair{b.num(), b.den()};
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "min_slots",
      [](std::size_t n, std::size_t k) {
        const auto t = rspd::min_slots(n, k);
        return std::pair{t.t_rs, t.t_dostbc};
      },
      py::arg("n"), py::arg("k"));
  m.def("achieves_bound", &rspd::achieves_bound, py::arg("n"), py::arg("k"));
}
