#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bsnoma/aobws.hpp"
#include "bsnoma/config.hpp"
#include "bsnoma/errors.hpp"
#include "bsnoma/es_oracle.hpp"
#include "bsnoma/sweep.hpp"

namespace py = pybind11;
using namespace bsnoma;

namespace {

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-stage energy-efficiency optimizer for backscatter NOMA links";

  py::register_exception<InfeasibleProblem>(m, "InfeasibleProblem");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError");

  m.def("dbm_to_watt", &dbm_to_watt);
  m.def("watt_to_dbm", &watt_to_dbm);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("bw_hz", &SystemParams::bw_hz)
      .def_readwrite("sigma2_n_w", &SystemParams::sigma2_n_w)
      .def_readwrite("p_max_w", &SystemParams::p_max_w)
      .def_readwrite("xi", &SystemParams::xi)
      .def_readwrite("kappa", &SystemParams::kappa)
      .def_readwrite("p_c_ce_w", &SystemParams::p_c_ce_w)
      .def_readwrite("p_c_rsu_w", &SystemParams::p_c_rsu_w)
      .def_readwrite("p_c_rs_w", &SystemParams::p_c_rs_w)
      .def_readwrite("r_min", &SystemParams::r_min)
      .def_readwrite("alpha", &SystemParams::alpha)
      .def_readwrite("rho", &SystemParams::rho)
      .def_readwrite("t_t", &SystemParams::t_t)
      .def_readwrite("t_h", &SystemParams::t_h)
      .def_readwrite("theta", &SystemParams::theta)
      .def_readwrite("p_gap_w", &SystemParams::p_gap_w)
      .def_readwrite("nu", &SystemParams::nu)
      .def_readwrite("i_max", &SystemParams::i_max)
      .def_readwrite("delta_max", &SystemParams::delta_max)
      .def("validate", &SystemParams::validate);

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>())
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y);

  py::class_<Topology>(m, "Topology")
      .def_static("fixed", &Topology::fixed, py::arg("d_f"), py::arg("d_b"))
      .def_readonly("d_f", &Topology::d_f)
      .def_readonly("d_b", &Topology::d_b);
  m.def("place_sensors_bpp", &place_sensors_bpp, py::arg("n"), py::arg("radius_m"),
        py::arg("seed"), py::arg("rsu") = Point{40.0, 0.0});

  py::class_<ScenarioChannel>(m, "ScenarioChannel")
      .def_readonly("g_f", &ScenarioChannel::g_f)
      .def_readonly("g_hat", &ScenarioChannel::g_hat)
      .def_readonly("d_k", &ScenarioChannel::d_k)
      .def_readonly("sigma2_e", &ScenarioChannel::sigma2_e);
  m.def("make_channel", &make_channel, py::arg("topology"), py::arg("params"), py::arg("seed"));

  py::class_<Solution>(m, "Solution")
      .def_readonly("p_ce_w", &Solution::p_ce_w)
      .def_readonly("gamma", &Solution::gamma)
      .def_readonly("sinr", &Solution::sinr)
      .def_readonly("rate", &Solution::rate)
      .def_readonly("p_total_w", &Solution::p_total_w)
      .def_readonly("ee", &Solution::ee)
      .def_readonly("iterations", &Solution::iterations)
      .def_readonly("converged", &Solution::converged)
      .def_readonly("reflection_applied", &Solution::reflection_applied)
      .def_readonly("visited", &Solution::visited)
      .def_readonly("feasible_points", &Solution::feasible_points)
      .def_property_readonly("dinkelbach_trace", [](const Solution& s) {
        std::vector<double> psi;
        if (s.stage_one) {
          for (const auto& r : s.stage_one->trace) psi.push_back(r.psi);
        }
        return psi;
      });

  m.def("check_constraints", &check_constraints, py::arg("p_ce_w"), py::arg("gamma"),
        py::arg("channel"), py::arg("params"));
  m.def("exact_ee", &exact_ee, py::arg("p_ce_w"), py::arg("gamma"), py::arg("channel"),
        py::arg("params"));
  m.def(
      "run_ocetp",
      [](const ScenarioChannel& ch, const SystemParams& params, Pair gamma) {
        return run_ocetp_solution(ch, gamma, params);
      },
      py::arg("channel"), py::arg("params"), py::arg("gamma") = Pair{0.5, 0.5});
  m.def("run_aobws", &run_aobws, py::arg("channel"), py::arg("params"),
        py::arg("gamma_init") = Pair{0.5, 0.5});

  py::class_<EsConfig>(m, "EsConfig")
      .def(py::init<>())
      .def_readwrite("p_step_w", &EsConfig::p_step_w)
      .def_readwrite("gamma_step", &EsConfig::gamma_step)
      .def_readwrite("p_max_w", &EsConfig::p_max_w)
      .def_readwrite("gamma_max", &EsConfig::gamma_max)
      .def_readwrite("threads", &EsConfig::threads);
  m.def("default_es_config", &default_es_config, py::arg("params"));
  m.def("es_search", &es_search, py::arg("channel"), py::arg("params"), py::arg("es"));

  py::class_<Config>(m, "Config")
      .def_readwrite("params", &Config::params)
      .def_readwrite("es", &Config::es)
      .def_readwrite("gamma_init", &Config::gamma_init)
      .def_property(
          "trials", [](const Config& c) { return c.sweep.trials; },
          [](Config& c, int t) { c.sweep.trials = t; })
      .def_property(
          "seed", [](const Config& c) { return c.sweep.seed; },
          [](Config& c, std::uint64_t s) { c.sweep.seed = s; });
  m.def("default_config", &default_config);
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  m.def(
      "sweep_csv",
      [](const Config& cfg, int threads) {
        py::gil_scoped_release release;
        return rows_to_csv(run_sweep(cfg, threads));
      },
      py::arg("config"), py::arg("threads") = 1);
  m.def(
      "figure_csv",
      [](int figure, const Config& base, int threads) {
        py::gil_scoped_release release;
        return rows_to_csv(run_figure(figure, base, threads));
      },
      py::arg("figure"), py::arg("config"), py::arg("threads") = 1);
}
