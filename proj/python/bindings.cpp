#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "specagg/analysis.hpp"
#include "specagg/channel_model.hpp"
#include "specagg/config.hpp"
#include "specagg/errors.hpp"
#include "specagg/optimizer.hpp"
#include "specagg/scenario.hpp"
#include "specagg/sensing_model.hpp"
#include "specagg/simulator.hpp"

namespace py = pybind11;
using namespace specagg;

PYBIND11_MODULE(_specagg, m) {
  m.doc() = "Spectrum-aggregating cognitive MAC: analysis, optimizer and simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  static py::exception<UnstablePrimary> unstable(m, "UnstablePrimary", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UnstablePrimary& e) {
      py::object exc = py::reinterpret_borrow<py::object>(unstable.ptr())(e.what());
      exc.attr("lambda_p") = e.lambda_p();
      exc.attr("mu_p") = e.mu_p();
      PyErr_SetObject(unstable.ptr(), exc.ptr());
    }
  });

  py::enum_<PowerMode>(m, "PowerMode")
      .value("PSD", PowerMode::kPsd)
      .value("LIMITED", PowerMode::kLimited);
  py::enum_<SystemMode>(m, "SystemMode")
      .value("DOMINANT", SystemMode::kDominant)
      .value("ORIGINAL", SystemMode::kOriginal);
  py::enum_<StabilityVerdict>(m, "StabilityVerdict")
      .value("STABLE", StabilityVerdict::kStable)
      .value("UNSTABLE", StabilityVerdict::kUnstable)
      .value("INCONCLUSIVE", StabilityVerdict::kInconclusive);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("snr_p", &ChannelParams::snr_p)
      .def_readwrite("p_bar_p", &ChannelParams::p_bar_p)
      .def_readwrite("snr_s", &ChannelParams::snr_s)
      .def_readwrite("spectral_eff_r", &ChannelParams::spectral_eff_r)
      .def_readwrite("tau_b_frac", &ChannelParams::tau_b_frac)
      .def_readwrite("m_bands", &ChannelParams::m_bands)
      .def_readwrite("k_antennas", &ChannelParams::k_antennas)
      .def_readwrite("power_mode", &ChannelParams::power_mode)
      .def("validate", &ChannelParams::validate);

  py::class_<SensingParams>(m, "SensingParams")
      .def(py::init<>())
      .def(py::init([](double p_fa, double p_md) { return SensingParams{p_fa, p_md}; }),
           py::arg("p_fa"), py::arg("p_md"))
      .def_readwrite("p_fa", &SensingParams::p_fa)
      .def_readwrite("p_md", &SensingParams::p_md)
      .def("validate", &SensingParams::validate);

  py::class_<TrafficParams>(m, "TrafficParams")
      .def(py::init<>())
      .def(py::init([](double lambda_p, double lambda_s) {
             return TrafficParams{lambda_p, lambda_s};
           }),
           py::arg("lambda_p"), py::arg("lambda_s") = 0.0)
      .def_readwrite("lambda_p", &TrafficParams::lambda_p)
      .def_readwrite("lambda_s", &TrafficParams::lambda_s)
      .def("validate", &TrafficParams::validate);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("channel", &ScenarioConfig::channel)
      .def_readwrite("sensing", &ScenarioConfig::sensing)
      .def_readwrite("traffic", &ScenarioConfig::traffic)
      .def_readwrite("label", &ScenarioConfig::label)
      .def("validate", &ScenarioConfig::validate);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def_readonly("base", &SweepSpec::base)
      .def_property_readonly("axis", [](const SweepSpec& s) { return to_string(s.axis); })
      .def_readonly("values", &SweepSpec::values)
      .def_readonly("with_simulation", &SweepSpec::with_simulation)
      .def_readonly("sim_slots", &SweepSpec::sim_slots)
      .def_readonly("sim_seed", &SweepSpec::sim_seed);

  m.def("sensing_fraction", &sensing_fraction, py::arg("channel"));
  m.def("pu_success_prob", &pu_success_prob, py::arg("channel"));
  m.def("su_effective_rate", &su_effective_rate, py::arg("channel"), py::arg("eta"));
  m.def("su_success_prob", &su_success_prob, py::arg("channel"), py::arg("eta"));
  m.def("single_band_success_prob", &single_band_success_prob, py::arg("channel"));

  py::class_<AnalyticalResult>(m, "AnalyticalResult")
      .def_readonly("mu_p", &AnalyticalResult::mu_p)
      .def_readonly("pi", &AnalyticalResult::pi)
      .def_readonly("mu_s", &AnalyticalResult::mu_s)
      .def_readonly("primary_stable", &AnalyticalResult::primary_stable)
      .def("secondary_stable_at", &AnalyticalResult::secondary_stable_at, py::arg("lambda_s"));

  py::class_<RegionPoint>(m, "RegionPoint")
      .def_readonly("lambda_p", &RegionPoint::lambda_p)
      .def_readonly("lambda_s_max", &RegionPoint::lambda_s_max)
      .def_readonly("excluded", &RegionPoint::excluded)
      .def_readonly("warning", &RegionPoint::warning);

  m.def("primary_service_rate", &primary_service_rate, py::arg("channel"), py::arg("sensing"));
  m.def("empty_probability", &empty_probability, py::arg("mu_p"), py::arg("traffic"));
  m.def("secondary_service_rate", &secondary_service_rate, py::arg("channel"),
        py::arg("sensing"), py::arg("traffic"));
  m.def("mu_s_oracle", &mu_s_oracle, py::arg("channel"), py::arg("sensing"), py::arg("traffic"));
  m.def("single_band_service_rate", &single_band_service_rate, py::arg("channel"),
        py::arg("sensing"), py::arg("traffic"));
  m.def("analyze", &analyze, py::arg("channel"), py::arg("sensing"), py::arg("traffic"));
  m.def("stability_region", &stability_region, py::arg("channel"), py::arg("sensing"),
        py::arg("lambda_p_grid"));
  m.def("in_stability_region", &in_stability_region, py::arg("channel"), py::arg("sensing"),
        py::arg("traffic"));

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("m_opt", &OptimizeResult::m_opt)
      .def_readonly("mu_s_opt", &OptimizeResult::mu_s_opt)
      .def_readonly("profile", &OptimizeResult::profile)
      .def_readonly("mu_p_sensed", &OptimizeResult::mu_p_sensed)
      .def_readonly("mu_p_unsensed", &OptimizeResult::mu_p_unsensed);
  m.def("optimize_sensed_bands", &optimize_sensed_bands, py::arg("channel"), py::arg("sensing"),
        py::arg("traffic"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("scenario", &SimConfig::scenario)
      .def_readwrite("mode", &SimConfig::mode)
      .def_readwrite("slots", &SimConfig::slots)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("warmup", &SimConfig::warmup)
      .def_readwrite("batches", &SimConfig::batches)
      .def("effective_warmup", &SimConfig::effective_warmup)
      .def("validate", &SimConfig::validate);

  py::class_<SimReport>(m, "SimReport")
      .def_readonly("empirical_mu_p", &SimReport::empirical_mu_p)
      .def_readonly("empirical_mu_s", &SimReport::empirical_mu_s)
      .def_readonly("throughput_s", &SimReport::throughput_s)
      .def_readonly("mean_queue_s", &SimReport::mean_queue_s)
      .def_readonly("mean_queue_p", &SimReport::mean_queue_p)
      .def_readonly("stability_verdict_s", &SimReport::stability_verdict_s)
      .def_readonly("queue_slope_s", &SimReport::queue_slope_s)
      .def_readonly("collisions", &SimReport::collisions)
      .def_readonly("std_err_mu_s", &SimReport::std_err_mu_s)
      .def_readonly("std_err_mu_p", &SimReport::std_err_mu_p)
      .def_readonly("slots", &SimReport::slots)
      .def_readonly("warmup", &SimReport::warmup)
      .def_readonly("su_arrivals", &SimReport::su_arrivals)
      .def_readonly("su_departures", &SimReport::su_departures)
      .def_readonly("final_queue_s", &SimReport::final_queue_s)
      .def_readonly("pu_departures", &SimReport::pu_departures);
  m.def(
      "simulate", [](const SimConfig& cfg) { return run(cfg); }, py::arg("config"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "parse_config", [](const std::string& text) { return parse_config(text); },
      py::arg("json_text"));
  m.def(
      "load_config", [](const std::filesystem::path& p) { return load_config(p); },
      py::arg("path"));
}
