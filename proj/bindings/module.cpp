#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntnsim/channel.hpp"
#include "ntnsim/coverage.hpp"
#include "ntnsim/offload.hpp"
#include "ntnsim/presets.hpp"
#include "ntnsim/sim.hpp"

namespace py = pybind11;
using namespace ntnsim;

PYBIND11_MODULE(_ntnsim, m) {
    m.doc() = "Monte Carlo simulator and optimizer for uplink IoT over "
              "terrestrial and non-terrestrial gateways";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Tech>(m, "Tech")
        .value("LORA", Tech::LoRa)
        .value("LORA_PLUS", Tech::LoRaPlus)
        .value("NBIOT", Tech::NBIoT)
        .value("SIGFOX", Tech::SigFox);

    py::enum_<PlatformKind>(m, "PlatformKind")
        .value("TG", PlatformKind::TG)
        .value("UAV", PlatformKind::UAV)
        .value("HAP", PlatformKind::HAP)
        .value("LEO", PlatformKind::LEO)
        .value("HAP_RELAY_LEO", PlatformKind::HAPRelayLEO);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("aoi_radius_km", &ScenarioConfig::aoi_radius_km)
        .def_readwrite("id_density_per_km2", &ScenarioConfig::id_density_per_km2)
        .def_readwrite("tg_density_per_km2", &ScenarioConfig::tg_density_per_km2)
        .def_readwrite("arrival_rate_hz", &ScenarioConfig::arrival_rate_hz)
        .def_readwrite("horizon_s", &ScenarioConfig::horizon_s)
        .def_readwrite("tech", &ScenarioConfig::tech)
        .def_readwrite("topology", &ScenarioConfig::topology)
        .def_readwrite("fixed_devices", &ScenarioConfig::fixed_devices)
        .def_readwrite("fixed_gateways", &ScenarioConfig::fixed_gateways)
        .def_readwrite("payload_override_bytes", &ScenarioConfig::payload_override_bytes)
        .def_readwrite("seed", &ScenarioConfig::seed);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("goodput_bytes_per_hour", &SimulationResult::goodput_bytes_per_hour)
        .def_readonly("success_probability", &SimulationResult::success_probability)
        .def_readonly("confidence_halfwidth", &SimulationResult::confidence_halfwidth)
        .def_readonly("drops", &SimulationResult::drops);

    py::class_<CoverageResult>(m, "CoverageResult")
        .def_readonly("max_range_km", &CoverageResult::max_range_km)
        .def_readonly("min_elevation_deg", &CoverageResult::min_elevation_deg)
        .def_readonly("edge_margin_db", &CoverageResult::edge_margin_db);

    py::class_<InnerSolution>(m, "InnerSolution")
        .def_readonly("alpha", &InnerSolution::alpha)
        .def_readonly("p_s_leo", &InnerSolution::p_s_leo);

    m.def("lora_data_rate_bps", &lora_data_rate_bps, py::arg("sf"),
          py::arg("bandwidth_hz") = 125e3);
    m.def("lora_toa_s", &lora_toa_s, py::arg("sf"), py::arg("bandwidth_hz"),
          py::arg("payload_bytes"));
    m.def("lora_sensitivity_dbm", &lora_sensitivity_dbm, py::arg("sf"));
    m.def("nbiot_sensitivity_dbm", &nbiot_sensitivity_dbm, py::arg("repetitions"));
    m.def("sigfox_sensitivity_dbm", &sigfox_sensitivity_dbm);
    m.def("p_success_tg", &p_success_tg, py::arg("eta"), py::arg("toa_s"),
          py::arg("rate_hz"), py::arg("count"));

    m.def("run_simulation", &run_simulation, py::arg("config"), py::arg("drops"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("run_preset", &run_preset, py::arg("name"), py::arg("seed") = 1,
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    m.def(
        "max_range",
        [](Tech tech, PlatformKind kind, bool calibrated) {
            ChannelConfig ch;
            if (calibrated) ch.excess_loss_db = coverage_excess_loss_db(tech, kind);
            return max_range(default_profile(tech), make_platform(kind), ch);
        },
        py::arg("tech"), py::arg("platform"), py::arg("calibrated") = true);
    m.def("min_platforms", &min_platforms, py::arg("aoi_radius_km"),
          py::arg("coverage_radius_km"));

    m.def("solve_inner_alpha", &solve_inner_alpha, py::arg("total_offloaded"),
          py::arg("rate_hz"), py::arg("toa_by_v_s"), py::arg("sf_min"));

    m.def("fig2_config", &fig2_config, py::arg("tech"), py::arg("topology"),
          py::arg("devices"), py::arg("seed"));
    m.def("fig3_config", &fig3_config, py::arg("topology"), py::arg("radius_km"),
          py::arg("seed"));
    m.def("fig5_config", &fig5_config, py::arg("tg_density"), py::arg("id_density"),
          py::arg("seed"));

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("dump_config", &dump_config, py::arg("config"));
}
