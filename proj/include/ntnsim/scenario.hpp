#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ntnsim/params.hpp"
#include "ntnsim/phymac.hpp"

namespace ntnsim {

struct Point {
    double x_km = 0.0, y_km = 0.0;
};

struct ChannelConfig {
    FadingParams fading;
    // Excess (atmospheric/calibration) loss per device link, dB.  Defaults 0;
    // the coverage preset ships calibrated values per technology+platform.
    double excess_loss_db = 0.0;
    // Ground (device-to-terrestrial-gateway) log-distance parameters.
    double ground_pl0_db = 7.7;
    double ground_exponent = 3.76;
    double ground_shadowing_db = 0.0; // lognormal sigma, per device
    bool los = true;                  // apply LOS extra loss (else NLOS)
    bool spherical = true;            // spherical geometry for HAP/LEO links
};

struct ScenarioConfig {
    double aoi_radius_km = 5.0;
    double id_density_per_km2 = 10.0;
    double tg_density_per_km2 = 1.0;
    double arrival_rate_hz = 1.0 / 1800.0;
    double horizon_s = 3600.0;
    Tech tech = Tech::LoRa;
    PlatformKind topology = PlatformKind::TG; // serving platform kind
    bool fixed_counts = false;   // draw exact densities*area instead of Poisson
    int fixed_devices = -1;      // device count override (>=0 enables)
    int fixed_gateways = -1;
    int payload_override_bytes = -1; // e.g. 50 for the offload study
    ChannelConfig channel;
    MacConfig mac;
    std::uint64_t seed = 1;
};

struct Scenario {
    ScenarioConfig config;
    std::vector<Point> devices;
    std::vector<Point> gateways;  // terrestrial gateways (TG topology)
    std::vector<Platform> platforms;
};

Scenario build_scenario(const ScenarioConfig& config, std::uint64_t seed);

// Flat key=value config file support.  Unknown keys raise ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);
std::string dump_config(const ScenarioConfig& config);

} // namespace ntnsim
