#pragma once
#include <optional>
#include <stdexcept>
#include <string>

namespace ntnsim {

enum class Tech { LoRa, LoRaPlus, NBIoT, SigFox };
enum class PlatformKind { TG, UAV, HAP, LEO, HAPRelayLEO };

std::string to_string(Tech t);
std::string to_string(PlatformKind k);
Tech tech_from_string(const std::string& s);
PlatformKind platform_kind_from_string(const std::string& s);

// Per-technology radio parameters.  Defaults come from default_profile().
struct TechnologyProfile {
    Tech tech_id = Tech::LoRa;
    double tx_power_dbm = 14.0;
    double carrier_freq_hz = 868e6;
    double bandwidth_hz = 125e3;
    double tx_antenna_gain_db = 2.15;
    double rx_antenna_gain_db = 8.0;
    double noise_figure_db = 3.0;
    int max_payload_bytes = 12;
    // SigFox only: operating channel width and ultra-narrowband carrier width,
    // which set the default micro-channel count for the replica collision model.
    double sigfox_channel_width_hz = 200e3;
    double sigfox_micro_channel_hz = 100.0;

    bool operator==(const TechnologyProfile&) const = default;
};

struct RelayParams {
    double tx_power_dbm = 52.0;
    double carrier_freq_hz = 38e9;
    double bandwidth_hz = 400e6;
    double tx_antenna_gain_db = 37.9;
    double rx_antenna_gain_db = 0.0;
    double noise_figure_db = 0.0;

    bool operator==(const RelayParams&) const = default;
};

struct Platform {
    PlatformKind kind = PlatformKind::TG;
    double altitude_km = 0.0;
    double x_km = 0.0, y_km = 0.0;
    double rx_antenna_gain_db = 8.0;
    std::optional<RelayParams> relay; // present iff kind == HAPRelayLEO

    bool operator==(const Platform&) const = default;
};

struct FadingParams {
    double nakagami_m0 = 15.0;
    double sr_omega = 1.29;
    double sr_b0 = 0.158;
    double sr_m = 19.4;
    double extra_loss_los_db = 0.0154;
    double extra_loss_nlos_db = 18.4615;

    bool operator==(const FadingParams&) const = default;
};

TechnologyProfile default_profile(Tech tech);
Platform make_platform(PlatformKind kind);
double platform_altitude_km(PlatformKind kind);

// JSON (de)serialization; round-trips without loss.
std::string profile_to_json(const TechnologyProfile& p);
TechnologyProfile profile_from_json(const std::string& text);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ntnsim
