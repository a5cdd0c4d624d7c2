#include "ntnsim/params.hpp"

#include <json.hpp>

namespace ntnsim {

std::string to_string(Tech t) {
    switch (t) {
        case Tech::LoRa: return "lora";
        case Tech::LoRaPlus: return "lora+";
        case Tech::NBIoT: return "nbiot";
        case Tech::SigFox: return "sigfox";
    }
    throw ConfigError("bad tech enum");
}

std::string to_string(PlatformKind k) {
    switch (k) {
        case PlatformKind::TG: return "tg";
        case PlatformKind::UAV: return "uav";
        case PlatformKind::HAP: return "hap";
        case PlatformKind::LEO: return "leo";
        case PlatformKind::HAPRelayLEO: return "hap-leo";
    }
    throw ConfigError("bad platform enum");
}

Tech tech_from_string(const std::string& s) {
    if (s == "lora") return Tech::LoRa;
    if (s == "lora+" || s == "loraplus" || s == "lora-plus") return Tech::LoRaPlus;
    if (s == "nbiot" || s == "nb-iot") return Tech::NBIoT;
    if (s == "sigfox") return Tech::SigFox;
    throw ConfigError("unknown technology: " + s);
}

PlatformKind platform_kind_from_string(const std::string& s) {
    if (s == "tg" || s == "id-tg") return PlatformKind::TG;
    if (s == "uav" || s == "id-u") return PlatformKind::UAV;
    if (s == "hap" || s == "id-h") return PlatformKind::HAP;
    if (s == "leo" || s == "id-l") return PlatformKind::LEO;
    if (s == "hap-leo" || s == "id-h-l") return PlatformKind::HAPRelayLEO;
    throw ConfigError("unknown platform kind: " + s);
}

TechnologyProfile default_profile(Tech tech) {
    TechnologyProfile p;
    p.tech_id = tech;
    switch (tech) {
        case Tech::LoRa:
        case Tech::LoRaPlus:
            p.tx_power_dbm = 14.0;
            p.carrier_freq_hz = 0.868e9;
            p.bandwidth_hz = 0.125e6;
            p.tx_antenna_gain_db = 2.15;
            break;
        case Tech::NBIoT:
            p.tx_power_dbm = 23.0;
            p.carrier_freq_hz = 0.900e9;
            p.bandwidth_hz = 0.18e6;
            p.tx_antenna_gain_db = 0.0;
            break;
        case Tech::SigFox:
            p.tx_power_dbm = 14.0;
            p.carrier_freq_hz = 0.868e9;
            p.bandwidth_hz = 0.2e6;
            p.tx_antenna_gain_db = 2.15;
            break;
    }
    p.rx_antenna_gain_db = 8.0;
    p.noise_figure_db = 3.0;
    p.max_payload_bytes = 12;
    return p;
}

double platform_altitude_km(PlatformKind kind) {
    switch (kind) {
        case PlatformKind::TG: return 0.0;
        case PlatformKind::UAV: return 0.6;
        case PlatformKind::HAP: return 20.0;
        case PlatformKind::LEO: return 600.0;
        case PlatformKind::HAPRelayLEO: return 20.0; // serving node is the HAP
    }
    throw ConfigError("bad platform enum");
}

Platform make_platform(PlatformKind kind) {
    Platform p;
    p.kind = kind;
    p.altitude_km = platform_altitude_km(kind);
    p.rx_antenna_gain_db = 8.0;
    if (kind == PlatformKind::HAPRelayLEO) p.relay = RelayParams{};
    return p;
}

std::string profile_to_json(const TechnologyProfile& p) {
    nlohmann::json j;
    j["tech"] = to_string(p.tech_id);
    j["tx_power_dbm"] = p.tx_power_dbm;
    j["carrier_freq_hz"] = p.carrier_freq_hz;
    j["bandwidth_hz"] = p.bandwidth_hz;
    j["tx_antenna_gain_db"] = p.tx_antenna_gain_db;
    j["rx_antenna_gain_db"] = p.rx_antenna_gain_db;
    j["noise_figure_db"] = p.noise_figure_db;
    j["max_payload_bytes"] = p.max_payload_bytes;
    j["sigfox_channel_width_hz"] = p.sigfox_channel_width_hz;
    j["sigfox_micro_channel_hz"] = p.sigfox_micro_channel_hz;
    return j.dump();
}

TechnologyProfile profile_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    TechnologyProfile p;
    p.tech_id = tech_from_string(j.at("tech").get<std::string>());
    p.tx_power_dbm = j.at("tx_power_dbm").get<double>();
    p.carrier_freq_hz = j.at("carrier_freq_hz").get<double>();
    p.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    p.tx_antenna_gain_db = j.at("tx_antenna_gain_db").get<double>();
    p.rx_antenna_gain_db = j.at("rx_antenna_gain_db").get<double>();
    p.noise_figure_db = j.at("noise_figure_db").get<double>();
    p.max_payload_bytes = j.at("max_payload_bytes").get<int>();
    p.sigfox_channel_width_hz = j.at("sigfox_channel_width_hz").get<double>();
    p.sigfox_micro_channel_hz = j.at("sigfox_micro_channel_hz").get<double>();
    return p;
}

} // namespace ntnsim
