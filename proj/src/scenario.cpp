#include "ntnsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ntnsim {

namespace {

Point uniform_disk_point(double radius_km, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius_km * std::sqrt(u(rng));
    const double theta = 2.0 * M_PI * u(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

long draw_count(double density_per_km2, double area_km2, bool fixed, Rng& rng) {
    const double mean = density_per_km2 * area_km2;
    if (fixed) return std::lround(mean);
    std::poisson_distribution<long> p(mean);
    return p(rng);
}

} // namespace

Scenario build_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    if (config.aoi_radius_km <= 0.0) throw ConfigError("aoi_radius_km must be > 0");
    Scenario s;
    s.config = config;
    s.config.seed = seed;

    Rng rng = make_rng(seed, 0);
    const double area = M_PI * config.aoi_radius_km * config.aoi_radius_km;

    long n_dev = config.fixed_devices >= 0
                     ? config.fixed_devices
                     : draw_count(config.id_density_per_km2, area, config.fixed_counts, rng);
    s.devices.reserve(n_dev);
    for (long i = 0; i < n_dev; ++i)
        s.devices.push_back(uniform_disk_point(config.aoi_radius_km, rng));

    if (config.topology == PlatformKind::TG) {
        // Gateways are the only receivers in this topology, so a random draw
        // of zero is bumped to one to keep the scenario servable.
        long n_gw = config.fixed_gateways >= 0
                        ? config.fixed_gateways
                        : std::max(draw_count(config.tg_density_per_km2, area,
                                              config.fixed_counts, rng),
                                   1L);
        s.gateways.reserve(n_gw);
        for (long i = 0; i < n_gw; ++i)
            s.gateways.push_back(uniform_disk_point(config.aoi_radius_km, rng));
    } else {
        // A single aerial/orbital platform at the AoI center serves everyone.
        s.platforms.push_back(make_platform(config.topology));
    }
    return s;
}

namespace {

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

double to_double(const std::string& v) {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("bad numeric value: " + v);
    return d;
}

int to_int(const std::string& v) {
    size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) throw ConfigError("bad integer value: " + v);
    return i;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("bad boolean value: " + v);
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> m = {
        {"aoi_radius_km", [](ScenarioConfig& c, const std::string& v) { c.aoi_radius_km = to_double(v); }},
        {"id_density_per_km2", [](ScenarioConfig& c, const std::string& v) { c.id_density_per_km2 = to_double(v); }},
        {"tg_density_per_km2", [](ScenarioConfig& c, const std::string& v) { c.tg_density_per_km2 = to_double(v); }},
        {"arrival_rate_hz", [](ScenarioConfig& c, const std::string& v) { c.arrival_rate_hz = to_double(v); }},
        {"horizon_s", [](ScenarioConfig& c, const std::string& v) { c.horizon_s = to_double(v); }},
        {"tech", [](ScenarioConfig& c, const std::string& v) { c.tech = tech_from_string(v); }},
        {"topology", [](ScenarioConfig& c, const std::string& v) { c.topology = platform_kind_from_string(v); }},
        {"fixed_counts", [](ScenarioConfig& c, const std::string& v) { c.fixed_counts = to_bool(v); }},
        {"fixed_devices", [](ScenarioConfig& c, const std::string& v) { c.fixed_devices = to_int(v); }},
        {"fixed_gateways", [](ScenarioConfig& c, const std::string& v) { c.fixed_gateways = to_int(v); }},
        {"payload_override_bytes", [](ScenarioConfig& c, const std::string& v) { c.payload_override_bytes = to_int(v); }},
        {"seed", [](ScenarioConfig& c, const std::string& v) { c.seed = std::stoull(v); }},
        {"channel.excess_loss_db", [](ScenarioConfig& c, const std::string& v) { c.channel.excess_loss_db = to_double(v); }},
        {"channel.ground_pl0_db", [](ScenarioConfig& c, const std::string& v) { c.channel.ground_pl0_db = to_double(v); }},
        {"channel.ground_exponent", [](ScenarioConfig& c, const std::string& v) { c.channel.ground_exponent = to_double(v); }},
        {"channel.ground_shadowing_db", [](ScenarioConfig& c, const std::string& v) { c.channel.ground_shadowing_db = to_double(v); }},
        {"channel.los", [](ScenarioConfig& c, const std::string& v) { c.channel.los = to_bool(v); }},
        {"channel.spherical", [](ScenarioConfig& c, const std::string& v) { c.channel.spherical = to_bool(v); }},
        {"channel.nakagami_m0", [](ScenarioConfig& c, const std::string& v) { c.channel.fading.nakagami_m0 = to_double(v); }},
        {"channel.sr_omega", [](ScenarioConfig& c, const std::string& v) { c.channel.fading.sr_omega = to_double(v); }},
        {"channel.sr_b0", [](ScenarioConfig& c, const std::string& v) { c.channel.fading.sr_b0 = to_double(v); }},
        {"channel.sr_m", [](ScenarioConfig& c, const std::string& v) { c.channel.fading.sr_m = to_double(v); }},
        {"mac.capture_margin_db", [](ScenarioConfig& c, const std::string& v) { c.mac.capture_margin_db = to_double(v); }},
        {"mac.lora_channels", [](ScenarioConfig& c, const std::string& v) { c.mac.lora_channels = to_int(v); }},
        {"mac.sigfox_channels", [](ScenarioConfig& c, const std::string& v) { c.mac.sigfox_channels = to_int(v); }},
        {"mac.nbiot_resource_share", [](ScenarioConfig& c, const std::string& v) { c.mac.nbiot_resource_share = to_double(v); }},
        {"mac.nbiot_rate_bps", [](ScenarioConfig& c, const std::string& v) { c.mac.nbiot_rate_bps = to_double(v); }},
        {"mac.sigfox_rate_bps", [](ScenarioConfig& c, const std::string& v) { c.mac.sigfox_rate_bps = to_double(v); }},
    };
    return m;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            it->second(c, value);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "aoi_radius_km=" << c.aoi_radius_km << '\n'
        << "id_density_per_km2=" << c.id_density_per_km2 << '\n'
        << "tg_density_per_km2=" << c.tg_density_per_km2 << '\n'
        << "arrival_rate_hz=" << c.arrival_rate_hz << '\n'
        << "horizon_s=" << c.horizon_s << '\n'
        << "tech=" << to_string(c.tech) << '\n'
        << "topology=" << to_string(c.topology) << '\n'
        << "fixed_counts=" << (c.fixed_counts ? "true" : "false") << '\n'
        << "fixed_devices=" << c.fixed_devices << '\n'
        << "fixed_gateways=" << c.fixed_gateways << '\n'
        << "payload_override_bytes=" << c.payload_override_bytes << '\n'
        << "seed=" << c.seed << '\n'
        << "channel.excess_loss_db=" << c.channel.excess_loss_db << '\n'
        << "channel.ground_pl0_db=" << c.channel.ground_pl0_db << '\n'
        << "channel.ground_exponent=" << c.channel.ground_exponent << '\n'
        << "channel.ground_shadowing_db=" << c.channel.ground_shadowing_db << '\n'
        << "channel.los=" << (c.channel.los ? "true" : "false") << '\n'
        << "channel.spherical=" << (c.channel.spherical ? "true" : "false") << '\n'
        << "channel.nakagami_m0=" << c.channel.fading.nakagami_m0 << '\n'
        << "channel.sr_omega=" << c.channel.fading.sr_omega << '\n'
        << "channel.sr_b0=" << c.channel.fading.sr_b0 << '\n'
        << "channel.sr_m=" << c.channel.fading.sr_m << '\n'
        << "mac.capture_margin_db=" << c.mac.capture_margin_db << '\n'
        << "mac.lora_channels=" << c.mac.lora_channels << '\n'
        << "mac.sigfox_channels=" << c.mac.sigfox_channels << '\n'
        << "mac.nbiot_resource_share=" << c.mac.nbiot_resource_share << '\n'
        << "mac.nbiot_rate_bps=" << c.mac.nbiot_rate_bps << '\n'
        << "mac.sigfox_rate_bps=" << c.mac.sigfox_rate_bps << '\n';
    return out.str();
}

} // namespace ntnsim
