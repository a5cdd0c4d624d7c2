#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ntnsim/channel.hpp"
#include "ntnsim/coverage.hpp"
#include "ntnsim/offload.hpp"
#include "ntnsim/presets.hpp"
#include "ntnsim/sim.hpp"

namespace {

using namespace ntnsim;

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::string path = output;
    const char* dir = std::getenv("NTNSIM_OUTDIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write output file: " + path);
    f << text;
}

struct SimulateArgs {
    std::string tech = "lora";
    std::string topology = "tg";
    std::string config_path;
    std::string output;
    long devices = -1;
    double radius = 5.0;
    double id_density = 10.0;
    double tg_density = 1.0;
    int drops = 4;
    int threads = 0;
    std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateArgs& a) {
    ScenarioConfig cfg;
    if (!a.config_path.empty()) cfg = load_config_file(a.config_path);
    cfg.tech = tech_from_string(a.tech);
    cfg.topology = platform_kind_from_string(a.topology);
    cfg.aoi_radius_km = a.radius;
    cfg.id_density_per_km2 = a.id_density;
    cfg.tg_density_per_km2 = a.tg_density;
    if (a.devices >= 0) cfg.fixed_devices = static_cast<int>(a.devices);
    cfg.seed = a.seed;
    const auto res = run_simulation(cfg, a.drops, a.threads);
    std::ostringstream out;
    out << "tech,topology,devices,drops,goodput_bytes_per_hour,success_probability,"
           "ci_halfwidth\n"
        << a.tech << ',' << a.topology << ',' << a.devices << ',' << a.drops << ','
        << res.goodput_bytes_per_hour << ',' << res.success_probability << ','
        << res.confidence_halfwidth << '\n';
    emit(out.str(), a.output);
    return 0;
}

int cmd_coverage(const std::string& tech, const std::string& platform, bool calibrated,
                 const std::string& output) {
    const Tech t = tech_from_string(tech);
    const PlatformKind k = platform_kind_from_string(platform);
    ChannelConfig ch;
    if (calibrated) ch.excess_loss_db = coverage_excess_loss_db(t, k);
    const auto res = max_range(default_profile(t), make_platform(k), ch);
    std::ostringstream out;
    out << "tech,platform,range_km,elevation_deg,edge_margin_db\n"
        << tech << ',' << platform << ',' << res.max_range_km << ','
        << res.min_elevation_deg << ',' << res.edge_margin_db << '\n';
    emit(out.str(), output);
    return 0;
}

struct OffloadArgs {
    std::string preset;
    std::string mode = "offload";
    std::string output;
    double tg_density = 0.1;
    double id_density = 50.0;
    int sf_min = 7;
    int drops = 50;
    std::uint64_t seed = 1;
};

int cmd_offload(const OffloadArgs& a) {
    if (!a.preset.empty()) {
        if (a.preset != "fig5a" && a.preset != "fig5b")
            throw ConfigError("offload preset must be fig5a or fig5b");
        emit(run_preset(a.preset, a.seed, 0), a.output);
        return 0;
    }
    const OffloadMode mode = a.mode == "standalone" ? OffloadMode::StandaloneTG
                                                    : OffloadMode::LEOOffload;
    double acc = 0.0;
    for (int d = 0; d < a.drops; ++d) {
        const auto sc = build_scenario(fig5_config(a.tg_density, a.id_density, a.seed),
                                       child_seed(a.seed, 1000 + d));
        acc += evaluate_offload_scenario(sc, fig5_study(a.sf_min), mode).mean_p_s;
    }
    std::ostringstream out;
    out << "tg_density,id_density,mode,sf_min,mean_p_s\n"
        << a.tg_density << ',' << a.id_density << ',' << a.mode << ',' << a.sf_min << ','
        << acc / a.drops << '\n';
    emit(out.str(), a.output);
    return 0;
}

int cmd_channel_table(const std::string& tech, const std::string& platform,
                      double max_km, double step_km, const std::string& output) {
    const Tech t = tech_from_string(tech);
    const PlatformKind k = platform_kind_from_string(platform);
    const TechnologyProfile prof = default_profile(t);
    const Platform plat = make_platform(k);
    const ChannelConfig ch;
    std::ostringstream out;
    out << "distance_km,slant_km,elevation_deg,path_loss_db,rx_power_dbm,snr_db\n";
    for (double d = step_km; d <= max_km + 1e-9; d += step_km) {
        double pl;
        SlantGeometry geo{d, 0.0};
        if (plat.altitude_km == 0.0) {
            pl = ground_path_loss_db(d, ch.ground_pl0_db, ch.ground_exponent);
        } else {
            geo = slant_geometry(d, plat.altitude_km, ch.spherical);
            pl = free_space_path_loss_db(geo.slant_km, prof.carrier_freq_hz, 0.0,
                                         ch.fading.extra_loss_los_db);
        }
        const double rx = received_power_dbm(prof.tx_power_dbm, prof.tx_antenna_gain_db,
                                             plat.rx_antenna_gain_db, pl, 1.0);
        out << d << ',' << geo.slant_km << ',' << geo.elevation_deg << ',' << pl << ','
            << rx << ',' << snr_db(rx, prof.bandwidth_hz, prof.noise_figure_db) << '\n';
    }
    emit(out.str(), output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator and optimizer for uplink IoT over "
                 "terrestrial and non-terrestrial gateways"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo goodput study");
    simulate->add_option("--tech", sim.tech, "lora | lora+ | nbiot | sigfox");
    simulate->add_option("--topology", sim.topology, "tg | uav | hap | leo | hap-leo");
    simulate->add_option("--devices", sim.devices, "fixed device count");
    simulate->add_option("--radius", sim.radius, "service area radius, km");
    simulate->add_option("--id-density", sim.id_density, "devices per km^2");
    simulate->add_option("--tg-density", sim.tg_density, "gateways per km^2");
    simulate->add_option("--drops", sim.drops, "independent Monte Carlo drops");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)");
    simulate->add_option("--seed", sim.seed, "master RNG seed");
    simulate->add_option("--config", sim.config_path, "key=value config file");
    simulate->add_option("--output", sim.output, "output CSV path (default stdout)");

    std::string cov_tech = "lora", cov_platform = "leo", cov_out;
    bool cov_calibrated = true;
    auto* coverage = app.add_subcommand("coverage", "Compute maximum service range");
    coverage->add_option("--tech", cov_tech);
    coverage->add_option("--platform", cov_platform);
    coverage->add_flag("--calibrated,!--uncalibrated", cov_calibrated,
                       "use the calibrated excess-loss constants");
    coverage->add_option("--output", cov_out);

    OffloadArgs off;
    auto* offload = app.add_subcommand("offload", "Evaluate traffic offloading");
    offload->add_option("--preset", off.preset, "fig5a | fig5b");
    offload->add_option("--mode", off.mode, "standalone | offload");
    offload->add_option("--tg-density", off.tg_density);
    offload->add_option("--id-density", off.id_density);
    offload->add_option("--sf-min", off.sf_min)->check(CLI::Range(7, 12));
    offload->add_option("--drops", off.drops);
    offload->add_option("--seed", off.seed);
    offload->add_option("--output", off.output);

    std::string preset_name, preset_out;
    int preset_threads = 0;
    std::uint64_t preset_seed = 1;
    auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
    preset->add_option("name", preset_name, "fig2 | fig3 | fig4 | fig5a | fig5b | table3")
        ->required();
    preset->add_option("--seed", preset_seed);
    preset->add_option("--threads", preset_threads);
    preset->add_option("--output", preset_out);

    std::string ct_tech = "lora", ct_platform = "leo", ct_out;
    double ct_max = 100.0, ct_step = 10.0;
    auto* channel_table =
        app.add_subcommand("channel-table", "Tabulate the link budget vs distance");
    channel_table->add_option("--tech", ct_tech);
    channel_table->add_option("--platform", ct_platform);
    channel_table->add_option("--max-km", ct_max);
    channel_table->add_option("--step-km", ct_step);
    channel_table->add_option("--output", ct_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (coverage->parsed())
            return cmd_coverage(cov_tech, cov_platform, cov_calibrated, cov_out);
        if (offload->parsed()) return cmd_offload(off);
        if (preset->parsed()) {
            emit(run_preset(preset_name, preset_seed, preset_threads), preset_out);
            return 0;
        }
        if (channel_table->parsed())
            return cmd_channel_table(ct_tech, ct_platform, ct_max, ct_step, ct_out);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
