#include "ntnsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "ntnsim/channel.hpp"

namespace ntnsim {

int sample_payload(Rng& rng, int max_bytes, double pareto_shape) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double v = u(rng);
    while (v == 0.0) v = u(rng);
    const double x = std::pow(v, -1.0 / pareto_shape); // Pareto, scale 1
    const long r = std::lround(x);
    return static_cast<int>(std::clamp(r, 1L, static_cast<long>(max_bytes)));
}

std::vector<double> sample_arrivals(double rate_hz, double horizon_s, Rng& rng) {
    std::vector<double> out;
    if (rate_hz <= 0.0 || horizon_s <= 0.0) return out;
    std::exponential_distribution<double> gap(rate_hz);
    double t = gap(rng);
    while (t < horizon_s) {
        out.push_back(t);
        t += gap(rng);
    }
    return out;
}

namespace {

struct DeviceLink {
    bool reachable = false;     // link closes at the lowest modulation setting
    double mean_rx_dbm = 0.0;   // unit-fading received power
    int serving = 0;            // gateway index (TG topology only)
};

double platform_mean_rx_dbm(const Point& dev, const Platform& plat,
                            const TechnologyProfile& prof, const ChannelConfig& ch) {
    const double d = std::hypot(dev.x_km - plat.x_km, dev.y_km - plat.y_km);
    const auto geo = slant_geometry(d, plat.altitude_km, ch.spherical);
    const double extra = ch.los ? ch.fading.extra_loss_los_db : ch.fading.extra_loss_nlos_db;
    const double pl = free_space_path_loss_db(std::max(geo.slant_km, 1e-6),
                                              prof.carrier_freq_hz, ch.excess_loss_db, extra);
    return received_power_dbm(prof.tx_power_dbm, prof.tx_antenna_gain_db,
                              plat.rx_antenna_gain_db, pl, 1.0);
}

double ground_mean_rx_dbm(const Point& dev, const Point& gw, const TechnologyProfile& prof,
                          const ChannelConfig& ch, double shadow_db) {
    const double d = std::max(std::hypot(dev.x_km - gw.x_km, dev.y_km - gw.y_km), 1e-6);
    const double pl = ground_path_loss_db(d, ch.ground_pl0_db, ch.ground_exponent) +
                      ch.excess_loss_db + shadow_db;
    return received_power_dbm(prof.tx_power_dbm, prof.tx_antenna_gain_db, 8.0, pl, 1.0);
}

double lowest_sensitivity_dbm(Tech tech) {
    switch (tech) {
        case Tech::LoRa:
        case Tech::LoRaPlus:
            return lora_sensitivity_dbm(12);
        case Tech::NBIoT:
            return nbiot_sensitivity_dbm(128);
        case Tech::SigFox:
            return sigfox_sensitivity_dbm();
    }
    return 0.0;
}

// Builds one device's transmission events and appends them per collision
// domain (one domain per receiving node).
void append_device_events(const Scenario& sc, const TechnologyProfile& prof,
                          std::uint32_t device_id, const DeviceLink& link,
                          LinkKind fading_kind, Rng& rng,
                          std::vector<std::vector<TransmissionEvent>>& per_receiver,
                          std::uint64_t& attempted) {
    const auto& cfg = sc.config;
    const auto arrivals = sample_arrivals(cfg.arrival_rate_hz, cfg.horizon_s, rng);
    attempted += arrivals.size();
    if (!link.reachable) return; // cannot close the link: silent failures

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (double t : arrivals) {
        const int payload = cfg.payload_override_bytes > 0
                                ? std::min(cfg.payload_override_bytes, prof.max_payload_bytes)
                                : sample_payload(rng, prof.max_payload_bytes);
        TransmissionEvent ev;
        ev.device_id = device_id;
        ev.start_s = t;
        ev.payload_bytes = payload;
        const double fade = sample_fading(fading_kind, cfg.channel.fading, rng);
        ev.rx_power_dbm = link.mean_rx_dbm +
                          (fade > 0.0 ? 10.0 * std::log10(fade)
                                      : -std::numeric_limits<double>::infinity());
        switch (cfg.tech) {
            case Tech::LoRa:
            case Tech::LoRaPlus: {
                const auto policy = cfg.tech == Tech::LoRa ? SfPolicy::LowestFeasible
                                                           : SfPolicy::ScrambledPlus;
                const auto sf = assign_sf(link.mean_rx_dbm, policy, &rng);
                if (!sf) return;
                ev.sf = *sf;
                ev.duration_s = lora_toa_s(ev.sf, prof.bandwidth_hz, payload);
                ev.channel = cfg.mac.lora_channels > 1
                                 ? std::uniform_int_distribution<int>(
                                       0, cfg.mac.lora_channels - 1)(rng)
                                 : 0;
                break;
            }
            case Tech::NBIoT: {
                const auto reps = nbiot_min_repetitions(link.mean_rx_dbm);
                if (!reps) return;
                ev.repetitions = *reps;
                ev.duration_s = ev.repetitions * nbiot_slot_s(payload, cfg.mac);
                const int n_res = nbiot_resource_count(prof, cfg.mac);
                ev.resource = std::uniform_int_distribution<int>(0, n_res - 1)(rng);
                break;
            }
            case Tech::SigFox: {
                ev.duration_s = 3.0 * 8.0 * payload / cfg.mac.sigfox_rate_bps;
                std::uniform_int_distribution<int> pick(0, cfg.mac.sigfox_channels - 1);
                for (int r = 0; r < 3; ++r) ev.micro_channels[r] = pick(rng);
                break;
            }
        }
        per_receiver[link.serving].push_back(ev);
    }
}

} // namespace

DropResult run_drop(const Scenario& sc, Rng& rng) {
    const auto& cfg = sc.config;
    const TechnologyProfile prof = default_profile(cfg.tech);
    DropResult res;
    res.horizon_s = cfg.horizon_s;

    const bool ground = cfg.topology == PlatformKind::TG;
    const size_t n_rx = ground ? sc.gateways.size() : sc.platforms.size();
    if (n_rx == 0) {
        // No receiver at all: every arrival is attempted and lost.
        for (size_t i = 0; i < sc.devices.size(); ++i)
            res.attempted += sample_arrivals(cfg.arrival_rate_hz, cfg.horizon_s, rng).size();
        return res;
    }

    const double floor_dbm = lowest_sensitivity_dbm(cfg.tech);
    const LinkKind kind = ground ? LinkKind::GroundToGround
                                 : device_link_kind(sc.platforms.front().kind);

    // Static per-drop link state: mean powers (with per-link shadowing for the
    // ground topology) and serving-node selection.
    std::vector<DeviceLink> links(sc.devices.size());
    std::normal_distribution<double> shadow(0.0, cfg.channel.ground_shadowing_db);
    for (size_t i = 0; i < sc.devices.size(); ++i) {
        DeviceLink& l = links[i];
        if (ground) {
            double best = -std::numeric_limits<double>::infinity();
            for (size_t g = 0; g < sc.gateways.size(); ++g) {
                const double sh = cfg.channel.ground_shadowing_db > 0.0 ? shadow(rng) : 0.0;
                const double p = ground_mean_rx_dbm(sc.devices[i], sc.gateways[g], prof,
                                                    cfg.channel, sh);
                if (p > best) {
                    best = p;
                    l.serving = static_cast<int>(g);
                }
            }
            l.mean_rx_dbm = best;
        } else {
            l.serving = 0;
            l.mean_rx_dbm = platform_mean_rx_dbm(sc.devices[i], sc.platforms.front(), prof,
                                                 cfg.channel);
        }
        // SigFox devices transmit blindly; adaptive techs stay silent when even
        // the most robust setting cannot close the link on the mean budget.
        l.reachable = cfg.tech == Tech::SigFox || l.mean_rx_dbm >= floor_dbm;
    }

    std::vector<std::vector<TransmissionEvent>> per_receiver(n_rx);
    for (size_t i = 0; i < sc.devices.size(); ++i)
        append_device_events(sc, prof, static_cast<std::uint32_t>(i), links[i], kind, rng,
                             per_receiver, res.attempted);

    for (size_t r = 0; r < n_rx; ++r) {
        const auto outcomes = resolve_collisions(per_receiver[r], cfg.tech, cfg.mac);
        for (size_t k = 0; k < outcomes.size(); ++k) {
            if (outcomes[k] == Outcome::Success) {
                ++res.delivered;
                res.delivered_bytes += per_receiver[r][k].payload_bytes;
            }
        }
    }
    return res;
}

SimulationResult aggregate(const std::vector<DropResult>& drops) {
    SimulationResult out;
    out.drops = static_cast<int>(drops.size());
    if (drops.empty()) return out;
    std::uint64_t att = 0, del = 0;
    double gp_sum = 0.0;
    std::vector<double> ps;
    ps.reserve(drops.size());
    for (const auto& d : drops) {
        att += d.attempted;
        del += d.delivered;
        if (d.horizon_s > 0.0) gp_sum += d.delivered_bytes * 3600.0 / d.horizon_s;
        ps.push_back(d.attempted ? static_cast<double>(d.delivered) / d.attempted : 0.0);
    }
    out.goodput_bytes_per_hour = gp_sum / drops.size();
    out.success_probability = att ? static_cast<double>(del) / att : 0.0;
    if (drops.size() > 1) {
        const double mean = std::accumulate(ps.begin(), ps.end(), 0.0) / ps.size();
        double var = 0.0;
        for (double p : ps) var += (p - mean) * (p - mean);
        var /= (ps.size() - 1);
        out.confidence_halfwidth = 1.96 * std::sqrt(var / ps.size());
    }
    return out;
}

SimulationResult run_simulation(const ScenarioConfig& config, int drops, int threads) {
    if (drops < 1) throw ConfigError("drops must be >= 1");
    std::vector<DropResult> results(drops);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::min<unsigned>(hw, drops);
    n_threads = std::min<unsigned>(n_threads, drops);

    auto worker = [&](unsigned tid) {
        for (int d = tid; d < drops; d += static_cast<int>(n_threads)) {
            // Distinct, thread-independent streams: one for the layout draw,
            // one for traffic and fading.
            const auto scenario = build_scenario(config, child_seed(config.seed, 2 * d));
            Rng rng = make_rng(config.seed, 2 * d + 1);
            results[d] = run_drop(scenario, rng);
        }
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    return aggregate(results);
}

} // namespace ntnsim
