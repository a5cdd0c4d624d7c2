#include "ntnsim/phymac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ntnsim {

namespace {
constexpr int kSfMin = 7;
constexpr int kSfMax = 12;

void check_sf(int sf) {
    if (sf < kSfMin || sf > kSfMax) throw std::invalid_argument("SF must be in [7,12]");
}
} // namespace

double lora_data_rate_bps(int sf, double bandwidth_hz) {
    check_sf(sf);
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("bandwidth must be positive");
    return sf * bandwidth_hz / std::exp2(sf);
}

double lora_toa_s(int sf, double bandwidth_hz, int payload_bytes) {
    check_sf(sf);
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("bandwidth must be positive");
    if (payload_bytes < 1) throw std::invalid_argument("payload must be >= 1 byte");
    const double sym = std::exp2(sf) / bandwidth_hz;
    const double num = 8.0 * payload_bytes - 4.0 * sf + 24.0;
    const double payload_syms = std::max(5.0 * std::ceil(num / (4.0 * sf)), 0.0);
    return sym * (8.0 + payload_syms);
}

double lora_sensitivity_dbm(int sf) {
    check_sf(sf);
    return -127.0 - 2.5 * (sf - 7);
}

double nbiot_sensitivity_dbm(int repetitions) {
    if (repetitions < 1 || repetitions > 128 || (repetitions & (repetitions - 1)) != 0)
        throw std::invalid_argument("repetitions must be a power of two in [1,128]");
    return -102.2 - 2.8 * std::log2(static_cast<double>(repetitions));
}

double sigfox_sensitivity_dbm() { return -140.0; }

std::optional<int> nbiot_min_repetitions(double rx_power_dbm) {
    for (int r = 1; r <= 128; r <<= 1)
        if (rx_power_dbm >= nbiot_sensitivity_dbm(r)) return r;
    return std::nullopt;
}

std::optional<int> assign_sf(double rx_power_mean_dbm, SfPolicy policy, Rng* rng) {
    int k_min = -1;
    for (int k = kSfMin; k <= kSfMax; ++k) {
        if (rx_power_mean_dbm >= lora_sensitivity_dbm(k)) {
            k_min = k;
            break;
        }
    }
    if (k_min < 0) return std::nullopt;
    if (policy == SfPolicy::LowestFeasible) return k_min;
    if (!rng) throw std::invalid_argument("scrambled policy needs an RNG");
    std::uniform_int_distribution<int> pick(k_min, kSfMax);
    return pick(*rng);
}

bool detect(double rx_power_dbm, double sensitivity_dbm) {
    return rx_power_dbm >= sensitivity_dbm;
}

int nbiot_resource_count(const TechnologyProfile& profile, const MacConfig& mac) {
    return static_cast<int>(std::floor(mac.nbiot_resource_share * profile.bandwidth_hz /
                                       mac.nbiot_tone_hz));
}

double nbiot_slot_s(int payload_bytes, const MacConfig& mac) {
    if (payload_bytes < 1) throw std::invalid_argument("payload must be >= 1 byte");
    return 8.0 * payload_bytes / mac.nbiot_rate_bps;
}

namespace {

// One interval in a shared collision domain (a frequency channel, an uplink
// resource, or a micro-channel).
struct Span {
    double t0, t1;
    double rx_lin; // 0 when capture is not modeled in this domain
    size_t idx;    // event index
};

inline bool overlaps(double a0, double a1, double b0, double b1) {
    return a0 < b1 && b0 < a1;
}

// For each span, the linear power sum of overlapping spans (overlap_power) and
// whether it overlaps anything (overlap_any).  Sorted two-sided window sweep;
// near-linear when concurrency is modest.
void sweep_domain(std::vector<Span>& spans, std::vector<double>* overlap_power,
                  std::vector<char>* overlap_any) {
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        if (a.t0 != b.t0) return a.t0 < b.t0;
        return a.idx < b.idx;
    });
    double max_dur = 0.0;
    for (const Span& s : spans) max_dur = std::max(max_dur, s.t1 - s.t0);
    const size_t n = spans.size();
    for (size_t i = 0; i < n; ++i) {
        const Span& a = spans[i];
        double power = 0.0;
        bool any = false;
        for (size_t j = i; j-- > 0;) {
            if (spans[j].t0 + max_dur <= a.t0 && spans[j].t0 < a.t0) break;
            if (overlaps(a.t0, a.t1, spans[j].t0, spans[j].t1)) {
                any = true;
                power += spans[j].rx_lin;
            }
        }
        for (size_t j = i + 1; j < n && spans[j].t0 < a.t1; ++j) {
            any = true;
            power += spans[j].rx_lin;
        }
        if (overlap_power) (*overlap_power)[a.idx] += power;
        if (overlap_any && any) (*overlap_any)[a.idx] = 1;
    }
}

std::vector<Outcome> resolve_lora(const std::vector<TransmissionEvent>& ev,
                                  const MacConfig& mac) {
    const size_t n = ev.size();
    std::vector<Outcome> out(n, Outcome::Success);
    std::map<std::pair<int, int>, std::vector<Span>> domains; // (sf, channel)
    for (size_t i = 0; i < n; ++i) {
        domains[{ev[i].sf, ev[i].channel}].push_back(
            {ev[i].start_s, ev[i].start_s + ev[i].duration_s,
             std::pow(10.0, ev[i].rx_power_dbm / 10.0), i});
    }
    std::vector<double> interf(n, 0.0);
    for (auto& [key, spans] : domains) sweep_domain(spans, &interf, nullptr);
    const double margin = std::pow(10.0, mac.capture_margin_db / 10.0);
    for (size_t i = 0; i < n; ++i) {
        if (!detect(ev[i].rx_power_dbm, lora_sensitivity_dbm(ev[i].sf)))
            out[i] = Outcome::BelowSensitivity;
        // Relative tolerance keeps an exactly-at-the-margin packet on the
        // capture side despite rounding in the dB->linear conversions.
        else if (interf[i] > 0.0 &&
                 std::pow(10.0, ev[i].rx_power_dbm / 10.0) * (1.0 + 1e-9) <
                     margin * interf[i])
            out[i] = Outcome::Collision;
    }
    return out;
}

std::vector<Outcome> resolve_sigfox(const std::vector<TransmissionEvent>& ev,
                                    const MacConfig& mac) {
    (void)mac;
    const size_t n = ev.size();
    std::vector<Outcome> out(n, Outcome::Success);
    // Replica index space: 3*i + r for replica r of event i.
    std::map<int, std::vector<Span>> domains; // micro-channel
    for (size_t i = 0; i < n; ++i) {
        const double rep = ev[i].duration_s / 3.0;
        for (int r = 0; r < 3; ++r) {
            const double t0 = ev[i].start_s + r * rep;
            domains[ev[i].micro_channels[r]].push_back({t0, t0 + rep, 0.0, 3 * i + r});
        }
    }
    std::vector<char> hit(3 * n, 0);
    for (auto& [key, spans] : domains) sweep_domain(spans, nullptr, &hit);
    for (size_t i = 0; i < n; ++i) {
        if (!detect(ev[i].rx_power_dbm, sigfox_sensitivity_dbm())) {
            out[i] = Outcome::BelowSensitivity;
            continue;
        }
        if (hit[3 * i] && hit[3 * i + 1] && hit[3 * i + 2]) out[i] = Outcome::Collision;
    }
    return out;
}

std::vector<Outcome> resolve_nbiot(const std::vector<TransmissionEvent>& ev,
                                   const MacConfig& mac) {
    (void)mac;
    const size_t n = ev.size();
    std::vector<Outcome> out(n, Outcome::Success);
    std::map<int, std::vector<Span>> domains; // resource
    for (size_t i = 0; i < n; ++i)
        domains[ev[i].resource].push_back(
            {ev[i].start_s, ev[i].start_s + ev[i].duration_s, 0.0, i});
    std::vector<char> hit(n, 0);
    for (auto& [key, spans] : domains) sweep_domain(spans, nullptr, &hit);
    for (size_t i = 0; i < n; ++i) {
        if (ev[i].repetitions == 0 ||
            !detect(ev[i].rx_power_dbm, nbiot_sensitivity_dbm(ev[i].repetitions)))
            out[i] = Outcome::BelowSensitivity;
        else if (hit[i])
            out[i] = Outcome::Collision;
    }
    return out;
}

} // namespace

std::vector<Outcome> resolve_collisions(const std::vector<TransmissionEvent>& events,
                                        Tech tech, const MacConfig& mac) {
    switch (tech) {
        case Tech::LoRa:
        case Tech::LoRaPlus:
            return resolve_lora(events, mac);
        case Tech::SigFox:
            return resolve_sigfox(events, mac);
        case Tech::NBIoT:
            return resolve_nbiot(events, mac);
    }
    throw std::invalid_argument("bad tech");
}

} // namespace ntnsim
