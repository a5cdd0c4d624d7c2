#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "ntnsim/params.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

// Collision-model constants; all overridable through the config schema.
struct MacConfig {
    double capture_margin_db = 6.0; // co-channel rejection for same-SF packets
    int lora_channels = 1;          // parallel receive channels per gateway
    int sigfox_channels = 2000;     // micro-channels available to replicas
    double nbiot_resource_share = 0.3;
    double nbiot_tone_hz = 15e3;
    double nbiot_rate_bps = 90e3;
    double sigfox_rate_bps = 100.0;
};

double lora_data_rate_bps(int sf, double bandwidth_hz);
double lora_toa_s(int sf, double bandwidth_hz, int payload_bytes);

double lora_sensitivity_dbm(int sf);
double nbiot_sensitivity_dbm(int repetitions);
double sigfox_sensitivity_dbm();

// Smallest power-of-two repetition count <= 128 whose sensitivity the given
// power clears; nullopt when even 128 repetitions are not enough.
std::optional<int> nbiot_min_repetitions(double rx_power_dbm);

enum class SfPolicy { LowestFeasible, ScrambledPlus };

// LowestFeasible returns the smallest feasible SF; ScrambledPlus draws
// uniformly from the whole feasible set {k_min..12}.
std::optional<int> assign_sf(double rx_power_mean_dbm, SfPolicy policy, Rng* rng = nullptr);

bool detect(double rx_power_dbm, double sensitivity_dbm);

int nbiot_resource_count(const TechnologyProfile& profile, const MacConfig& mac);
double nbiot_slot_s(int payload_bytes, const MacConfig& mac);

struct TransmissionEvent {
    std::uint32_t device_id = 0;
    double start_s = 0.0;
    double duration_s = 0.0;
    int payload_bytes = 0;
    double rx_power_dbm = 0.0;
    // LoRa/LoRa+
    int sf = 0;
    int channel = 0;
    // NB-IoT
    int repetitions = 0;
    int resource = 0;
    // SigFox: replica micro-channels; replicas are back-to-back, each lasting
    // duration_s / 3.
    int micro_channels[3] = {0, 0, 0};
};

enum class Outcome { Success, BelowSensitivity, Collision };

// Resolves one receiver's batch of events.  All randomness (channel picks,
// fading) is drawn upstream into the events, so this is deterministic and
// independent of input order.
std::vector<Outcome> resolve_collisions(const std::vector<TransmissionEvent>& events,
                                        Tech tech, const MacConfig& mac);

} // namespace ntnsim
