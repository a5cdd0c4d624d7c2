#pragma once
#include <cstdint>
#include <vector>

#include "ntnsim/scenario.hpp"

namespace ntnsim {

struct DropResult {
    std::uint64_t attempted = 0;
    std::uint64_t delivered = 0;
    std::uint64_t delivered_bytes = 0;
    double horizon_s = 0.0;
};

struct SimulationResult {
    double goodput_bytes_per_hour = 0.0;
    double success_probability = 0.0;
    double confidence_halfwidth = 0.0;
    int drops = 0;
};

int sample_payload(Rng& rng, int max_bytes, double pareto_shape = 2.5);
std::vector<double> sample_arrivals(double rate_hz, double horizon_s, Rng& rng);

DropResult run_drop(const Scenario& scenario, Rng& rng);

SimulationResult aggregate(const std::vector<DropResult>& drops);

// Runs `drops` independent drops (parallel across hardware threads), each with
// a child RNG derived from (scenario seed, drop index).
SimulationResult run_simulation(const ScenarioConfig& config, int drops,
                                int threads = 0);

} // namespace ntnsim
