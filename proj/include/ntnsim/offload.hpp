#pragma once
#include <array>
#include <vector>

#include "ntnsim/scenario.hpp"

namespace ntnsim {

// Fraction of traffic a device group redirects from its gateway to the
// satellite; 0 keeps everything terrestrial.
double p_success_tg(double eta, double toa_s, double rate_hz, double count);

struct InnerSolution {
    std::vector<double> alpha; // over {sf_min..12}, sums to 1
    double p_s_leo = 1.0;
};

// argmax over the simplex of sum_v alpha_v * exp(-alpha_v * T_v * rate * total),
// solved by KKT bisection on the shared stationarity multiplier with a
// projected-gradient fallback.
InnerSolution solve_inner_alpha(double total_offloaded, double rate_hz,
                                const std::vector<double>& toa_by_v_s, int sf_min);

// One device group: `count` devices that reach gateway `cell` with SF `sf`.
struct OffloadGroup {
    int cell = 0;
    int sf = 7;
    double count = 0.0;
};

struct OffloadProblem {
    std::vector<OffloadGroup> groups;
    double arrival_rate_hz = 1.0 / 360.0;
    std::array<double, 6> toa_by_sf_s{}; // SF7..SF12
    int sf_min = 7;
    double leo_gate = 1.0;          // per-device satellite radio success factor
    double forced_offload = 0.0;    // devices with no gateway coverage (eta = 1)
    double background_load = 0.0;   // satellite load from outside the service area

    // Single-cell convenience: counts indexed by SF7..SF12.
    static OffloadProblem single_cell(const std::array<double, 6>& device_counts,
                                      double rate_hz,
                                      const std::array<double, 6>& toa_by_sf_s,
                                      int sf_min);
};

struct OffloadSolution {
    std::vector<double> eta;      // per group
    std::vector<double> alpha;    // over {sf_min..12}
    std::vector<double> p_s_per_group;
    double p_s_leo = 1.0;         // includes the gate factor
    double mean_p_s = 0.0;        // device-weighted, incl. forced-offload devices
    int iterations = 0;
    bool converged = false;
};

// Coordinate-wise fixed point: every group picks the eta maximizing its own
// mixed success given the shared satellite load; Gauss-Seidel sweeps with a
// golden-section line search per coordinate.
OffloadSolution solve_offload(const OffloadProblem& problem);

enum class OffloadMode { StandaloneTG, LEOOffload };

struct OffloadScenarioResult {
    double mean_p_s = 0.0;
    double out_of_coverage_fraction = 0.0;
    OffloadSolution solution; // empty in standalone mode
};

struct OffloadStudyConfig {
    int payload_bytes = 50;
    double rate_hz = 1.0 / 360.0;
    int sf_min = 7;
    double background_load = 0.0;
    bool leo_gate_from_fading = true; // gate = P(detect | satellite fading)
};

OffloadScenarioResult evaluate_offload_scenario(const Scenario& scenario,
                                                const OffloadStudyConfig& study,
                                                OffloadMode mode);

} // namespace ntnsim
