#pragma once
#include <string>
#include <vector>

#include "ntnsim/offload.hpp"
#include "ntnsim/scenario.hpp"

namespace ntnsim {

// Calibrated excess-loss constants (dB) that make the link-budget inversion
// reproduce the published coverage table; used by the `table3` preset.
double coverage_excess_loss_db(Tech tech, PlatformKind kind);

// Experiment presets.  Each resolves to fully specified runnable configs.
struct GoodputPreset { // fig2: goodput vs device count
    std::vector<long> device_counts{1000, 3162, 10000, 31623, 100000};
    std::vector<PlatformKind> topologies{PlatformKind::UAV, PlatformKind::HAP,
                                         PlatformKind::LEO};
    int drops = 4;
    std::uint64_t seed = 1;
};

struct SuccessVsRadiusPreset { // fig3: success probability vs AoI radius
    std::vector<double> radii_km{1, 2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20};
    int drops = 25;
    std::uint64_t seed = 1;
};

struct CoveragePreset { // fig4: platform count vs service radius
    std::vector<double> radii_km;
    CoveragePreset();
};

struct OffloadPreset { // fig5a / fig5b
    std::vector<double> tg_densities{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> id_densities{10, 25, 50, 75, 100};
    bool sweep_tg = true; // fig5a sweeps TG density, fig5b device density
    double fixed_tg_density = 0.1;
    double fixed_id_density = 50.0;
    int drops = 200;
    std::uint64_t seed = 1;
};

// Baseline scenario config for a given experiment family.
ScenarioConfig fig2_config(Tech tech, PlatformKind topology, long devices,
                           std::uint64_t seed);
ScenarioConfig fig3_config(PlatformKind topology, double radius_km,
                           std::uint64_t seed);
ScenarioConfig fig5_config(double tg_density, double id_density,
                           std::uint64_t seed);
OffloadStudyConfig fig5_study(int sf_min);

std::string run_preset(const std::string& name, std::uint64_t seed, int threads);

} // namespace ntnsim
