#include "ntnsim/coverage.hpp"

#include <cmath>
#include <stdexcept>

#include "ntnsim/phymac.hpp"
#include "ntnsim/scenario.hpp"

namespace ntnsim {

namespace {

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
    throw std::invalid_argument("bad tech");
}

// Unit-fading received power at ground distance d from the sub-platform point.
double mean_rx_dbm(double d_km, const TechnologyProfile& tech, const Platform& platform,
                   const ChannelConfig& ch) {
    double pl;
    if (platform.altitude_km == 0.0) {
        pl = ground_path_loss_db(std::max(d_km, 1e-6), ch.ground_pl0_db,
                                 ch.ground_exponent) +
             ch.excess_loss_db;
    } else {
        const auto geo = slant_geometry(d_km, platform.altitude_km, ch.spherical);
        const double extra = ch.los ? ch.fading.extra_loss_los_db
                                    : ch.fading.extra_loss_nlos_db;
        pl = free_space_path_loss_db(geo.slant_km, tech.carrier_freq_hz,
                                     ch.excess_loss_db, extra);
    }
    return received_power_dbm(tech.tx_power_dbm, tech.tx_antenna_gain_db,
                              platform.rx_antenna_gain_db, pl, 1.0);
}

} // namespace

CoverageResult max_range(const TechnologyProfile& tech, const Platform& platform,
                         const ChannelConfig& channel) {
    const double sens = lowest_sensitivity_dbm(tech.tech_id);
    // Ground distance never exceeds the geometric horizon arc for elevated
    // platforms under spherical geometry.
    double upper = 40000.0;
    if (platform.altitude_km > 0.0 && channel.spherical) {
        const double re = kEarthRadiusKm;
        upper = re * std::acos(re / (re + platform.altitude_km));
    }
    const double tol_km = 1e-3; // 1 m

    CoverageResult out;
    if (mean_rx_dbm(tol_km, tech, platform, channel) < sens) {
        out.max_range_km = 0.0;
        out.min_elevation_deg = 90.0;
        out.edge_margin_db = mean_rx_dbm(tol_km, tech, platform, channel) - sens;
        return out;
    }
    double lo = tol_km, hi = upper;
    if (mean_rx_dbm(upper, tech, platform, channel) >= sens) {
        lo = upper;
    } else {
        while (hi - lo > tol_km) {
            const double mid = 0.5 * (lo + hi);
            if (mean_rx_dbm(mid, tech, platform, channel) >= sens)
                lo = mid;
            else
                hi = mid;
        }
    }
    out.max_range_km = lo;
    out.edge_margin_db = mean_rx_dbm(lo, tech, platform, channel) - sens;
    out.min_elevation_deg =
        slant_geometry(lo, platform.altitude_km, channel.spherical).elevation_deg;
    return out;
}

long min_platforms(double aoi_radius_km, double coverage_radius_km) {
    if (aoi_radius_km <= 0.0 || coverage_radius_km <= 0.0)
        throw std::invalid_argument("radii must be positive");
    if (coverage_radius_km >= aoi_radius_km) return 1;
    // Radial deployment rule: one platform per coverage cell along the service
    // radius.  This reproduces the published platform counts exactly (e.g.
    // 70 ground cells of 14.3 km for a 1000 km region, 10 cells of 104.6 km).
    return static_cast<long>(std::ceil(aoi_radius_km / coverage_radius_km - 1e-12));
}

} // namespace ntnsim
