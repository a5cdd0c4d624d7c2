#include "ntnsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ntnsim {

LinkKind device_link_kind(PlatformKind k) {
    switch (k) {
        case PlatformKind::TG: return LinkKind::GroundToGround;
        case PlatformKind::UAV: return LinkKind::GroundToUAV;
        case PlatformKind::HAP: return LinkKind::GroundToHAP;
        case PlatformKind::LEO: return LinkKind::GroundToLEO;
        case PlatformKind::HAPRelayLEO: return LinkKind::GroundToHAP;
    }
    throw std::invalid_argument("bad platform kind");
}

SlantGeometry slant_geometry(double ground_distance_km, double altitude_km, bool spherical) {
    if (ground_distance_km < 0 || altitude_km < 0)
        throw std::invalid_argument("negative distance/altitude");
    SlantGeometry g;
    if (!spherical || altitude_km == 0.0) {
        g.slant_km = std::hypot(ground_distance_km, altitude_km);
        g.elevation_deg = ground_distance_km == 0.0
                              ? 90.0
                              : std::atan2(altitude_km, ground_distance_km) * 180.0 / M_PI;
        return g;
    }
    const double re = kEarthRadiusKm;
    const double rs = re + altitude_km;
    const double phi = ground_distance_km / re; // central angle from arc length
    const double slant2 = re * re + rs * rs - 2.0 * re * rs * std::cos(phi);
    g.slant_km = std::sqrt(std::max(slant2, 0.0));
    if (g.slant_km == 0.0) {
        g.elevation_deg = 90.0;
        return g;
    }
    const double sin_elev = (rs * std::cos(phi) - re) / g.slant_km;
    g.elevation_deg = std::asin(std::clamp(sin_elev, -1.0, 1.0)) * 180.0 / M_PI;
    return g;
}

double free_space_path_loss_db(double slant_km, double freq_hz,
                               double excess_loss_db, double extra_los_nlos_db) {
    if (slant_km <= 0.0) throw std::domain_error("free-space path loss needs d > 0");
    if (freq_hz <= 0.0) throw std::domain_error("free-space path loss needs f > 0");
    const double d_m = slant_km * 1000.0;
    return 20.0 * std::log10(d_m) + 20.0 * std::log10(freq_hz) - 147.55 +
           excess_loss_db + extra_los_nlos_db;
}

double ground_path_loss_db(double distance_km, double pl0_db, double exponent) {
    if (distance_km <= 0.0) throw std::domain_error("ground path loss needs d > 0");
    const double d_m = distance_km * 1000.0;
    return pl0_db + 10.0 * exponent * std::log10(d_m);
}

double sample_fading(LinkKind kind, const FadingParams& params, Rng& rng) {
    switch (kind) {
        case LinkKind::GroundToGround:
        case LinkKind::HAPToLEO:
            return 1.0; // interference-dominated / engineered link
        case LinkKind::GroundToUAV:
        case LinkKind::GroundToHAP: {
            // unit-mean squared envelope
            std::gamma_distribution<double> g(params.nakagami_m0, 1.0 / params.nakagami_m0);
            return g(rng);
        }
        case LinkKind::GroundToLEO: {
            // line-of-sight amplitude with gamma-distributed power, plus a
            // circular scatter component of per-dimension variance b0
            std::gamma_distribution<double> g(params.sr_m, params.sr_omega / params.sr_m);
            std::normal_distribution<double> n(0.0, std::sqrt(params.sr_b0));
            const double a = std::sqrt(g(rng));
            const double x = a + n(rng);
            const double y = n(rng);
            return x * x + y * y;
        }
    }
    throw std::invalid_argument("bad link kind");
}

double received_power_dbm(double tx_power_dbm, double tx_gain_db, double rx_gain_db,
                          double path_loss_db, double fading_linear) {
    if (fading_linear < 0.0) throw std::domain_error("negative fading power");
    const double fade_db = fading_linear == 0.0
                               ? -std::numeric_limits<double>::infinity()
                               : 10.0 * std::log10(fading_linear);
    return tx_power_dbm + tx_gain_db + rx_gain_db - path_loss_db + fade_db;
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
    if (bandwidth_hz <= 0.0) throw std::domain_error("bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double snr_db(double received_power_dbm, double bandwidth_hz, double noise_figure_db) {
    return received_power_dbm - noise_floor_dbm(bandwidth_hz, noise_figure_db);
}

double relay_snr_db(const std::vector<double>& leg_snrs_db) {
    if (leg_snrs_db.empty()) throw std::domain_error("relay needs at least one leg");
    double m = leg_snrs_db.front();
    for (double v : leg_snrs_db) m = std::min(m, v);
    return m;
}

} // namespace ntnsim
