#pragma once
#include <vector>

#include "ntnsim/params.hpp"
#include "ntnsim/rng.hpp"

namespace ntnsim {

enum class LinkKind { GroundToGround, GroundToUAV, GroundToHAP, GroundToLEO, HAPToLEO };

LinkKind device_link_kind(PlatformKind k);

struct SlantGeometry {
    double slant_km = 0.0;
    double elevation_deg = 90.0;
};

inline constexpr double kEarthRadiusKm = 6371.0;

// ground_distance is the horizontal (flat mode) or great-circle arc
// (spherical mode) distance between the ground point and the sub-platform point.
SlantGeometry slant_geometry(double ground_distance_km, double altitude_km, bool spherical);

// 20log10(d_m) + 20log10(f_Hz) - 147.55, plus a configurable excess-loss term
// (atmospheric/calibration) and the LOS or NLOS additional loss.
double free_space_path_loss_db(double slant_km, double freq_hz,
                               double excess_loss_db = 0.0,
                               double extra_los_nlos_db = 0.0);

// Log-distance model PL = pl0 + 10*n*log10(d/1m); defaults n=3.76, pl0=7.7 dB.
double ground_path_loss_db(double distance_km, double pl0_db = 7.7, double exponent = 3.76);

double sample_fading(LinkKind kind, const FadingParams& params, Rng& rng);

double received_power_dbm(double tx_power_dbm, double tx_gain_db, double rx_gain_db,
                          double path_loss_db, double fading_linear);

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);
double snr_db(double received_power_dbm, double bandwidth_hz, double noise_figure_db);

// Decode-and-forward end-to-end SNR: the minimum over the legs.
double relay_snr_db(const std::vector<double>& leg_snrs_db);

} // namespace ntnsim
