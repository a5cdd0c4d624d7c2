#pragma once
#include "ntnsim/channel.hpp"
#include "ntnsim/params.hpp"
#include "ntnsim/scenario.hpp"

namespace ntnsim {

struct CoverageResult {
    double max_range_km = 0.0;     // ground distance (arc for HAP/LEO)
    double min_elevation_deg = 90.0;
    double edge_margin_db = 0.0;   // budget margin at max_range
};

// Largest ground distance at which the unit-fading received power still
// clears the technology's lowest sensitivity (SF12 / 128 repetitions /
// the fixed ultra-narrowband threshold).  Binary search, 1 m tolerance.
CoverageResult max_range(const TechnologyProfile& tech, const Platform& platform,
                         const ChannelConfig& channel);

// Number of platforms needed for a service area of radius aoi_radius when one
// platform serves a cell of radius coverage_radius: ceil(aoi/coverage), 1 when
// a single cell already spans the area.
long min_platforms(double aoi_radius_km, double coverage_radius_km);

} // namespace ntnsim
