#ifndef ROADROUGH_SEGMENTATION_HPP
#define ROADROUGH_SEGMENTATION_HPP

#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "roadrough/core.hpp"

namespace roadrough {

inline constexpr double kEarthRadiusM = 6371000.0;

/// Great-circle distance on a sphere of radius 6,371 km.
double haversine_m(const LatLon& a, const LatLon& b);

struct ChainagePoint {
    double chainage_m;  ///< arc length to the closest point on the route
    double offset_m;    ///< distance from the point to that projection
};

/**
 * Projects `point` onto the closest route segment. Each segment is handled in a
 * local equirectangular frame, which is accurate for the sub-kilometre segments
 * of an urban route.
 */
ChainagePoint chainage_of(const LatLon& point, const Route& route);

struct SpeedGate {
    double min_kph = 20.0;
    double max_kph = 50.0;

    bool passes(double kph) const { return kph >= min_kph && kph <= max_kph; }
};

struct SegmentationOptions {
    SpeedGate gate;
    double off_route_m = 30.0;
};

struct Segmentation {
    /// One entry per section, in the order the sections were given (empty runs included).
    std::vector<SectionRun> runs;
    /// Samples outside every section, including samples outside the GPS time span.
    std::size_t dropped = 0;
    /// Subset of `dropped` that had no bracketing GPS fixes.
    std::size_t unlocated = 0;
    std::vector<std::string> warnings;
};

/**
 * Assigns each accel sample to the section whose chainage interval contains it.
 * Sample chainage and speed are interpolated linearly in time between the
 * bracketing GPS fixes. The speed gate marks runs, it never removes samples.
 *
 * Every section must share one route. Throws InvalidInput for a trace without
 * GPS, an empty section list, overlapping sections or mixed routes.
 */
Segmentation assign_sections(const Trace& trace, const std::vector<SectionDefinition>& sections,
                             const SegmentationOptions& options = {});

/// `lat,lon` polyline file.
Route parse_route_csv(std::istream& in);
/// `section_id,start_chainage_m,end_chainage_m`; sections must be disjoint.
std::vector<SectionDefinition> parse_sections_csv(std::istream& in, std::shared_ptr<const Route> route);
void write_route_csv(std::ostream& out, const Route& route);
void write_sections_csv(std::ostream& out, const std::vector<SectionDefinition>& sections);

}  // namespace roadrough

#endif
