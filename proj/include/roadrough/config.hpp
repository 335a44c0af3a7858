#ifndef ROADROUGH_CONFIG_HPP
#define ROADROUGH_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>

#include "roadrough/core.hpp"
#include "roadrough/distress.hpp"
#include "roadrough/roughness.hpp"
#include "roadrough/segmentation.hpp"

namespace roadrough {

/// Pipeline settings. Every field has a usable default.
struct Config {
    double gravity_mps2 = kStandardGravity;
    std::int64_t expected_cadence_ms = 500;
    SegmentationOptions segmentation;
    IriModel iri_model;
    WeightTable weights;
    double boxplot_k = 1.5;
    double alpha = 0.05;
};

/**
 * Reads a small TOML subset: `key = value` lines, `# comments`, and the
 * tables `[iri_model]` (slope, intercept) and `[weights]` (distress type =
 * weight; bare keys use '_' for spaces). Top-level keys: gravity_mps2,
 * expected_cadence_ms, speed_min_kph, speed_max_kph, off_route_m, boxplot_k,
 * alpha. Unknown keys and tables are rejected.
 */
Config parse_config(std::istream& in);
Config load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const Config& config);

}  // namespace roadrough

#endif
