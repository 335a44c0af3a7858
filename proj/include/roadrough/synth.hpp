#ifndef ROADROUGH_SYNTH_HPP
#define ROADROUGH_SYNTH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "roadrough/core.hpp"

/**
 * @file synth.hpp
 *
 * @brief Seeded generators with analytically known ground truth.
 *
 * Vertical acceleration is a sinusoid about g, optionally with Gaussian noise,
 * so the RMS of a clean signal is amplitude / sqrt(2). GPS fixes follow the
 * route at constant speed and always coincide with an accel timestamp, which
 * keeps the generated traces writable as trace CSV. All generators are
 * deterministic for a fixed seed.
 */

namespace roadrough::synth {

/// Point reached from `start` after `distance_m` along initial bearing `heading_deg` on the sphere.
LatLon destination(const LatLon& start, double heading_deg, double distance_m);

struct SineTraceSpec {
    std::string run_id = "synthetic";
    double amplitude_mps2 = 0.0;
    double freq_hz = 0.7;
    double duration_s = 300.0;
    std::int64_t cadence_ms = 500;
    double gravity_mps2 = kStandardGravity;
    std::uint64_t seed = 0;
    double noise_sd = 0.0;
    double speed_kph = 36.0;
    LatLon start{35.70, 51.40};
    double heading_deg = 90.0;
    std::int64_t gps_every_ms = 1000;
};

/**
 * az = g + A sin(2 pi f t + phase(seed)) [+ noise]. Requires f below the
 * Nyquist limit 0.5 / cadence and at least ten periods of signal.
 */
Trace gen_sine_trace(const SineTraceSpec& spec);

struct TwoZoneSpec {
    std::string run_id = "two-zone";
    double smooth_rms = 0.2;
    double rough_rms = 1.0;
    double smooth_start_s = 10.0;
    double smooth_end_s = 70.0;
    double rough_start_s = 120.0;
    double rough_end_s = 200.0;
    double duration_s = 210.0;
    /// RMS outside both zones; defaults to the midpoint of the two levels.
    std::optional<double> background_rms;
    std::int64_t cadence_ms = 500;
    double gravity_mps2 = kStandardGravity;
    std::uint64_t seed = 0;
    double speed_kph = 36.0;
    LatLon start{35.70, 51.40};
    double heading_deg = 90.0;
};

/**
 * A low-variance zone followed by (or preceded by) a high-variance zone. The
 * carrier has exactly four samples per period, so every window covering whole
 * periods inside a zone has RMS equal to that zone's level.
 */
Trace gen_two_zone_route(const TwoZoneSpec& spec);

struct PanelSpec {
    std::vector<double> true_rqi;  ///< one entry per section
    std::size_t raters = 11;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
    /// Additive per-rater bias; empty means none. Otherwise one entry per rater.
    std::vector<double> rater_bias;
    std::size_t runs = 1;
    /// Defaults to S1..Sn.
    std::vector<std::string> section_ids;
    /// Defaults to run1..runN.
    std::vector<std::string> run_ids;
};

/// clamp(true + bias + N(0, noise_sd), 0, 5) for every run, section and rater ("r1".."rN").
std::vector<RatingRecord> gen_panel(const PanelSpec& spec);

/// Random distress survey: up to `max_per_section` records per section, densities in [0.5, 20).
std::vector<DistressRecord> gen_distress(const std::vector<std::string>& section_ids, std::uint64_t seed,
                                         std::size_t max_per_section = 4);

struct CampaignSpec {
    /// Target RMS per section; the section count follows from this.
    std::vector<double> section_rms{0.3, 0.5, 0.7, 0.9, 1.1};
    double section_length_m = 200.0;
    double lead_m = 60.0;  ///< route length before the first and after the last section
    double background_rms = 0.2;
    std::size_t runs = 5;
    double speed_kph = 36.0;
    double speed_jitter_kph = 4.0;  ///< per-run uniform jitter on the speed
    double noise_sd = 0.05;
    std::int64_t cadence_ms = 500;
    std::int64_t gps_every_ms = 1000;
    double gravity_mps2 = kStandardGravity;
    std::uint64_t seed = 42;
    LatLon start{35.70, 51.40};
    double heading_deg = 80.0;
    /// Heading change at the route midpoint, so the route has a bend.
    double bend_deg = 25.0;
};

struct Campaign {
    std::shared_ptr<const Route> route;
    std::vector<SectionDefinition> sections;  ///< S1..Sn
    std::vector<Trace> traces;                ///< run1..runN
};

/// Repeated drives over one route with a known roughness level per section.
Campaign gen_campaign(const CampaignSpec& spec);

}  // namespace roadrough::synth

#endif
