#include "roadrough/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace roadrough::synth {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double kph_to_mps(double kph) { return kph / 3.6; }

/// Position reached after travelling `s` metres along `route` (vertex to vertex on great circles).
LatLon position_along(const Route& route, const std::vector<double>& bearings, double s) {
    const auto& v = route.vertices();
    std::size_t leg = 0;
    while (leg + 2 < v.size() && route.cumulative_m(leg + 1) <= s) {
        ++leg;
    }
    return destination(v[leg], bearings[leg], s - route.cumulative_m(leg));
}

double initial_bearing_deg(const LatLon& a, const LatLon& b) {
    const double phi1 = a.lat() * kDegToRad, phi2 = b.lat() * kDegToRad;
    const double dl = (b.lon() - a.lon()) * kDegToRad;
    const double y = std::sin(dl) * std::cos(phi2);
    const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dl);
    return std::atan2(y, x) / kDegToRad;
}

}  // namespace

LatLon destination(const LatLon& start, double heading_deg, double distance_m) {
    const double delta = distance_m / 6371000.0;
    const double theta = heading_deg * kDegToRad;
    const double phi1 = start.lat() * kDegToRad;
    const double lambda1 = start.lon() * kDegToRad;
    const double phi2 = std::asin(std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta));
    const double lambda2 = lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                                std::cos(delta) - std::sin(phi1) * std::sin(phi2));
    double lon = lambda2 / kDegToRad;
    lon = std::fmod(lon + 540.0, 360.0) - 180.0;
    return LatLon(phi2 / kDegToRad, lon);
}

Trace gen_sine_trace(const SineTraceSpec& spec) {
    if (spec.cadence_ms <= 0) {
        throw InvalidInput("cadence must be positive");
    }
    const double cadence_s = static_cast<double>(spec.cadence_ms) / 1000.0;
    if (!(spec.freq_hz > 0.0) || spec.freq_hz >= 0.5 / cadence_s) {
        throw InvalidInput("frequency must lie in (0, 0.5/cadence) to avoid aliasing");
    }
    if (spec.duration_s * spec.freq_hz < 10.0) {
        throw InvalidInput("duration must cover at least ten periods");
    }
    if (!(spec.amplitude_mps2 >= 0.0) || !(spec.noise_sd >= 0.0)) {
        throw InvalidInput("amplitude and noise must be non-negative");
    }

    std::mt19937_64 rng(spec.seed);
    const double phase = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    std::normal_distribution<double> noise(0.0, 1.0);

    const auto duration_ms = static_cast<std::int64_t>(std::llround(spec.duration_s * 1000.0));
    const double speed_mps = kph_to_mps(spec.speed_kph);
    std::vector<AccelSample> accel;
    std::vector<GpsSample> gps;
    for (std::int64_t t = 0; t < duration_ms; t += spec.cadence_ms) {
        const double ts = static_cast<double>(t) / 1000.0;
        double az = spec.gravity_mps2 + spec.amplitude_mps2 * std::sin(kTwoPi * spec.freq_hz * ts + phase);
        if (spec.noise_sd > 0.0) {
            az += spec.noise_sd * noise(rng);
        }
        accel.emplace_back(t, 0.0, 0.0, az);
        const bool last = t + spec.cadence_ms >= duration_ms;
        if (t % spec.gps_every_ms == 0 || last) {
            const auto p = destination(spec.start, spec.heading_deg, speed_mps * ts);
            gps.emplace_back(t, p.lat(), p.lon(), spec.speed_kph);
        }
    }
    return Trace(spec.run_id, std::move(accel), std::move(gps), spec.gravity_mps2);
}

Trace gen_two_zone_route(const TwoZoneSpec& spec) {
    if (!(spec.smooth_rms >= 0.0 && spec.smooth_rms < spec.rough_rms)) {
        throw InvalidInput("smooth_rms must be below rough_rms");
    }
    if (!(spec.smooth_start_s < spec.smooth_end_s) || !(spec.rough_start_s < spec.rough_end_s)) {
        throw InvalidInput("zone start must precede zone end");
    }
    if (spec.smooth_start_s < spec.rough_end_s && spec.rough_start_s < spec.smooth_end_s) {
        throw InvalidInput("smooth and rough zones overlap");
    }
    if (spec.smooth_start_s < 0.0 || spec.rough_start_s < 0.0 ||
        std::max(spec.smooth_end_s, spec.rough_end_s) > spec.duration_s) {
        throw InvalidInput("zones must lie inside the trace duration");
    }
    if (spec.cadence_ms <= 0) {
        throw InvalidInput("cadence must be positive");
    }
    const double background = spec.background_rms.value_or(0.5 * (spec.smooth_rms + spec.rough_rms));

    std::mt19937_64 rng(spec.seed);
    const double phase = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    // Four samples per carrier period: any four consecutive samples have mean sin^2 of exactly 1/2.
    const double freq_hz = 1000.0 / (4.0 * static_cast<double>(spec.cadence_ms));

    const auto duration_ms = static_cast<std::int64_t>(std::llround(spec.duration_s * 1000.0));
    const double speed_mps = kph_to_mps(spec.speed_kph);
    std::vector<AccelSample> accel;
    std::vector<GpsSample> gps;
    for (std::int64_t t = 0; t < duration_ms; t += spec.cadence_ms) {
        const double ts = static_cast<double>(t) / 1000.0;
        double level = background;
        if (ts >= spec.smooth_start_s && ts < spec.smooth_end_s) {
            level = spec.smooth_rms;
        } else if (ts >= spec.rough_start_s && ts < spec.rough_end_s) {
            level = spec.rough_rms;
        }
        const double az = spec.gravity_mps2 + std::numbers::sqrt2 * level * std::sin(kTwoPi * freq_hz * ts + phase);
        accel.emplace_back(t, 0.0, 0.0, az);
        if (t % 1000 == 0 || t + spec.cadence_ms >= duration_ms) {
            const auto p = destination(spec.start, spec.heading_deg, speed_mps * ts);
            gps.emplace_back(t, p.lat(), p.lon(), spec.speed_kph);
        }
    }
    return Trace(spec.run_id, std::move(accel), std::move(gps), spec.gravity_mps2);
}

std::vector<RatingRecord> gen_panel(const PanelSpec& spec) {
    if (!spec.rater_bias.empty() && spec.rater_bias.size() != spec.raters) {
        throw InvalidInput("rater_bias needs one entry per rater");
    }
    if (!spec.section_ids.empty() && spec.section_ids.size() != spec.true_rqi.size()) {
        throw InvalidInput("section_ids needs one entry per section");
    }
    if (!spec.run_ids.empty() && spec.run_ids.size() != spec.runs) {
        throw InvalidInput("run_ids needs one entry per run");
    }
    if (!(spec.noise_sd >= 0.0)) {
        throw InvalidInput("noise_sd must be non-negative");
    }
    for (double q : spec.true_rqi) {
        if (!(q >= kRqiMin && q <= kRqiMax)) {
            throw InvalidInput("true RQI must lie in [0, 5]");
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<RatingRecord> out;
    for (std::size_t run = 0; run < spec.runs; ++run) {
        const std::string run_id = spec.run_ids.empty() ? "run" + std::to_string(run + 1) : spec.run_ids[run];
        for (std::size_t s = 0; s < spec.true_rqi.size(); ++s) {
            const std::string section_id =
                spec.section_ids.empty() ? "S" + std::to_string(s + 1) : spec.section_ids[s];
            for (std::size_t r = 0; r < spec.raters; ++r) {
                double v = spec.true_rqi[s] + (spec.rater_bias.empty() ? 0.0 : spec.rater_bias[r]);
                if (spec.noise_sd > 0.0) {
                    v += spec.noise_sd * noise(rng);
                }
                out.emplace_back("r" + std::to_string(r + 1), section_id, run_id, std::clamp(v, kRqiMin, kRqiMax));
            }
        }
    }
    return out;
}

std::vector<DistressRecord> gen_distress(const std::vector<std::string>& section_ids, std::uint64_t seed,
                                         std::size_t max_per_section) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> count(0, max_per_section);
    std::uniform_int_distribution<std::size_t> type(0, std::size(kAllDistressTypes) - 1);
    std::uniform_int_distribution<int> severity(1, 3);
    std::uniform_real_distribution<double> density(0.5, 20.0);
    std::vector<DistressRecord> out;
    for (const auto& id : section_ids) {
        const auto n = count(rng);
        for (std::size_t i = 0; i < n; ++i) {
            const auto t = kAllDistressTypes[type(rng)];
            const auto s = static_cast<Severity>(severity(rng));
            const double d = std::round(density(rng) * 100.0) / 100.0;
            out.emplace_back(id, t, s, d);
        }
    }
    return out;
}

Campaign gen_campaign(const CampaignSpec& spec) {
    if (spec.section_rms.empty()) {
        throw InvalidInput("campaign needs at least one section");
    }
    if (!(spec.section_length_m > 0.0) || !(spec.lead_m >= 0.0) || spec.runs == 0) {
        throw InvalidInput("invalid campaign geometry");
    }
    if (spec.cadence_ms <= 0 || spec.gps_every_ms <= 0) {
        throw InvalidInput("cadence must be positive");
    }
    const double body = spec.section_length_m * static_cast<double>(spec.section_rms.size());
    const double total = body + 2.0 * spec.lead_m;
    const LatLon mid = destination(spec.start, spec.heading_deg, total / 2.0);
    const LatLon end = destination(mid, spec.heading_deg + spec.bend_deg, total / 2.0);
    auto route = std::make_shared<const Route>(std::vector<LatLon>{spec.start, mid, end});
    const std::vector<double> bearings{spec.heading_deg, initial_bearing_deg(mid, end)};

    Campaign campaign;
    campaign.route = route;
    for (std::size_t i = 0; i < spec.section_rms.size(); ++i) {
        const double a = spec.lead_m + spec.section_length_m * static_cast<double>(i);
        campaign.sections.emplace_back("S" + std::to_string(i + 1), route, a, a + spec.section_length_m);
    }

    std::mt19937_64 rng(spec.seed);
    const double freq_hz = 1000.0 / (4.0 * static_cast<double>(spec.cadence_ms));
    const double length = route->length_m();
    for (std::size_t run = 0; run < spec.runs; ++run) {
        const double phase = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
        const double speed_kph =
            spec.speed_kph + std::uniform_real_distribution<double>(-spec.speed_jitter_kph, spec.speed_jitter_kph)(rng);
        const double speed_mps = kph_to_mps(speed_kph);
        std::normal_distribution<double> noise(0.0, 1.0);

        std::vector<AccelSample> accel;
        std::vector<GpsSample> gps;
        for (std::int64_t t = 0;; t += spec.cadence_ms) {
            const double ts = static_cast<double>(t) / 1000.0;
            const double s = speed_mps * ts;
            if (s > length) {
                break;
            }
            double level = spec.background_rms;
            for (std::size_t i = 0; i < campaign.sections.size(); ++i) {
                if (campaign.sections[i].contains(s)) {
                    level = spec.section_rms[i];
                    break;
                }
            }
            double az = spec.gravity_mps2 + std::numbers::sqrt2 * level * std::sin(kTwoPi * freq_hz * ts + phase);
            if (spec.noise_sd > 0.0) {
                az += spec.noise_sd * noise(rng);
            }
            accel.emplace_back(t, 0.0, 0.0, az);
            const bool last = speed_mps * (ts + static_cast<double>(spec.cadence_ms) / 1000.0) > length;
            if (t % spec.gps_every_ms == 0 || last) {
                const auto p = position_along(*route, bearings, s);
                gps.emplace_back(t, p.lat(), p.lon(), speed_kph);
            }
        }
        campaign.traces.emplace_back("run" + std::to_string(run + 1), std::move(accel), std::move(gps),
                                     spec.gravity_mps2);
    }
    return campaign;
}

}  // namespace roadrough::synth
