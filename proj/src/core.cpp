#include "roadrough/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "roadrough/segmentation.hpp"

namespace roadrough {

namespace {

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : label) {
        if (c == '_' || c == '-') {
            c = ' ';
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    auto first = out.find_first_not_of(' ');
    if (first == std::string::npos) {
        return {};
    }
    auto last = out.find_last_not_of(' ');
    return out.substr(first, last - first + 1);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string(what) + " must be finite");
    }
}

void require_id(const std::string& id, const char* what) {
    if (id.empty()) {
        throw InvalidInput(std::string(what) + " must not be empty");
    }
}

}  // namespace

AccelSample::AccelSample(std::int64_t t_ms, double ax, double ay, double az) : t_ms_(t_ms), ax_(ax), ay_(ay), az_(az) {
    if (t_ms < 0) {
        throw InvalidInput("accel t_ms must be non-negative");
    }
    require_finite(ax, "ax");
    require_finite(ay, "ay");
    require_finite(az, "az");
}

LatLon::LatLon(double lat, double lon) : lat_(lat), lon_(lon) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
        throw InvalidInput("latitude out of range [-90, 90]");
    }
    if (!(lon >= -180.0 && lon <= 180.0)) {
        throw InvalidInput("longitude out of range [-180, 180]");
    }
}

GpsSample::GpsSample(std::int64_t t_ms, double lat, double lon, double speed_kph)
    : t_ms_(t_ms), position_(lat, lon), speed_kph_(speed_kph) {
    if (t_ms < 0) {
        throw InvalidInput("gps t_ms must be non-negative");
    }
    if (!(std::isfinite(speed_kph) && speed_kph >= 0.0)) {
        throw InvalidInput("speed_kph must be finite and non-negative");
    }
}

Trace::Trace(std::string run_id, std::vector<AccelSample> accel, std::vector<GpsSample> gps, double gravity_mps2)
    : run_id_(std::move(run_id)), accel_(std::move(accel)), gps_(std::move(gps)), gravity_mps2_(gravity_mps2) {
    require_id(run_id_, "run_id");
    if (!(std::isfinite(gravity_mps2) && gravity_mps2 > 0.0)) {
        throw InvalidInput("gravity must be finite and positive");
    }
    for (std::size_t i = 1; i < accel_.size(); ++i) {
        if (accel_[i].t_ms() <= accel_[i - 1].t_ms()) {
            throw InvalidInput("accel stream not strictly increasing at t_ms=" + std::to_string(accel_[i].t_ms()));
        }
    }
    for (std::size_t i = 1; i < gps_.size(); ++i) {
        if (gps_[i].t_ms() <= gps_[i - 1].t_ms()) {
            throw InvalidInput("gps stream not strictly increasing at t_ms=" + std::to_string(gps_[i].t_ms()));
        }
    }
}

Route::Route(std::vector<LatLon> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw InvalidInput("route polyline needs at least two vertices");
    }
    cumulative_m_.reserve(vertices_.size());
    cumulative_m_.push_back(0.0);
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        cumulative_m_.push_back(cumulative_m_.back() + haversine_m(vertices_[i - 1], vertices_[i]));
    }
}

SectionDefinition::SectionDefinition(std::string section_id, std::shared_ptr<const Route> route,
                                     double start_chainage_m, double end_chainage_m)
    : section_id_(std::move(section_id)), route_(std::move(route)), start_m_(start_chainage_m), end_m_(end_chainage_m) {
    require_id(section_id_, "section_id");
    if (!route_) {
        throw InvalidInput("section " + section_id_ + " has no route");
    }
    require_finite(start_m_, "start_chainage_m");
    require_finite(end_m_, "end_chainage_m");
    if (!(end_m_ > start_m_)) {
        throw InvalidInput("section " + section_id_ + ": end_chainage_m must exceed start_chainage_m");
    }
}

void require_disjoint(const std::vector<SectionDefinition>& sections) {
    std::vector<const SectionDefinition*> sorted;
    sorted.reserve(sections.size());
    for (const auto& s : sections) {
        sorted.push_back(&s);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->start_chainage_m() < b->start_chainage_m(); });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i]->start_chainage_m() < sorted[i - 1]->end_chainage_m()) {
            throw InvalidInput("sections " + sorted[i - 1]->section_id() + " and " + sorted[i]->section_id() +
                               " overlap");
        }
    }
}

SectionRun::SectionRun(std::string section_id, std::string run_id, std::vector<AccelSample> samples,
                       std::optional<double> mean_speed_kph, bool speed_gate_pass)
    : section_id_(std::move(section_id)),
      run_id_(std::move(run_id)),
      samples_(std::move(samples)),
      mean_speed_kph_(mean_speed_kph),
      speed_gate_pass_(speed_gate_pass) {
    require_id(section_id_, "section_id");
    require_id(run_id_, "run_id");
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (samples_[i].t_ms() <= samples_[i - 1].t_ms()) {
            throw InvalidInput("section run samples out of time order");
        }
    }
}

Severity parse_severity(std::string_view label) {
    const auto norm = normalize_label(label);
    if (norm == "high") return Severity::High;
    if (norm == "moderate") return Severity::Moderate;
    if (norm == "low") return Severity::Low;
    throw InvalidInput("unknown severity '" + std::string(label) + "'");
}

int severity_code(std::string_view label) { return static_cast<int>(parse_severity(label)); }

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Low: return "Low";
        case Severity::Moderate: return "Moderate";
        case Severity::High: return "High";
    }
    return "?";
}

DistressType parse_distress_type(std::string_view label) {
    const auto norm = normalize_label(label);
    if (norm == "longitudinal crack" || norm == "longitude crack") return DistressType::LongitudinalCrack;
    if (norm == "transverse crack") return DistressType::TransverseCrack;
    if (norm == "alligator crack") return DistressType::AlligatorCrack;
    if (norm == "pothole") return DistressType::Pothole;
    if (norm == "patching") return DistressType::Patching;
    if (norm == "corrugation") return DistressType::Corrugation;
    throw InvalidInput("unknown distress type '" + std::string(label) + "'");
}

std::string_view to_string(DistressType t) {
    switch (t) {
        case DistressType::LongitudinalCrack: return "longitudinal crack";
        case DistressType::TransverseCrack: return "transverse crack";
        case DistressType::AlligatorCrack: return "alligator crack";
        case DistressType::Pothole: return "pothole";
        case DistressType::Patching: return "patching";
        case DistressType::Corrugation: return "corrugation";
    }
    return "?";
}

DistressRecord::DistressRecord(std::string section_id, DistressType type, Severity severity, double density)
    : section_id_(std::move(section_id)), type_(type), severity_(severity), density_(density) {
    require_id(section_id_, "section_id");
    require_finite(density, "density");
    if (density < 0.0) {
        throw InvalidInput("negative density");
    }
}

RatingRecord::RatingRecord(std::string rater_id, std::string section_id, std::string run_id, double rqi)
    : rater_id_(std::move(rater_id)), section_id_(std::move(section_id)), run_id_(std::move(run_id)), rqi_(rqi) {
    require_id(rater_id_, "rater_id");
    require_id(section_id_, "section_id");
    require_id(run_id_, "run_id");
    if (!(rqi >= kRqiMin && rqi <= kRqiMax)) {
        throw InvalidInput("rqi out of range [0, 5]");
    }
}

std::string_view rqi_band(double rqi) {
    if (rqi > 4.0) return "Very good";
    if (rqi > 3.0) return "Good";
    if (rqi > 2.0) return "Fair";
    if (rqi > 1.0) return "Poor";
    return "Very poor";
}

RegressionFit::RegressionFit(double slope, double intercept, std::optional<double> r2, std::optional<double> pearson_r,
                             std::size_t n)
    : slope_(slope), intercept_(intercept), r2_(r2), pearson_r_(pearson_r), n_(n) {
    if (n < 2) {
        throw InvalidInput("regression needs at least two points");
    }
    require_finite(slope, "slope");
    require_finite(intercept, "intercept");
    if (r2.has_value() != pearson_r.has_value()) {
        throw InvalidInput("r2 and pearson_r must both be defined or both undefined");
    }
    if (r2) {
        if (!(*r2 >= 0.0 && *r2 <= 1.0)) {
            throw InvalidInput("r2 outside [0, 1]");
        }
        if (!(*pearson_r >= -1.0 && *pearson_r <= 1.0)) {
            throw InvalidInput("pearson_r outside [-1, 1]");
        }
        if (std::abs(*r2 - *pearson_r * *pearson_r) > 1e-9) {
            throw InvalidInput("r2 inconsistent with pearson_r");
        }
    }
}

}  // namespace roadrough
