#ifndef ROADROUGH_CORE_HPP
#define ROADROUGH_CORE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/**
 * @file core.hpp
 *
 * @brief Domain types shared by every stage of the roughness pipeline.
 *
 * All types validate their invariants in the constructor and are immutable
 * afterwards, so they can be shared freely across threads.
 */

namespace roadrough {

/// Raised when a value or record violates a domain invariant.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kStandardGravity = 9.80665;

/**
 * One accelerometer reading. `t_ms` counts milliseconds since the run started;
 * the phone is assumed dash-mounted with z pointing up, so `az` carries gravity.
 */
class AccelSample {
public:
    AccelSample(std::int64_t t_ms, double ax, double ay, double az);

    std::int64_t t_ms() const { return t_ms_; }
    double ax() const { return ax_; }
    double ay() const { return ay_; }
    double az() const { return az_; }

    friend bool operator==(const AccelSample&, const AccelSample&) = default;

private:
    std::int64_t t_ms_;
    double ax_, ay_, az_;
};

/// WGS-84 position in degrees.
class LatLon {
public:
    LatLon(double lat, double lon);

    double lat() const { return lat_; }
    double lon() const { return lon_; }

    friend bool operator==(const LatLon&, const LatLon&) = default;

private:
    double lat_, lon_;
};

class GpsSample {
public:
    GpsSample(std::int64_t t_ms, double lat, double lon, double speed_kph);

    std::int64_t t_ms() const { return t_ms_; }
    LatLon position() const { return position_; }
    double lat() const { return position_.lat(); }
    double lon() const { return position_.lon(); }
    double speed_kph() const { return speed_kph_; }

    friend bool operator==(const GpsSample&, const GpsSample&) = default;

private:
    std::int64_t t_ms_;
    LatLon position_;
    double speed_kph_;
};

/**
 * The accelerometer and GPS streams of one run. Both streams must be strictly
 * increasing in time. An empty accel stream is a valid container; the
 * roughness operations reject it later.
 */
class Trace {
public:
    Trace(std::string run_id, std::vector<AccelSample> accel, std::vector<GpsSample> gps,
          double gravity_mps2 = kStandardGravity);

    const std::string& run_id() const { return run_id_; }
    const std::vector<AccelSample>& accel() const { return accel_; }
    const std::vector<GpsSample>& gps() const { return gps_; }
    double gravity_mps2() const { return gravity_mps2_; }

    friend bool operator==(const Trace&, const Trace&) = default;

private:
    std::string run_id_;
    std::vector<AccelSample> accel_;
    std::vector<GpsSample> gps_;
    double gravity_mps2_;
};

/**
 * Route polyline with cached cumulative arc length (haversine metres).
 * Needs at least two vertices.
 */
class Route {
public:
    explicit Route(std::vector<LatLon> vertices);

    const std::vector<LatLon>& vertices() const { return vertices_; }
    /// Arc length from the first vertex to vertex `i`.
    double cumulative_m(std::size_t i) const { return cumulative_m_[i]; }
    double length_m() const { return cumulative_m_.back(); }

    friend bool operator==(const Route& a, const Route& b) { return a.vertices_ == b.vertices_; }

private:
    std::vector<LatLon> vertices_;
    std::vector<double> cumulative_m_;
};

/// A road section expressed as a chainage interval [start, end) along a shared route.
class SectionDefinition {
public:
    SectionDefinition(std::string section_id, std::shared_ptr<const Route> route, double start_chainage_m,
                      double end_chainage_m);

    const std::string& section_id() const { return section_id_; }
    const Route& route() const { return *route_; }
    const std::shared_ptr<const Route>& route_ptr() const { return route_; }
    double start_chainage_m() const { return start_m_; }
    double end_chainage_m() const { return end_m_; }
    bool contains(double chainage_m) const { return chainage_m >= start_m_ && chainage_m < end_m_; }

private:
    std::string section_id_;
    std::shared_ptr<const Route> route_;
    double start_m_, end_m_;
};

/// Throws InvalidInput if any two chainage intervals overlap.
void require_disjoint(const std::vector<SectionDefinition>& sections);

/// The samples of one run that fall inside one section.
class SectionRun {
public:
    SectionRun(std::string section_id, std::string run_id, std::vector<AccelSample> samples,
               std::optional<double> mean_speed_kph, bool speed_gate_pass);

    const std::string& section_id() const { return section_id_; }
    const std::string& run_id() const { return run_id_; }
    const std::vector<AccelSample>& samples() const { return samples_; }
    /// Empty when the section received no samples.
    std::optional<double> mean_speed_kph() const { return mean_speed_kph_; }
    bool speed_gate_pass() const { return speed_gate_pass_; }

private:
    std::string section_id_;
    std::string run_id_;
    std::vector<AccelSample> samples_;
    std::optional<double> mean_speed_kph_;
    bool speed_gate_pass_;
};

enum class Severity { Low = 1, Moderate = 2, High = 3 };

/// High = 3, Moderate = 2, Low = 1. Unknown labels raise InvalidInput.
int severity_code(std::string_view label);
Severity parse_severity(std::string_view label);
std::string_view to_string(Severity s);

enum class DistressType { LongitudinalCrack, TransverseCrack, AlligatorCrack, Pothole, Patching, Corrugation };

inline constexpr DistressType kAllDistressTypes[] = {
    DistressType::LongitudinalCrack, DistressType::TransverseCrack, DistressType::AlligatorCrack,
    DistressType::Pothole,           DistressType::Patching,        DistressType::Corrugation,
};

/// Case-insensitive; '_' and '-' are treated as spaces. "longitude crack" is accepted as an alias.
DistressType parse_distress_type(std::string_view label);
std::string_view to_string(DistressType t);

class DistressRecord {
public:
    DistressRecord(std::string section_id, DistressType type, Severity severity, double density);

    const std::string& section_id() const { return section_id_; }
    DistressType distress_type() const { return type_; }
    Severity severity() const { return severity_; }
    /// Metres for cracks, square metres for area distresses; summed as-is.
    double density() const { return density_; }

    friend bool operator==(const DistressRecord&, const DistressRecord&) = default;

private:
    std::string section_id_;
    DistressType type_;
    Severity severity_;
    double density_;
};

inline constexpr double kRqiMin = 0.0;
inline constexpr double kRqiMax = 5.0;

class RatingRecord {
public:
    RatingRecord(std::string rater_id, std::string section_id, std::string run_id, double rqi);

    const std::string& rater_id() const { return rater_id_; }
    const std::string& section_id() const { return section_id_; }
    const std::string& run_id() const { return run_id_; }
    double rqi() const { return rqi_; }

    friend bool operator==(const RatingRecord&, const RatingRecord&) = default;

private:
    std::string rater_id_, section_id_, run_id_;
    double rqi_;
};

/// Verbal band of the ride quality scale ("Very good" .. "Very poor").
std::string_view rqi_band(double rqi);

/**
 * Simple linear regression summary. `r2` and `pearson_r` are empty when the
 * response has zero variance; otherwise r2 == pearson_r^2.
 */
class RegressionFit {
public:
    RegressionFit(double slope, double intercept, std::optional<double> r2, std::optional<double> pearson_r,
                  std::size_t n);

    double slope() const { return slope_; }
    double intercept() const { return intercept_; }
    std::optional<double> r2() const { return r2_; }
    std::optional<double> pearson_r() const { return pearson_r_; }
    std::size_t n() const { return n_; }
    double predict(double x) const { return slope_ * x + intercept_; }

private:
    double slope_, intercept_;
    std::optional<double> r2_, pearson_r_;
    std::size_t n_;
};

}  // namespace roadrough

#endif
