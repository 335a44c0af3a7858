#ifndef ROADROUGH_INGEST_HPP
#define ROADROUGH_INGEST_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "roadrough/core.hpp"
#include "roadrough/csv.hpp"

namespace roadrough {

inline constexpr const char* kTraceHeader = "t_ms,ax,ay,az,lat,lon,speed_kph";
inline constexpr const char* kDistressHeader = "section_id,distress_type,severity,density";
inline constexpr const char* kRatingHeader = "rater_id,section_id,run_id,rqi";

struct RowIssue {
    std::size_t row;
    std::string message;
};

/**
 * Result of a lenient parse: every data row is either a record or an error,
 * so `rows_in == records.size() + errors.size()` always holds.
 */
template <typename Record>
struct ParseOutcome {
    std::vector<Record> records;
    std::vector<RowIssue> errors;
    std::size_t rows_in = 0;
};

/// Strict trace parse: the first bad row raises ParseError. A header-only file yields an empty trace.
Trace parse_trace(std::istream& in, std::string run_id, double gravity_mps2 = kStandardGravity);
void write_trace_csv(std::ostream& out, const Trace& trace);

ParseOutcome<DistressRecord> parse_distress_csv_lenient(std::istream& in);
std::vector<DistressRecord> parse_distress_csv(std::istream& in);
void write_distress_csv(std::ostream& out, const std::vector<DistressRecord>& records);

ParseOutcome<RatingRecord> parse_rating_csv_lenient(std::istream& in);
std::vector<RatingRecord> parse_rating_csv(std::istream& in);
void write_rating_csv(std::ostream& out, const std::vector<RatingRecord>& records);

struct ValidationReport {
    std::vector<RowIssue> errors;
    std::vector<RowIssue> warnings;
    /// Median inter-sample gap; empty with fewer than two samples.
    std::optional<double> cadence_ms_observed;
    bool completeness_ok = false;
};

inline constexpr double kCadenceWarnFraction = 0.20;
inline constexpr double kGapErrorMultiple = 3.0;

/**
 * Completeness/consistency checks on one parsed trace.
 *
 * - empty accel stream: error
 * - any gap larger than 3x the expected cadence: error naming the interval
 * - median gap deviating more than 20% from the expected cadence: warning
 *
 * Row numbers refer to the accel sample that ends the offending interval (1-based).
 */
ValidationReport validate_trace(const Trace& trace, std::int64_t expected_cadence_ms);

}  // namespace roadrough

#endif
