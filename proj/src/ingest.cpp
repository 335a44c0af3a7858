#include "roadrough/ingest.hpp"

#include <algorithm>
#include <cmath>

namespace roadrough {

namespace {

double require_number(const std::string& field, const char* name, std::size_t row) {
    auto v = csv::parse_double(field);
    if (!v) {
        throw ParseError(row, std::string("malformed number in ") + name + ": '" + field + "'");
    }
    return *v;
}

template <typename Record, typename RowFn>
ParseOutcome<Record> parse_lenient(std::istream& in, const char* header, std::size_t columns, RowFn&& make) {
    csv::LineReader reader(in);
    csv::require_header(reader, header);
    ParseOutcome<Record> outcome;
    std::string line;
    while (reader.next(line)) {
        const std::size_t row = ++outcome.rows_in;
        auto fields = csv::split(line);
        if (fields.size() != columns) {
            outcome.errors.push_back({row, "expected " + std::to_string(columns) + " fields, got " +
                                               std::to_string(fields.size())});
            continue;
        }
        try {
            outcome.records.push_back(make(fields, row));
        } catch (const ParseError& e) {
            outcome.errors.push_back({row, e.detail()});
        } catch (const InvalidInput& e) {
            outcome.errors.push_back({row, e.what()});
        }
    }
    return outcome;
}

template <typename Record>
std::vector<Record> strict(ParseOutcome<Record> outcome) {
    if (!outcome.errors.empty()) {
        const auto& first = outcome.errors.front();
        throw ParseError(first.row, first.message);
    }
    return std::move(outcome.records);
}

}  // namespace

Trace parse_trace(std::istream& in, std::string run_id, double gravity_mps2) {
    csv::LineReader reader(in);
    csv::require_header(reader, kTraceHeader);

    std::vector<AccelSample> accel;
    std::vector<GpsSample> gps;
    std::string line;
    std::size_t row = 0;
    while (reader.next(line)) {
        ++row;
        auto f = csv::split(line);
        if (f.size() == 4) {
            f.resize(7);
        }
        if (f.size() != 7) {
            throw ParseError(row, "expected 7 fields, got " + std::to_string(f.size()));
        }
        auto t = csv::parse_int(f[0]);
        if (!t || *t < 0) {
            throw ParseError(row, "malformed t_ms: '" + f[0] + "'");
        }
        if (!accel.empty() && *t <= accel.back().t_ms()) {
            throw ParseError(row, (*t == accel.back().t_ms() ? "duplicate t_ms " : "decreasing t_ms ") +
                                      std::to_string(*t));
        }
        const double ax = require_number(f[1], "ax", row);
        const double ay = require_number(f[2], "ay", row);
        const double az = require_number(f[3], "az", row);
        accel.emplace_back(*t, ax, ay, az);

        const bool has_lat = !f[4].empty(), has_lon = !f[5].empty(), has_speed = !f[6].empty();
        if (!has_lat && !has_lon && !has_speed) {
            continue;
        }
        if (!(has_lat && has_lon && has_speed)) {
            throw ParseError(row, "lat, lon and speed_kph must be given together");
        }
        const double lat = require_number(f[4], "lat", row);
        const double lon = require_number(f[5], "lon", row);
        const double speed = require_number(f[6], "speed_kph", row);
        try {
            gps.emplace_back(*t, lat, lon, speed);
        } catch (const InvalidInput& e) {
            throw ParseError(row, e.what());
        }
    }
    return Trace(std::move(run_id), std::move(accel), std::move(gps), gravity_mps2);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << kTraceHeader << '\n';
    auto fix = trace.gps().begin();
    for (const auto& s : trace.accel()) {
        out << s.t_ms() << ',' << csv::format_double(s.ax()) << ',' << csv::format_double(s.ay()) << ','
            << csv::format_double(s.az()) << ',';
        if (fix != trace.gps().end() && fix->t_ms() < s.t_ms()) {
            throw InvalidInput("gps fix at t_ms=" + std::to_string(fix->t_ms()) + " has no accel row");
        }
        if (fix != trace.gps().end() && fix->t_ms() == s.t_ms()) {
            out << csv::format_double(fix->lat()) << ',' << csv::format_double(fix->lon()) << ','
                << csv::format_double(fix->speed_kph());
            ++fix;
        } else {
            out << ",,";
        }
        out << '\n';
    }
    if (fix != trace.gps().end()) {
        throw InvalidInput("gps fix at t_ms=" + std::to_string(fix->t_ms()) + " has no accel row");
    }
}

ParseOutcome<DistressRecord> parse_distress_csv_lenient(std::istream& in) {
    return parse_lenient<DistressRecord>(
        in, kDistressHeader, 4, [](const std::vector<std::string>& f, std::size_t row) {
            const auto type = parse_distress_type(f[1]);
            const auto severity = parse_severity(f[2]);
            const double density = require_number(f[3], "density", row);
            if (density < 0.0) {
                throw ParseError(row, "negative density");
            }
            return DistressRecord(f[0], type, severity, density);
        });
}

std::vector<DistressRecord> parse_distress_csv(std::istream& in) { return strict(parse_distress_csv_lenient(in)); }

void write_distress_csv(std::ostream& out, const std::vector<DistressRecord>& records) {
    out << kDistressHeader << '\n';
    for (const auto& r : records) {
        out << csv::escape(r.section_id()) << ',' << to_string(r.distress_type()) << ',' << to_string(r.severity())
            << ',' << csv::format_double(r.density()) << '\n';
    }
}

ParseOutcome<RatingRecord> parse_rating_csv_lenient(std::istream& in) {
    return parse_lenient<RatingRecord>(in, kRatingHeader, 4,
                                       [](const std::vector<std::string>& f, std::size_t row) {
                                           const double rqi = require_number(f[3], "rqi", row);
                                           if (!(rqi >= kRqiMin && rqi <= kRqiMax)) {
                                               throw ParseError(row, "rqi out of range [0, 5]");
                                           }
                                           return RatingRecord(f[0], f[1], f[2], rqi);
                                       });
}

std::vector<RatingRecord> parse_rating_csv(std::istream& in) { return strict(parse_rating_csv_lenient(in)); }

void write_rating_csv(std::ostream& out, const std::vector<RatingRecord>& records) {
    out << kRatingHeader << '\n';
    for (const auto& r : records) {
        out << csv::escape(r.rater_id()) << ',' << csv::escape(r.section_id()) << ',' << csv::escape(r.run_id())
            << ',' << csv::format_double(r.rqi()) << '\n';
    }
}

ValidationReport validate_trace(const Trace& trace, std::int64_t expected_cadence_ms) {
    if (expected_cadence_ms <= 0) {
        throw InvalidInput("expected cadence must be positive");
    }
    ValidationReport report;
    const auto& accel = trace.accel();
    if (accel.empty()) {
        report.errors.push_back({0, "empty accel stream"});
    }

    std::vector<double> gaps;
    for (std::size_t i = 1; i < accel.size(); ++i) {
        const auto gap = accel[i].t_ms() - accel[i - 1].t_ms();
        gaps.push_back(static_cast<double>(gap));
        if (static_cast<double>(gap) > kGapErrorMultiple * static_cast<double>(expected_cadence_ms)) {
            report.errors.push_back({i + 1, "gap of " + std::to_string(gap) + " ms between t_ms=" +
                                                std::to_string(accel[i - 1].t_ms()) + " and t_ms=" +
                                                std::to_string(accel[i].t_ms())});
        }
    }

    if (!gaps.empty()) {
        std::sort(gaps.begin(), gaps.end());
        const std::size_t m = gaps.size() / 2;
        const double median = gaps.size() % 2 == 1 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
        report.cadence_ms_observed = median;
        const double deviation = std::abs(median / static_cast<double>(expected_cadence_ms) - 1.0);
        if (deviation > kCadenceWarnFraction) {
            report.warnings.push_back(
                {0, "median cadence " + csv::format_double(median) + " ms deviates " +
                        csv::format_fixed(100.0 * deviation, 1) + "% from expected " +
                        std::to_string(expected_cadence_ms) + " ms"});
        }
    }

    report.completeness_ok = report.errors.empty();
    return report;
}

}  // namespace roadrough
