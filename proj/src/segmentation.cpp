#include "roadrough/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "roadrough/csv.hpp"

namespace roadrough {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

double haversine_m(const LatLon& a, const LatLon& b) {
    const double phi1 = a.lat() * kDegToRad;
    const double phi2 = b.lat() * kDegToRad;
    const double dphi = (b.lat() - a.lat()) * kDegToRad;
    const double dlambda = (b.lon() - a.lon()) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

ChainagePoint chainage_of(const LatLon& point, const Route& route) {
    const auto& v = route.vertices();
    ChainagePoint best{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const LatLon& a = v[i];
        const LatLon& b = v[i + 1];
        const double coslat = std::cos(0.5 * (a.lat() + b.lat()) * kDegToRad);
        const double bx = (b.lon() - a.lon()) * coslat;
        const double by = b.lat() - a.lat();
        const double px = (point.lon() - a.lon()) * coslat;
        const double py = point.lat() - a.lat();
        const double len2 = bx * bx + by * by;
        double t = len2 > 0.0 ? (px * bx + py * by) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);

        const LatLon proj = t == 0.0   ? a
                            : t == 1.0 ? b
                                       : LatLon(lerp(a.lat(), b.lat(), t), lerp(a.lon(), b.lon(), t));
        const double offset = haversine_m(point, proj);
        if (offset < best.offset_m) {
            const double seg_len = route.cumulative_m(i + 1) - route.cumulative_m(i);
            best = {t == 1.0 ? route.cumulative_m(i + 1) : route.cumulative_m(i) + t * seg_len, offset};
        }
    }
    return best;
}

Segmentation assign_sections(const Trace& trace, const std::vector<SectionDefinition>& sections,
                             const SegmentationOptions& options) {
    if (sections.empty()) {
        throw InvalidInput("no sections given");
    }
    if (trace.gps().empty()) {
        throw InvalidInput("trace " + trace.run_id() + " has no GPS samples");
    }
    const Route& route = sections.front().route();
    for (const auto& s : sections) {
        if (s.route_ptr() != sections.front().route_ptr() && !(s.route() == route)) {
            throw InvalidInput("section " + s.section_id() + " uses a different route");
        }
    }
    require_disjoint(sections);

    Segmentation out;
    const auto& gps = trace.gps();
    std::vector<double> fix_chainage;
    fix_chainage.reserve(gps.size());
    for (const auto& fix : gps) {
        const auto cp = chainage_of(fix.position(), route);
        if (cp.offset_m > options.off_route_m) {
            out.warnings.push_back("run " + trace.run_id() + ": gps fix at t_ms=" + std::to_string(fix.t_ms()) +
                                   " is " + csv::format_fixed(cp.offset_m, 1) + " m off route");
        }
        fix_chainage.push_back(cp.chainage_m);
    }

    std::vector<std::vector<AccelSample>> assigned(sections.size());
    std::vector<double> speed_sum(sections.size(), 0.0);

    std::size_t k = 0;  // index of the fix at or before the current sample
    for (const auto& sample : trace.accel()) {
        const auto t = sample.t_ms();
        if (t < gps.front().t_ms() || t > gps.back().t_ms()) {
            ++out.dropped;
            ++out.unlocated;
            continue;
        }
        while (k + 1 < gps.size() && gps[k + 1].t_ms() <= t) {
            ++k;
        }
        double chainage = fix_chainage[k];
        double speed = gps[k].speed_kph();
        if (gps[k].t_ms() != t) {
            const double w = static_cast<double>(t - gps[k].t_ms()) /
                             static_cast<double>(gps[k + 1].t_ms() - gps[k].t_ms());
            chainage = lerp(fix_chainage[k], fix_chainage[k + 1], w);
            speed = lerp(gps[k].speed_kph(), gps[k + 1].speed_kph(), w);
        }

        auto hit = std::find_if(sections.begin(), sections.end(),
                                [chainage](const SectionDefinition& s) { return s.contains(chainage); });
        if (hit == sections.end()) {
            ++out.dropped;
            continue;
        }
        const auto idx = static_cast<std::size_t>(hit - sections.begin());
        assigned[idx].push_back(sample);
        speed_sum[idx] += speed;
    }

    out.runs.reserve(sections.size());
    for (std::size_t i = 0; i < sections.size(); ++i) {
        std::optional<double> mean_speed;
        if (!assigned[i].empty()) {
            mean_speed = speed_sum[i] / static_cast<double>(assigned[i].size());
        }
        const bool pass = mean_speed && options.gate.passes(*mean_speed);
        out.runs.emplace_back(sections[i].section_id(), trace.run_id(), std::move(assigned[i]), mean_speed, pass);
    }
    return out;
}

Route parse_route_csv(std::istream& in) {
    csv::LineReader reader(in);
    csv::require_header(reader, "lat,lon");
    std::vector<LatLon> vertices;
    std::string line;
    std::size_t row = 0;
    while (reader.next(line)) {
        ++row;
        auto f = csv::split(line);
        if (f.size() != 2) {
            throw ParseError(row, "expected 2 fields, got " + std::to_string(f.size()));
        }
        auto lat = csv::parse_double(f[0]);
        auto lon = csv::parse_double(f[1]);
        if (!lat || !lon) {
            throw ParseError(row, "malformed coordinate");
        }
        try {
            vertices.emplace_back(*lat, *lon);
        } catch (const InvalidInput& e) {
            throw ParseError(row, e.what());
        }
    }
    try {
        return Route(std::move(vertices));
    } catch (const InvalidInput& e) {
        throw ParseError(row, e.what());
    }
}

std::vector<SectionDefinition> parse_sections_csv(std::istream& in, std::shared_ptr<const Route> route) {
    csv::LineReader reader(in);
    csv::require_header(reader, "section_id,start_chainage_m,end_chainage_m");
    std::vector<SectionDefinition> sections;
    std::string line;
    std::size_t row = 0;
    while (reader.next(line)) {
        ++row;
        auto f = csv::split(line);
        if (f.size() != 3) {
            throw ParseError(row, "expected 3 fields, got " + std::to_string(f.size()));
        }
        auto start = csv::parse_double(f[1]);
        auto end = csv::parse_double(f[2]);
        if (!start || !end) {
            throw ParseError(row, "malformed chainage");
        }
        try {
            sections.emplace_back(f[0], route, *start, *end);
        } catch (const InvalidInput& e) {
            throw ParseError(row, e.what());
        }
    }
    require_disjoint(sections);
    return sections;
}

void write_route_csv(std::ostream& out, const Route& route) {
    out << "lat,lon\n";
    for (const auto& v : route.vertices()) {
        out << csv::format_double(v.lat()) << ',' << csv::format_double(v.lon()) << '\n';
    }
}

void write_sections_csv(std::ostream& out, const std::vector<SectionDefinition>& sections) {
    out << "section_id,start_chainage_m,end_chainage_m\n";
    for (const auto& s : sections) {
        out << csv::escape(s.section_id()) << ',' << csv::format_double(s.start_chainage_m()) << ','
            << csv::format_double(s.end_chainage_m()) << '\n';
    }
}

}  // namespace roadrough
