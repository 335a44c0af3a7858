#include "roadrough/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "roadrough/csv.hpp"

namespace roadrough {

RegressionFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw InvalidInput("x and y lengths differ");
    }
    const std::size_t n = xs.size();
    if (n < 2) {
        throw InvalidInput("regression needs at least two points");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw InvalidInput("regression input must be finite");
        }
    }
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        throw InvalidInput("degenerate x");
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
        return RegressionFit(0.0, ys.front(), std::nullopt, std::nullopt, n);
    }

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (slope * xs[i] + intercept);
        ss_res += e * e;
    }
    const double r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return RegressionFit(slope, intercept, r2, r, n);
}

IriModel fit_iri_model(std::span<const std::pair<double, double>> rms_iri_pairs) {
    if (rms_iri_pairs.size() < 3) {
        throw InvalidInput("IRI model fit needs at least three pairs");
    }
    std::vector<double> xs, ys;
    for (const auto& [rms, iri] : rms_iri_pairs) {
        xs.push_back(rms);
        ys.push_back(iri);
    }
    const auto fit = ols_fit(xs, ys);
    if (!(fit.slope() > 0.0)) {
        throw InvalidInput("non-physical slope: IRI must increase with RMS");
    }
    return IriModel(fit.slope(), fit.intercept());
}

std::map<std::string, double> mean_rms_by_section(std::span<const RmsCsvRow> rms) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& row : rms) {
        auto& [sum, count] = acc[row.section_id];
        sum += row.rms_mps2;
        ++count;
    }
    std::map<std::string, double> out;
    for (const auto& [id, sc] : acc) out[id] = sc.first / static_cast<double>(sc.second);
    return out;
}

std::map<std::string, double> mean_rqi_by_section(std::span<const RatingRecord> ratings) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& r : ratings) {
        auto& [sum, count] = acc[r.section_id()];
        sum += r.rqi();
        ++count;
    }
    std::map<std::string, double> out;
    for (const auto& [id, sc] : acc) out[id] = sc.first / static_cast<double>(sc.second);
    return out;
}

namespace {

Pairing make_pairing(std::string name, std::string y_label, std::vector<Point> points, std::size_t sections) {
    if (sections < kMinCorrelationSections) {
        throw InvalidInput(name + ": only " + std::to_string(sections) +
                           " section(s) in common with the RMS table; need at least 3");
    }
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    auto fit = ols_fit(xs, ys);
    return Pairing{std::move(name), "RMS (m/s^2)", std::move(y_label), fit, std::move(points)};
}

/// Pairs section-level RMS with a per-section index.
Pairing pair_with_sections(std::string name, std::string y_label, const CorrelationInputs& in,
                           const std::map<std::string, double>& index) {
    std::vector<Point> points;
    std::size_t sections = 0;
    if (in.per_run) {
        std::map<std::string, bool> seen;
        for (const auto& row : in.rms) {
            auto it = index.find(row.section_id);
            if (it == index.end()) continue;
            points.push_back({row.section_id + "/" + row.run_id, row.rms_mps2, it->second});
            seen[row.section_id] = true;
        }
        sections = seen.size();
    } else {
        for (const auto& [id, rms] : mean_rms_by_section(in.rms)) {
            auto it = index.find(id);
            if (it == index.end()) continue;
            points.push_back({id, rms, it->second});
        }
        sections = points.size();
    }
    return make_pairing(std::move(name), std::move(y_label), std::move(points), sections);
}

Pairing pair_ratings(const CorrelationInputs& in) {
    if (!in.per_run) {
        return pair_with_sections("rms_rqi", "RQI", in, mean_rqi_by_section(*in.ratings));
    }
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> acc;
    for (const auto& r : *in.ratings) {
        auto& [sum, count] = acc[{r.section_id(), r.run_id()}];
        sum += r.rqi();
        ++count;
    }
    std::vector<Point> points;
    std::map<std::string, bool> seen;
    for (const auto& row : in.rms) {
        auto it = acc.find({row.section_id, row.run_id});
        if (it == acc.end()) continue;
        points.push_back({row.section_id + "/" + row.run_id, row.rms_mps2,
                          it->second.first / static_cast<double>(it->second.second)});
        seen[row.section_id] = true;
    }
    return make_pairing("rms_rqi", "RQI", std::move(points), seen.size());
}

}  // namespace

CorrelationReport correlate_indices(const CorrelationInputs& inputs) {
    CorrelationReport report;
    if (inputs.iri) {
        report.rms_iri = pair_with_sections("rms_iri", "IRI (mm/m)", inputs, *inputs.iri);
    }
    if (inputs.ratings) {
        report.rms_rqi = pair_ratings(inputs);
    }
    if (inputs.pdi) {
        report.rms_pdi = pair_with_sections("rms_pdi", "PDI", inputs, *inputs.pdi);
    }
    return report;
}

std::map<std::string, double> parse_iri_csv(std::istream& in) {
    csv::LineReader reader(in);
    csv::require_header(reader, "section_id,iri_mm_per_m");
    std::map<std::string, std::pair<double, std::size_t>> acc;
    std::string line;
    std::size_t row = 0;
    while (reader.next(line)) {
        ++row;
        auto f = csv::split(line);
        if (f.size() != 2) {
            throw ParseError(row, "expected 2 fields, got " + std::to_string(f.size()));
        }
        auto v = csv::parse_double(f[1]);
        if (!v || *v < 0.0) {
            throw ParseError(row, "malformed iri_mm_per_m: '" + f[1] + "'");
        }
        if (f[0].empty()) {
            throw ParseError(row, "empty section_id");
        }
        auto& [sum, count] = acc[f[0]];
        sum += *v;
        ++count;
    }
    std::map<std::string, double> out;
    for (const auto& [id, sc] : acc) out[id] = sc.first / static_cast<double>(sc.second);
    return out;
}

void write_iri_csv(std::ostream& out, const std::map<std::string, double>& iri) {
    out << "section_id,iri_mm_per_m\n";
    for (const auto& [id, v] : iri) {
        out << csv::escape(id) << ',' << csv::format_double(v) << '\n';
    }
}

}  // namespace roadrough
