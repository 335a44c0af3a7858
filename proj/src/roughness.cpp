#include "roadrough/roughness.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "roadrough/csv.hpp"

namespace roadrough {

IriModel::IriModel(double slope, double intercept) : slope_(slope), intercept_(intercept) {
    if (!(std::isfinite(slope) && slope > 0.0)) {
        throw InvalidInput("IRI model slope must be positive");
    }
    if (!std::isfinite(intercept)) {
        throw InvalidInput("IRI model intercept must be finite");
    }
}

double compute_rms(std::span<const AccelSample> samples, double reference_mps2) {
    if (samples.empty()) {
        throw InvalidInput("no samples");
    }
    double sum_sq = 0.0;
    for (const auto& s : samples) {
        const double d = s.az() - reference_mps2;
        sum_sq += d * d;
    }
    return std::sqrt(sum_sq / static_cast<double>(samples.size()));
}

double mean_vertical(std::span<const AccelSample> samples) {
    if (samples.empty()) {
        throw InvalidInput("no samples");
    }
    double sum = 0.0;
    for (const auto& s : samples) {
        sum += s.az();
    }
    return sum / static_cast<double>(samples.size());
}

double estimate_iri(double rms_mps2, const IriModel& model) {
    if (!(std::isfinite(rms_mps2) && rms_mps2 >= 0.0)) {
        throw InvalidInput("rms must be finite and non-negative");
    }
    return model.slope() * rms_mps2 + model.intercept();
}

namespace {

template <typename ReferenceFn>
RmsTable build_table(std::span<const SectionRun> runs, ReferenceFn&& reference_for) {
    RmsTable table;
    for (const auto& run : runs) {
        if (run.samples().empty()) {
            table.skipped.push_back({run.section_id(), run.run_id()});
            continue;
        }
        table.rows.push_back({run.section_id(), run.run_id(), compute_rms(run.samples(), reference_for(run)),
                              run.samples().size(), run.speed_gate_pass()});
    }
    auto key = [](const auto& r) { return std::tie(r.section_id, r.run_id); };
    std::sort(table.rows.begin(), table.rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::sort(table.skipped.begin(), table.skipped.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return table;
}

}  // namespace

RmsTable section_rms_table(std::span<const SectionRun> runs, double reference_mps2) {
    return build_table(runs, [reference_mps2](const SectionRun&) { return reference_mps2; });
}

RmsTable section_rms_table(std::span<const SectionRun> runs, const std::map<std::string, double>& reference_by_run) {
    return build_table(runs, [&](const SectionRun& run) {
        auto it = reference_by_run.find(run.run_id());
        if (it == reference_by_run.end()) {
            throw InvalidInput("no reference acceleration for run " + run.run_id());
        }
        return it->second;
    });
}

std::vector<WindowRms> windowed_rms(const Trace& trace, double window_s, double reference_mps2) {
    if (!(window_s > 0.0)) {
        throw InvalidInput("window length must be positive");
    }
    const auto window_ms = window_s * 1000.0;
    std::vector<WindowRms> out;
    const auto& accel = trace.accel();
    std::size_t i = 0;
    while (i < accel.size()) {
        const auto k = std::floor(static_cast<double>(accel[i].t_ms()) / window_ms);
        const double end_ms = (k + 1.0) * window_ms;
        std::size_t j = i;
        while (j < accel.size() && static_cast<double>(accel[j].t_ms()) < end_ms) {
            ++j;
        }
        std::span<const AccelSample> window(accel.data() + i, j - i);
        out.push_back({k * window_s, (k + 1.0) * window_s, window.size(), compute_rms(window, reference_mps2)});
        i = j;
    }
    return out;
}

void write_rms_csv(std::ostream& out, const RmsTable& table, const IriModel& model) {
    out << kRmsHeader << '\n';
    for (const auto& row : table.rows) {
        out << csv::escape(row.section_id) << ',' << csv::escape(row.run_id) << ','
            << csv::format_double(row.rms_mps2) << ',' << csv::format_double(estimate_iri(row.rms_mps2, model))
            << '\n';
    }
}

std::vector<RmsCsvRow> parse_rms_csv(std::istream& in) {
    csv::LineReader reader(in);
    csv::require_header(reader, kRmsHeader);
    std::vector<RmsCsvRow> rows;
    std::string line;
    std::size_t row = 0;
    while (reader.next(line)) {
        ++row;
        auto f = csv::split(line);
        if (f.size() != 4) {
            throw ParseError(row, "expected 4 fields, got " + std::to_string(f.size()));
        }
        auto rms = csv::parse_double(f[2]);
        auto iri = csv::parse_double(f[3]);
        if (!rms || *rms < 0.0) {
            throw ParseError(row, "malformed rms_mps2: '" + f[2] + "'");
        }
        if (!iri) {
            throw ParseError(row, "malformed iri_est_mm_per_m: '" + f[3] + "'");
        }
        if (f[0].empty() || f[1].empty()) {
            throw ParseError(row, "empty section_id or run_id");
        }
        rows.push_back({f[0], f[1], *rms, *iri});
    }
    return rows;
}

}  // namespace roadrough
