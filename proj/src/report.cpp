#include "roadrough/report.hpp"

#include <cmath>
#include <map>
#include <set>

#include "roadrough/csv.hpp"

namespace roadrough::report {

namespace {

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

template <typename T>
ordered_json optional_number(const std::optional<T>& v) {
    return v ? number(static_cast<double>(*v)) : ordered_json(nullptr);
}

ordered_json issues(const std::vector<RowIssue>& list) {
    ordered_json out = ordered_json::array();
    for (const auto& i : list) out.push_back({{"row", i.row}, {"message", i.message}});
    return out;
}

ordered_json strings(const std::vector<std::string>& list) {
    ordered_json out = ordered_json::array();
    for (const auto& s : list) out.push_back(s);
    return out;
}

}  // namespace

ordered_json validation_json(const std::string& file, const Trace& trace, const ValidationReport& report,
                             std::int64_t expected_cadence_ms) {
    ordered_json j;
    j["file"] = file;
    j["run_id"] = trace.run_id();
    j["n_accel"] = trace.accel().size();
    j["n_gps"] = trace.gps().size();
    j["expected_cadence_ms"] = expected_cadence_ms;
    j["cadence_ms_observed"] = optional_number(report.cadence_ms_observed);
    j["completeness_ok"] = report.completeness_ok;
    j["errors"] = issues(report.errors);
    j["warnings"] = issues(report.warnings);
    return j;
}

ordered_json delta_r_json(const DeltaRTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"rater_id", r.rater_id},
                        {"n", r.n},
                        {"mean", number(r.mean)},
                        {"sd", optional_number(r.sd)},
                        {"delta_r", number(r.delta_r)},
                        {"rank", r.rank},
                        {"flag", std::string(to_string(r.flag))}});
    }
    return {{"grand_mean", number(table.grand_mean)},
            {"between_rater_sd", number(table.between_rater_sd)},
            {"threshold", number(kBiasSdMultiple * table.between_rater_sd)},
            {"rows", rows},
            {"warnings", strings(table.warnings)}};
}

ordered_json ranges_json(const RangeTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"rater_id", r.rater_id},
                        {"n", r.n},
                        {"min", number(r.min)},
                        {"max", number(r.max)},
                        {"range", number(r.range)},
                        {"central_tendency", r.central_tendency}});
    }
    return {{"pooled_sd", number(table.pooled_sd)},
            {"threshold", number(kCentralTendencySdMultiple * table.pooled_sd)},
            {"rows", rows},
            {"warnings", strings(table.warnings)}};
}

ordered_json anova_json(const std::string& name, const AnovaResult& result, double alpha) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : result.rows) {
        ordered_json row{{"source", r.source}, {"ss", number(r.ss)}, {"df", r.df}, {"ms", number(r.ms)}};
        row["f"] = optional_number(r.f);
        if (r.f && std::isinf(*r.f)) row["f_note"] = "infinite";
        row["p"] = optional_number(r.p);
        row["significant"] = r.significant(alpha);
        rows.push_back(std::move(row));
    }
    return {{"name", name},
            {"degenerate", result.degenerate},
            {"rows", rows},
            {"ss_total", number(result.ss_total)},
            {"df_total", result.df_total}};
}

namespace {

/// Section x column matrix of cell means; nullopt when any cell is missing.
std::optional<std::vector<std::vector<double>>> cell_matrix(
    const std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>>& cells,
    const std::set<std::string>& columns) {
    std::vector<std::vector<double>> m;
    for (const auto& [row, by_col] : cells) {
        std::vector<double> line;
        for (const auto& col : columns) {
            auto it = by_col.find(col);
            if (it == by_col.end()) return std::nullopt;
            line.push_back(it->second.first / static_cast<double>(it->second.second));
        }
        m.push_back(std::move(line));
    }
    return m;
}

ordered_json repeatability_row(const std::string& section, const std::string& index, std::span<const double> values) {
    const auto r = repeatability(values);
    return {{"section_id", section}, {"index", index},     {"n", r.n},
            {"mean", number(r.mean)}, {"sd", number(r.sd)}, {"cv_percent", optional_number(r.cv_percent)}};
}

}  // namespace

ordered_json qa_report(const std::vector<RatingRecord>& ratings, const std::vector<RmsCsvRow>* rms,
                       const Config& config) {
    ordered_json out;
    ordered_json skipped = ordered_json::array();
    auto skip = [&](const std::string& name, const std::string& reason) {
        skipped.push_back({{"analysis", name}, {"reason", reason}});
    };

    out["n_ratings"] = ratings.size();
    out["alpha"] = config.alpha;
    out["boxplot_k"] = config.boxplot_k;

    ordered_json bias_flags = ordered_json::array();
    ordered_json ct_flags = ordered_json::array();
    try {
        const auto table = delta_r_table(ratings);
        out["delta_r"] = delta_r_json(table);
        for (const auto& r : table.rows) {
            if (r.flag != BiasFlag::None) bias_flags.push_back({{"rater_id", r.rater_id}, {"flag", to_string(r.flag)}});
        }
    } catch (const InvalidInput& e) {
        out["delta_r"] = nullptr;
        skip("delta_r", e.what());
    }
    try {
        const auto table = rating_ranges(ratings);
        out["ranges"] = ranges_json(table);
        for (const auto& r : table.rows) {
            if (r.central_tendency) ct_flags.push_back(r.rater_id);
        }
    } catch (const InvalidInput& e) {
        out["ranges"] = nullptr;
        skip("ranges", e.what());
    }

    // Groupings of the ratings.
    std::map<std::string, std::vector<double>> by_section, by_rater;
    std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> section_rater, section_run_rqi;
    std::set<std::string> raters, rating_runs;
    for (const auto& r : ratings) {
        by_section[r.section_id()].push_back(r.rqi());
        by_rater[r.rater_id()].push_back(r.rqi());
        auto& sr = section_rater[r.section_id()][r.rater_id()];
        sr.first += r.rqi();
        ++sr.second;
        auto& rr = section_run_rqi[r.section_id()][r.run_id()];
        rr.first += r.rqi();
        ++rr.second;
        raters.insert(r.rater_id());
        rating_runs.insert(r.run_id());
    }

    ordered_json anova = ordered_json::array();
    auto one_way = [&](const std::string& name, const std::map<std::string, std::vector<double>>& groups) {
        std::vector<std::vector<double>> g;
        for (const auto& [k, v] : groups) g.push_back(v);
        try {
            anova.push_back(anova_json(name, anova_one_way(g), config.alpha));
        } catch (const InvalidInput& e) {
            skip(name, e.what());
        }
    };
    auto two_way = [&](const std::string& name, const std::optional<std::vector<std::vector<double>>>& m) {
        if (!m) {
            skip(name, "incomplete table");
            return;
        }
        try {
            anova.push_back(anova_json(name, anova_two_way_no_replication(*m), config.alpha));
        } catch (const InvalidInput& e) {
            skip(name, e.what());
        }
    };
    one_way("ratings_by_section", by_section);
    one_way("ratings_by_rater", by_rater);
    two_way("ratings_sections_x_raters", cell_matrix(section_rater, raters));

    std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> section_run_rms;
    std::set<std::string> rms_runs;
    if (rms) {
        for (const auto& row : *rms) {
            auto& c = section_run_rms[row.section_id][row.run_id];
            c.first += row.rms_mps2;
            ++c.second;
            rms_runs.insert(row.run_id);
        }
        two_way("rms_sections_x_runs", cell_matrix(section_run_rms, rms_runs));
    }
    out["anova"] = anova;

    ordered_json rep = ordered_json::array();
    auto add_repeatability = [&](const std::string& index,
                                 const std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>>& m) {
        for (const auto& [section, by_run] : m) {
            std::vector<double> values;
            for (const auto& [run, c] : by_run) values.push_back(c.first / static_cast<double>(c.second));
            if (values.size() < 2) {
                skip("repeatability_" + index + "_" + section, "fewer than two runs");
                continue;
            }
            rep.push_back(repeatability_row(section, index, values));
        }
    };
    add_repeatability("rqi", section_run_rqi);
    add_repeatability("rms", section_run_rms);
    out["repeatability"] = rep;

    ordered_json outliers = ordered_json::array();
    std::map<std::string, std::vector<const RatingRecord*>> records_by_section;
    for (const auto& r : ratings) records_by_section[r.section_id()].push_back(&r);
    for (const auto& [section, recs] : records_by_section) {
        std::vector<double> values;
        for (const auto* r : recs) values.push_back(r->rqi());
        for (auto i : boxplot_outliers(values, config.boxplot_k)) {
            outliers.push_back({{"dataset", "rqi"},
                                {"section_id", section},
                                {"rater_id", recs[i]->rater_id()},
                                {"run_id", recs[i]->run_id()},
                                {"value", number(recs[i]->rqi())}});
        }
    }
    if (rms) {
        std::map<std::string, std::vector<const RmsCsvRow*>> rows_by_section;
        for (const auto& r : *rms) rows_by_section[r.section_id].push_back(&r);
        for (const auto& [section, rows] : rows_by_section) {
            std::vector<double> values;
            for (const auto* r : rows) values.push_back(r->rms_mps2);
            for (auto i : boxplot_outliers(values, config.boxplot_k)) {
                outliers.push_back({{"dataset", "rms"},
                                    {"section_id", section},
                                    {"rater_id", nullptr},
                                    {"run_id", rows[i]->run_id},
                                    {"value", number(rows[i]->rms_mps2)}});
            }
        }
    }
    out["outliers"] = outliers;
    out["flags"] = {{"bias", bias_flags}, {"central_tendency", ct_flags}};
    out["skipped"] = skipped;
    return out;
}

std::string equation_label(const std::string& y, const std::string& x, double slope, double intercept) {
    std::string s = y + " = " + csv::format_fixed(slope, 2) + "·" + x;
    const std::string b = csv::format_fixed(std::abs(intercept), 2);
    if (intercept < 0 && b != "0.00") {
        s += " − " + b;
    } else {
        s += " + " + b;
    }
    return s;
}

ordered_json pairing_json(const Pairing& p) {
    ordered_json points = ordered_json::array();
    for (const auto& pt : p.points) points.push_back({{"label", pt.label}, {"x", number(pt.x)}, {"y", number(pt.y)}});
    return {{"name", p.name},
            {"x_label", p.x_label},
            {"y_label", p.y_label},
            {"slope", number(p.fit.slope())},
            {"intercept", number(p.fit.intercept())},
            {"r2", optional_number(p.fit.r2())},
            {"pearson_r", optional_number(p.fit.pearson_r())},
            {"n", p.fit.n()},
            {"points", points}};
}

ordered_json fit_report(const CorrelationReport& report, bool per_run) {
    ordered_json pairings = ordered_json::array();
    for (const auto* p : {&report.rms_iri, &report.rms_rqi, &report.rms_pdi}) {
        if (*p) pairings.push_back(pairing_json(**p));
    }
    return {{"aggregation", per_run ? "section_run" : "section"}, {"pairings", pairings}};
}

}  // namespace roadrough::report
