#include "roadrough/panel_qa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/special_functions/beta.hpp>

namespace roadrough {

double mean_of(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidInput("mean of empty list");
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    const double m = sum / n;
    double residual = 0.0;
    for (double v : values) residual += v - m;
    return m + residual / n;
}

double sample_sd(std::span<const double> values) {
    if (values.size() < 2) {
        throw InvalidInput("standard deviation needs at least two values");
    }
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double quantile_linear(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw InvalidInput("quantile of empty list");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxplotFences boxplot_fences(std::span<const double> values, double k) {
    if (values.empty()) {
        throw InvalidInput("boxplot of empty list");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    BoxplotFences f{};
    f.q1 = quantile_linear(sorted, 0.25);
    f.q3 = quantile_linear(sorted, 0.75);
    f.iqr = f.q3 - f.q1;
    f.lower = f.q1 - k * f.iqr;
    f.upper = f.q3 + k * f.iqr;
    return f;
}

std::vector<std::size_t> boxplot_outliers(std::span<const double> values, double k) {
    const auto fences = boxplot_fences(values, k);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < fences.lower || values[i] > fences.upper) {
            out.push_back(i);
        }
    }
    return out;
}

std::string_view to_string(BiasFlag f) {
    switch (f) {
        case BiasFlag::None: return "none";
        case BiasFlag::Leniency: return "leniency";
        case BiasFlag::Severity: return "severity";
    }
    return "?";
}

namespace {

struct RaterValues {
    std::string rater_id;
    std::vector<double> values;
};

std::vector<RaterValues> group_by_rater(std::span<const RatingRecord> ratings) {
    std::vector<RaterValues> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& r : ratings) {
        auto [it, inserted] = index.emplace(r.rater_id(), groups.size());
        if (inserted) {
            groups.push_back({r.rater_id(), {}});
        }
        groups[it->second].values.push_back(r.rqi());
    }
    return groups;
}

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

DeltaRTable delta_r_table(std::span<const RatingRecord> ratings) {
    const auto groups = group_by_rater(ratings);
    if (groups.size() < 2) {
        throw InvalidInput("leniency/severity analysis needs at least two raters");
    }
    DeltaRTable table{};
    std::vector<double> means;
    for (const auto& g : groups) {
        DeltaRRow row{};
        row.rater_id = g.rater_id;
        row.n = g.values.size();
        row.mean = mean_of(g.values);
        if (row.n >= 2) {
            row.sd = sample_sd(g.values);
        } else {
            table.warnings.push_back("rater " + g.rater_id + " has a single rating; SD undefined");
        }
        means.push_back(row.mean);
        table.rows.push_back(std::move(row));
    }
    table.grand_mean = mean_of(means);
    table.between_rater_sd = sample_sd(means);

    for (auto& row : table.rows) {
        row.delta_r = row.mean - table.grand_mean;
        const double limit = kBiasSdMultiple * table.between_rater_sd;
        if (std::abs(row.delta_r) > limit && !nearly_equal(std::abs(row.delta_r), limit)) {
            row.flag = row.delta_r > 0 ? BiasFlag::Leniency : BiasFlag::Severity;
        } else {
            row.flag = BiasFlag::None;
        }
    }

    std::vector<double> magnitudes;
    for (const auto& row : table.rows) magnitudes.push_back(std::abs(row.delta_r));
    std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
    std::vector<double> distinct;
    for (double m : magnitudes) {
        if (distinct.empty() || !nearly_equal(distinct.back(), m)) distinct.push_back(m);
    }
    for (auto& row : table.rows) {
        const double m = std::abs(row.delta_r);
        auto it = std::find_if(distinct.begin(), distinct.end(), [m](double d) { return nearly_equal(d, m); });
        row.rank = static_cast<int>(it - distinct.begin()) + 1;
    }
    return table;
}

RangeTable rating_ranges(std::span<const RatingRecord> ratings) {
    std::vector<double> all;
    for (const auto& r : ratings) all.push_back(r.rqi());
    if (all.size() < 2) {
        throw InvalidInput("range analysis needs at least two ratings");
    }
    RangeTable table{};
    table.pooled_sd = sample_sd(all);
    for (const auto& g : group_by_rater(ratings)) {
        if (g.values.size() < 2) {
            table.warnings.push_back("rater " + g.rater_id + " excluded: single rating");
            continue;
        }
        const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
        RangeRow row{g.rater_id, g.values.size(), *lo, *hi, *hi - *lo, false};
        row.central_tendency = row.range < kCentralTendencySdMultiple * table.pooled_sd;
        table.rows.push_back(std::move(row));
    }
    return table;
}

const AnovaRow& AnovaResult::row(std::string_view source) const {
    for (const auto& r : rows) {
        if (r.source == source) return r;
    }
    throw InvalidInput("no ANOVA row '" + std::string(source) + "'");
}

double f_upper_tail(double f, double d1, double d2) {
    if (!(d1 > 0.0 && d2 > 0.0)) {
        throw InvalidInput("F distribution degrees of freedom must be positive");
    }
    if (std::isnan(f)) {
        throw InvalidInput("F statistic is NaN");
    }
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    // P(F > f) = I_{d2 / (d2 + d1 f)}(d2/2, d1/2)
    return boost::math::ibeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

namespace {

/// Fills F and p of an effect row against the error row.
void test_effect(AnovaRow& effect, const AnovaRow& error, double ss_total) {
    const double zero_tol = 1e-12 * ss_total;
    if (effect.ss <= zero_tol) {
        effect.f = 0.0;
        effect.p = 1.0;
    } else if (error.ss <= zero_tol) {
        effect.f = std::numeric_limits<double>::infinity();
        effect.p = 0.0;
    } else {
        effect.f = effect.ms / error.ms;
        effect.p = f_upper_tail(*effect.f, static_cast<double>(effect.df), static_cast<double>(error.df));
    }
}

bool no_variation(double ss_total, double sum_sq) { return ss_total <= 1e-24 * std::max(sum_sq, 1e-300); }

}  // namespace

AnovaResult anova_one_way(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) {
        throw InvalidInput("one-way ANOVA needs at least two groups");
    }
    std::size_t n = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) {
            throw InvalidInput("one-way ANOVA group is empty");
        }
        for (double v : g) {
            if (!std::isfinite(v)) throw InvalidInput("ANOVA input must be finite");
            sum += v;
            sum_sq += v * v;
        }
        n += g.size();
    }
    const std::size_t k = groups.size();
    if (n <= k) {
        throw InvalidInput("one-way ANOVA needs a group with at least two values");
    }
    const double grand = sum / static_cast<double>(n);

    double ss_between = 0.0, ss_within = 0.0, ss_total = 0.0;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) {
            ss_within += (v - m) * (v - m);
            ss_total += (v - grand) * (v - grand);
        }
    }

    AnovaResult result;
    result.ss_total = ss_total;
    result.df_total = n - 1;
    AnovaRow between{"between", ss_between, k - 1, ss_between / static_cast<double>(k - 1), {}, {}};
    AnovaRow within{"within", ss_within, n - k, ss_within / static_cast<double>(n - k), {}, {}};
    if (no_variation(ss_total, sum_sq)) {
        result.degenerate = true;
    } else {
        test_effect(between, within, ss_total);
    }
    result.rows = {between, within};
    return result;
}

AnovaResult anova_two_way_no_replication(const std::vector<std::vector<double>>& table) {
    const std::size_t r = table.size();
    if (r < 2) {
        throw InvalidInput("two-way ANOVA needs at least two rows");
    }
    const std::size_t c = table.front().size();
    if (c < 2) {
        throw InvalidInput("two-way ANOVA needs at least two columns");
    }
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        if (table[i].size() != c) {
            throw InvalidInput("two-way ANOVA table has missing cells in row " + std::to_string(i + 1));
        }
        for (double v : table[i]) {
            if (!std::isfinite(v)) throw InvalidInput("two-way ANOVA table has a missing or non-finite cell");
            sum += v;
            sum_sq += v * v;
        }
    }
    const double grand = sum / static_cast<double>(r * c);
    std::vector<double> row_mean(r, 0.0), col_mean(c, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            row_mean[i] += table[i][j];
            col_mean[j] += table[i][j];
        }
    }
    for (auto& m : row_mean) m /= static_cast<double>(c);
    for (auto& m : col_mean) m /= static_cast<double>(r);

    double ss_rows = 0.0, ss_cols = 0.0, ss_resid = 0.0, ss_total = 0.0;
    for (double m : row_mean) ss_rows += static_cast<double>(c) * (m - grand) * (m - grand);
    for (double m : col_mean) ss_cols += static_cast<double>(r) * (m - grand) * (m - grand);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const double e = table[i][j] - row_mean[i] - col_mean[j] + grand;
            ss_resid += e * e;
            ss_total += (table[i][j] - grand) * (table[i][j] - grand);
        }
    }

    const std::size_t df_rows = r - 1, df_cols = c - 1, df_resid = (r - 1) * (c - 1);
    AnovaResult result;
    result.ss_total = ss_total;
    result.df_total = r * c - 1;
    AnovaRow rows{"rows", ss_rows, df_rows, ss_rows / static_cast<double>(df_rows), {}, {}};
    AnovaRow cols{"columns", ss_cols, df_cols, ss_cols / static_cast<double>(df_cols), {}, {}};
    AnovaRow resid{"residual", ss_resid, df_resid, ss_resid / static_cast<double>(df_resid), {}, {}};
    if (no_variation(ss_total, sum_sq)) {
        result.degenerate = true;
    } else {
        test_effect(rows, resid, ss_total);
        test_effect(cols, resid, ss_total);
    }
    result.rows = {rows, cols, resid};
    return result;
}

std::optional<double> cv_percent(double sd, double mean) {
    if (mean == 0.0) {
        return std::nullopt;
    }
    return 100.0 * sd / mean;
}

Repeatability repeatability(std::span<const double> values) {
    if (values.size() < 2) {
        throw InvalidInput("repeatability needs at least two replicate values");
    }
    Repeatability out{};
    out.n = values.size();
    out.mean = mean_of(values);
    out.sd = sample_sd(values);
    out.cv_percent = cv_percent(out.sd, out.mean);
    return out;
}

}  // namespace roadrough
