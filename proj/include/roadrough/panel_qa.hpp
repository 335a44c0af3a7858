#ifndef ROADROUGH_PANEL_QA_HPP
#define ROADROUGH_PANEL_QA_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadrough/core.hpp"

namespace roadrough {

double mean_of(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); needs at least two values.
double sample_sd(std::span<const double> values);

/// Quantile by linear interpolation between order statistics (h = (n-1)p). `sorted` must be ascending.
double quantile_linear(std::span<const double> sorted, double p);

struct BoxplotFences {
    double q1, q3, iqr, lower, upper;
};

BoxplotFences boxplot_fences(std::span<const double> values, double k = 1.5);

/// Ascending indices of values outside [Q1 - k*IQR, Q3 + k*IQR]. Throws on empty input.
std::vector<std::size_t> boxplot_outliers(std::span<const double> values, double k = 1.5);

enum class BiasFlag { None, Leniency, Severity };
std::string_view to_string(BiasFlag f);

struct DeltaRRow {
    std::string rater_id;
    std::size_t n;
    double mean;
    /// Undefined for a rater with a single rating.
    std::optional<double> sd;
    double delta_r;  ///< mean - grand_mean
    int rank;        ///< dense rank of |delta_r|, 1 = largest
    BiasFlag flag;
};

struct DeltaRTable {
    /// Raters in first-appearance order.
    std::vector<DeltaRRow> rows;
    /// Unweighted mean of the rater means.
    double grand_mean;
    /// Sample SD of the rater means; the leniency/severity yardstick.
    double between_rater_sd;
    std::vector<std::string> warnings;
};

inline constexpr double kBiasSdMultiple = 2.0;

/**
 * Leniency/severity analysis. A rater is flagged when |delta_r| exceeds twice
 * the SD of the rater means: positive deviations are leniency, negative ones
 * severity. Needs at least two raters.
 */
DeltaRTable delta_r_table(std::span<const RatingRecord> ratings);

struct RangeRow {
    std::string rater_id;
    std::size_t n;
    double min, max, range;
    bool central_tendency;
};

struct RangeTable {
    std::vector<RangeRow> rows;
    /// Sample SD over every rating (single-rating raters included).
    double pooled_sd;
    std::vector<std::string> warnings;
};

inline constexpr double kCentralTendencySdMultiple = 1.0;

/// Per-rater max - min; ranges below one pooled SD flag a central-tendency effect.
RangeTable rating_ranges(std::span<const RatingRecord> ratings);

struct AnovaRow {
    std::string source;
    double ss;
    std::size_t df;
    double ms;
    /// Empty on error rows and for degenerate results. May be +inf when the error term vanishes.
    std::optional<double> f;
    std::optional<double> p;

    bool significant(double alpha) const { return p && *p < alpha; }
};

struct AnovaResult {
    /// True when the data have no variation at all, so no F ratio exists.
    bool degenerate = false;
    /// Effect rows first, the error ("within" / "residual") row last.
    std::vector<AnovaRow> rows;
    double ss_total = 0.0;
    std::size_t df_total = 0;

    const AnovaRow& row(std::string_view source) const;
};

/// Upper tail P(F > f) of the F(d1, d2) distribution.
double f_upper_tail(double f, double d1, double d2);

/**
 * One-way ANOVA. Rows: "between", "within". Requires at least two non-empty
 * groups and at least one group with two or more values.
 *
 * When every value is identical the result is `degenerate` with no F. If only
 * the effect sum of squares vanishes F = 0 (p = 1); if only the error term
 * vanishes F = +inf (p = 0).
 */
AnovaResult anova_one_way(const std::vector<std::vector<double>>& groups);

/**
 * Two-way ANOVA without replication on a complete rows x columns matrix.
 * Rows: "rows", "columns", "residual". Ragged input raises InvalidInput;
 * there is no imputation.
 */
AnovaResult anova_two_way_no_replication(const std::vector<std::vector<double>>& table);

struct Repeatability {
    std::size_t n;
    double mean;
    double sd;
    /// SD / mean in percent; undefined when the mean is zero.
    std::optional<double> cv_percent;
};

std::optional<double> cv_percent(double sd, double mean);

/// Mean, sample SD and CV of replicate measurements of one section. Needs two or more values.
Repeatability repeatability(std::span<const double> values);

}  // namespace roadrough

#endif
