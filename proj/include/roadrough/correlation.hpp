#ifndef ROADROUGH_CORRELATION_HPP
#define ROADROUGH_CORRELATION_HPP

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roadrough/core.hpp"
#include "roadrough/roughness.hpp"

namespace roadrough {

/**
 * Ordinary least squares y = slope * x + intercept.
 *
 * Throws InvalidInput("degenerate x") when every x is equal, and for length
 * mismatches or n < 2. A constant response yields slope 0 with r2 and
 * pearson_r left undefined.
 */
RegressionFit ols_fit(std::span<const double> xs, std::span<const double> ys);

/// Re-fits the IRI-from-RMS line from (rms, iri) pairs. Needs n >= 3 and a positive slope.
IriModel fit_iri_model(std::span<const std::pair<double, double>> rms_iri_pairs);

struct Point {
    std::string label;  ///< section id, or "section/run" for per-run fits
    double x;
    double y;
};

struct Pairing {
    std::string name;       ///< "rms_iri", "rms_rqi", "rms_pdi"
    std::string x_label;
    std::string y_label;
    RegressionFit fit;
    std::vector<Point> points;
};

struct CorrelationInputs {
    std::vector<RmsCsvRow> rms;
    /// Reference IRI per section (e.g. profiler output), averaged over repeats.
    std::optional<std::map<std::string, double>> iri;
    /// Panel ratings; aggregated to a mean per section (or per section and run).
    std::optional<std::vector<RatingRecord>> ratings;
    std::optional<std::map<std::string, double>> pdi;
    /// Fit per (section, run) instead of per-section means.
    bool per_run = false;
};

/// Only pairings whose table was supplied are present.
struct CorrelationReport {
    std::optional<Pairing> rms_iri;
    std::optional<Pairing> rms_rqi;
    std::optional<Pairing> rms_pdi;
};

inline constexpr std::size_t kMinCorrelationSections = 3;

/**
 * Regresses each supplied index on RMS using section-level aggregates (mean
 * over runs, mean over raters). Throws InvalidInput when a pairing has fewer
 * than three sections in common with the RMS table.
 */
CorrelationReport correlate_indices(const CorrelationInputs& inputs);

/// Mean RMS per section over all runs.
std::map<std::string, double> mean_rms_by_section(std::span<const RmsCsvRow> rms);
/// Mean RQI per section over all raters and runs.
std::map<std::string, double> mean_rqi_by_section(std::span<const RatingRecord> ratings);

/// `section_id,iri_mm_per_m`; repeated sections are averaged.
std::map<std::string, double> parse_iri_csv(std::istream& in);
void write_iri_csv(std::ostream& out, const std::map<std::string, double>& iri);

}  // namespace roadrough

#endif
