#ifndef ROADROUGH_ROUGHNESS_HPP
#define ROADROUGH_ROUGHNESS_HPP

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "roadrough/core.hpp"

namespace roadrough {

/**
 * Linear IRI estimate from RMS vertical acceleration:
 *
 *     IRI [mm/m] = slope * RMS [m/s^2] + intercept
 *
 * The defaults are the site-fitted Tehran coefficients; `fit_iri_model` in
 * correlation.hpp re-fits them from paired data.
 */
class IriModel {
public:
    static constexpr double kDefaultSlope = 4.19;
    static constexpr double kDefaultIntercept = 1.73;

    IriModel() = default;
    IriModel(double slope, double intercept);

    double slope() const { return slope_; }
    double intercept() const { return intercept_; }

private:
    double slope_ = kDefaultSlope;
    double intercept_ = kDefaultIntercept;
};

/**
 * Root mean square of vertical acceleration about `reference_mps2`:
 *
 *     RMS = sqrt( (1/N) * sum_i (az_i - reference)^2 )
 *
 * `reference_mps2` is normally the trace's gravity constant; pass the run's
 * mean az (see `mean_vertical`) for mean subtraction. The published form of
 * this formula drops the square inside the sum; that reading would take the
 * root of a signed quantity, so the squared form is used.
 *
 * No detrending or filtering is applied. Throws InvalidInput("no samples") on
 * an empty span.
 */
double compute_rms(std::span<const AccelSample> samples, double reference_mps2);

/// Mean of az over a non-empty sample list.
double mean_vertical(std::span<const AccelSample> samples);

/// Throws InvalidInput for negative or non-finite rms.
double estimate_iri(double rms_mps2, const IriModel& model = {});

struct RmsRow {
    std::string section_id;
    std::string run_id;
    double rms_mps2;
    std::size_t n_samples;
    bool speed_gate_pass;
};

struct SkippedRun {
    std::string section_id;
    std::string run_id;
};

struct RmsTable {
    /// Sorted by (section_id, run_id).
    std::vector<RmsRow> rows;
    std::vector<SkippedRun> skipped;
};

/// One row per non-empty section run, all about the same reference (normally g).
RmsTable section_rms_table(std::span<const SectionRun> runs, double reference_mps2);

/// Per-run references, e.g. each run's mean az. Missing run ids raise InvalidInput.
RmsTable section_rms_table(std::span<const SectionRun> runs, const std::map<std::string, double>& reference_by_run);

struct WindowRms {
    double start_s;
    double end_s;
    std::size_t n_samples;
    double rms_mps2;
};

/// RMS over consecutive fixed-length time windows [k*w, (k+1)*w); empty windows are skipped.
std::vector<WindowRms> windowed_rms(const Trace& trace, double window_s, double reference_mps2);

inline constexpr const char* kRmsHeader = "section_id,run_id,rms_mps2,iri_est_mm_per_m";

void write_rms_csv(std::ostream& out, const RmsTable& table, const IriModel& model = {});

struct RmsCsvRow {
    std::string section_id;
    std::string run_id;
    double rms_mps2;
    double iri_est_mm_per_m;
};

std::vector<RmsCsvRow> parse_rms_csv(std::istream& in);

}  // namespace roadrough

#endif
