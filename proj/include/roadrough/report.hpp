#ifndef ROADROUGH_REPORT_HPP
#define ROADROUGH_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "roadrough/config.hpp"
#include "roadrough/correlation.hpp"
#include "roadrough/ingest.hpp"
#include "roadrough/panel_qa.hpp"
#include "roadrough/roughness.hpp"

/// JSON renderings of pipeline results. Non-finite numbers become null.
namespace roadrough::report {

using nlohmann::ordered_json;

ordered_json validation_json(const std::string& file, const Trace& trace, const ValidationReport& report,
                             std::int64_t expected_cadence_ms);

ordered_json delta_r_json(const DeltaRTable& table);
ordered_json ranges_json(const RangeTable& table);
ordered_json anova_json(const std::string& name, const AnovaResult& result, double alpha);

/**
 * Full panel QA battery: leniency/severity, rating ranges, ANOVA on ratings
 * (by section, by rater, sections x raters) and on RMS (sections x runs),
 * repeatability of RQI and RMS per section, and boxplot outliers. Analyses
 * whose preconditions fail are listed under "skipped" with the reason.
 */
ordered_json qa_report(const std::vector<RatingRecord>& ratings, const std::vector<RmsCsvRow>* rms,
                       const Config& config);

ordered_json pairing_json(const Pairing& pairing);
ordered_json fit_report(const CorrelationReport& report, bool per_run);

/// "IRI = 4.19·RMS + 1.73" style label.
std::string equation_label(const std::string& y, const std::string& x, double slope, double intercept);

}  // namespace roadrough::report

#endif
