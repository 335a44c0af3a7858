#ifndef ROADROUGH_DISTRESS_HPP
#define ROADROUGH_DISTRESS_HPP

#include <map>
#include <ostream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadrough/core.hpp"

namespace roadrough {

/**
 * Distress weights W_i. The defaults are the six-type expert weighting
 * (cracks 2, alligator cracking and potholes 3, patching 1, corrugation 1.5).
 * A table may be re-weighted or trimmed; weights must stay positive.
 */
class WeightTable {
public:
    /// Default weights for all six distress types.
    WeightTable();
    explicit WeightTable(std::map<DistressType, double> weights);

    std::optional<double> weight(DistressType type) const;
    /// Replaces or adds one weight.
    void set(DistressType type, double weight);
    const std::map<DistressType, double>& weights() const { return weights_; }

private:
    std::map<DistressType, double> weights_;
};

/**
 * Pavement Distress Index per section:
 *
 *     PDI = sum_i W_i * (S_i * d_i)
 *
 * with S_i the severity code (Low 1, Moderate 2, High 3) and d_i the density
 * exactly as surveyed (metres for cracks, square metres for area distresses).
 * Every id in `sections` appears in the result, at 0 when it has no records;
 * sections that only occur in `records` are included too.
 */
std::map<std::string, double> compute_pdi(std::span<const DistressRecord> records, const WeightTable& weights = {},
                                          std::span<const std::string> sections = {});

void write_pdi_csv(std::ostream& out, const std::map<std::string, double>& pdi);
std::map<std::string, double> parse_pdi_csv(std::istream& in);

}  // namespace roadrough

#endif
