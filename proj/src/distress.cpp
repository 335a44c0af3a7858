#include "roadrough/distress.hpp"

#include <cmath>

#include "roadrough/csv.hpp"

namespace roadrough {

namespace {

void require_weight(double w) {
    if (!(std::isfinite(w) && w > 0.0)) {
        throw InvalidInput("distress weights must be positive");
    }
}

}  // namespace

WeightTable::WeightTable()
    : weights_{
          {DistressType::LongitudinalCrack, 2.0}, {DistressType::TransverseCrack, 2.0},
          {DistressType::AlligatorCrack, 3.0},    {DistressType::Pothole, 3.0},
          {DistressType::Patching, 1.0},          {DistressType::Corrugation, 1.5},
      } {}

WeightTable::WeightTable(std::map<DistressType, double> weights) : weights_(std::move(weights)) {
    for (const auto& [type, w] : weights_) {
        require_weight(w);
    }
}

std::optional<double> WeightTable::weight(DistressType type) const {
    auto it = weights_.find(type);
    if (it == weights_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void WeightTable::set(DistressType type, double weight) {
    require_weight(weight);
    weights_[type] = weight;
}

std::map<std::string, double> compute_pdi(std::span<const DistressRecord> records, const WeightTable& weights,
                                          std::span<const std::string> sections) {
    std::map<std::string, double> pdi;
    for (const auto& id : sections) {
        pdi.emplace(id, 0.0);
    }
    for (const auto& r : records) {
        auto w = weights.weight(r.distress_type());
        if (!w) {
            throw InvalidInput("no weight for distress type '" + std::string(to_string(r.distress_type())) + "'");
        }
        const double severity = static_cast<double>(static_cast<int>(r.severity()));
        pdi[r.section_id()] += *w * (severity * r.density());
    }
    return pdi;
}

void write_pdi_csv(std::ostream& out, const std::map<std::string, double>& pdi) {
    out << "section_id,pdi\n";
    for (const auto& [id, value] : pdi) {
        out << csv::escape(id) << ',' << csv::format_double(value) << '\n';
    }
}

std::map<std::string, double> parse_pdi_csv(std::istream& in) {
    csv::LineReader reader(in);
    csv::require_header(reader, "section_id,pdi");
    std::map<std::string, double> pdi;
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
            throw ParseError(row, "malformed pdi: '" + f[1] + "'");
        }
        if (!pdi.emplace(f[0], *v).second) {
            throw ParseError(row, "duplicate section " + f[0]);
        }
    }
    return pdi;
}

}  // namespace roadrough
