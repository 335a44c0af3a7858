#include "roadrough/config.hpp"

#include <cmath>
#include <fstream>

#include "roadrough/csv.hpp"

namespace roadrough {

namespace {

std::string trim(std::string s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

}  // namespace

Config parse_config(std::istream& in) {
    Config cfg;
    std::string table;
    std::string raw;
    std::size_t line_no = 0;
    double iri_slope = cfg.iri_model.slope();
    double iri_intercept = cfg.iri_model.intercept();

    auto fail = [&](const std::string& msg) { throw ParseError(line_no, "config: " + msg); };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("malformed table header");
            table = trim(line.substr(1, line.size() - 2));
            if (table != "iri_model" && table != "weights") fail("unknown table [" + table + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = unquote(trim(line.substr(0, eq)));
        const std::string text = trim(line.substr(eq + 1));
        auto value = csv::parse_double(text);
        if (!value) fail("value of '" + key + "' is not a finite number");
        const double v = *value;

        try {
            if (table.empty()) {
                if (key == "gravity_mps2") {
                    if (!(v > 0.0)) fail("gravity_mps2 must be positive");
                    cfg.gravity_mps2 = v;
                } else if (key == "expected_cadence_ms") {
                    if (!(v >= 1.0) || v != std::floor(v)) fail("expected_cadence_ms must be a positive integer");
                    cfg.expected_cadence_ms = static_cast<std::int64_t>(v);
                } else if (key == "speed_min_kph") {
                    cfg.segmentation.gate.min_kph = v;
                } else if (key == "speed_max_kph") {
                    cfg.segmentation.gate.max_kph = v;
                } else if (key == "off_route_m") {
                    cfg.segmentation.off_route_m = v;
                } else if (key == "boxplot_k") {
                    if (!(v >= 0.0)) fail("boxplot_k must be non-negative");
                    cfg.boxplot_k = v;
                } else if (key == "alpha") {
                    if (!(v > 0.0 && v < 1.0)) fail("alpha must lie in (0, 1)");
                    cfg.alpha = v;
                } else {
                    fail("unknown key '" + key + "'");
                }
            } else if (table == "iri_model") {
                if (key == "slope") {
                    iri_slope = v;
                } else if (key == "intercept") {
                    iri_intercept = v;
                } else {
                    fail("unknown key '" + key + "' in [iri_model]");
                }
            } else {
                cfg.weights.set(parse_distress_type(key), v);
            }
        } catch (const InvalidInput& e) {
            fail(e.what());
        }
    }
    if (!(cfg.segmentation.gate.min_kph <= cfg.segmentation.gate.max_kph)) {
        throw ParseError(0, "config: speed_min_kph exceeds speed_max_kph");
    }
    try {
        cfg.iri_model = IriModel(iri_slope, iri_intercept);
    } catch (const InvalidInput& e) {
        throw ParseError(0, std::string("config: ") + e.what());
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("file not found: " + path.string());
    }
    return parse_config(in);
}

void write_config(std::ostream& out, const Config& c) {
    out << "gravity_mps2 = " << csv::format_double(c.gravity_mps2) << '\n'
        << "expected_cadence_ms = " << c.expected_cadence_ms << '\n'
        << "speed_min_kph = " << csv::format_double(c.segmentation.gate.min_kph) << '\n'
        << "speed_max_kph = " << csv::format_double(c.segmentation.gate.max_kph) << '\n'
        << "off_route_m = " << csv::format_double(c.segmentation.off_route_m) << '\n'
        << "boxplot_k = " << csv::format_double(c.boxplot_k) << '\n'
        << "alpha = " << csv::format_double(c.alpha) << '\n'
        << "\n[iri_model]\n"
        << "slope = " << csv::format_double(c.iri_model.slope()) << '\n'
        << "intercept = " << csv::format_double(c.iri_model.intercept()) << '\n'
        << "\n[weights]\n";
    for (const auto& [type, w] : c.weights.weights()) {
        out << '"' << to_string(type) << "\" = " << csv::format_double(w) << '\n';
    }
}

}  // namespace roadrough
