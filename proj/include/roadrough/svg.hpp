#ifndef ROADROUGH_SVG_HPP
#define ROADROUGH_SVG_HPP

#include <optional>
#include <string>
#include <vector>

/// Self-contained SVG charts. Output is byte-stable for identical input.
namespace roadrough::svg {

struct Series {
    std::string name;
    /// One value per category; gaps are left unconnected.
    std::vector<std::optional<double>> values;
};

/// One polyline per series across categorical x positions, with a legend.
std::string category_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                                const std::vector<std::string>& categories, const std::vector<Series>& series);

struct XY {
    double x, y;
};

struct ScatterChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<XY> points;
    /// Fitted line y = slope * x + intercept drawn across the data range.
    std::optional<std::pair<double, double>> line;
    /// Text lines printed in the upper-left corner.
    std::vector<std::string> annotations;
    /// Join points in order instead of drawing markers.
    bool connect = false;
};

std::string scatter_chart(const ScatterChart& chart);

std::string escape_xml(const std::string& text);

}  // namespace roadrough::svg

#endif
