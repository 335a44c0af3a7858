#include "roadrough/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roadrough/csv.hpp"

namespace roadrough::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Axis {
    double lo, hi, step;

    double span() const { return hi - lo; }
};

/// Range expanded to round tick steps (1, 2 or 5 times a power of ten).
Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0 ? std::abs(lo) * 0.1 : 1.0;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0) * mag;
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

int decimals_for(double step) { return std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9))); }

std::string num(double v) { return csv::format_fixed(v, 2); }

class Canvas {
public:
    explicit Canvas(const std::string& title) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
             << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        text(kWidth / 2 - kRight / 2 + kLeft / 2, 24, title, "middle", 15);
    }

    void text(double x, double y, const std::string& s, const char* anchor = "start", int size = 11,
              const char* extra = "") {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size << "\" text-anchor=\""
             << anchor << "\"" << extra << ">" << escape_xml(s) << "</text>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* stroke, double width = 1.0,
              const char* extra = "") {
        out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << extra << "/>\n";
    }

    void circle(double cx, double cy, double r, const char* fill) {
        out_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill
             << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
        if (pts.size() < 2) return;
        out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
        }
        out_ << "\"/>\n";
    }

    void y_axis(const Axis& y, const std::string& label) {
        const int dec = decimals_for(y.step);
        for (double v = y.lo; v <= y.hi + y.step * 1e-6; v += y.step) {
            const double py = map_y(y, v);
            line(kLeft, py, kWidth - kRight, py, "#e0e0e0");
            text(kLeft - 6, py + 4, csv::format_fixed(v, dec), "end");
        }
        line(kLeft, kTop, kLeft, kHeight - kBottom, "black");
        text(18, (kTop + kHeight - kBottom) / 2, label, "middle", 12,
             (" transform=\"rotate(-90 18 " + num((kTop + kHeight - kBottom) / 2) + ")\"").c_str());
    }

    void x_label(const std::string& label) {
        line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, "black");
        text((kLeft + kWidth - kRight) / 2, kHeight - 15, label, "middle", 12);
    }

    static double map_y(const Axis& y, double v) {
        return kHeight - kBottom - (v - y.lo) / y.span() * (kHeight - kTop - kBottom);
    }
    static double map_x(const Axis& x, double v) { return kLeft + (v - x.lo) / x.span() * (kWidth - kLeft - kRight); }

    void open_group(const std::string& cls, const std::string& name) {
        out_ << "<g class=\"" << cls << "\" data-name=\"" << escape_xml(name) << "\">\n";
    }
    void close_group() { out_ << "</g>\n"; }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

}  // namespace

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string category_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                                const std::vector<std::string>& categories, const std::vector<Series>& series) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& v : s.values) {
            if (!v) continue;
            lo = any ? std::min(lo, *v) : *v;
            hi = any ? std::max(hi, *v) : *v;
            any = true;
        }
    }
    const Axis y = nice_axis(std::min(0.0, lo), any ? hi : 1.0);
    Canvas c(title);
    c.y_axis(y, y_label);
    c.x_label(x_label);

    const double plot_w = kWidth - kLeft - kRight;
    const std::size_t n = std::max<std::size_t>(categories.size(), 1);
    auto px = [&](std::size_t i) { return kLeft + (static_cast<double>(i) + 0.5) * plot_w / static_cast<double>(n); };
    for (std::size_t i = 0; i < categories.size(); ++i) {
        c.text(px(i), kHeight - kBottom + 16, categories[i], "middle");
    }

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        c.open_group("series", series[k].name);
        std::vector<std::pair<double, double>> run;
        auto flush = [&] {
            c.polyline(run, color);
            run.clear();
        };
        for (std::size_t i = 0; i < series[k].values.size() && i < categories.size(); ++i) {
            const auto& v = series[k].values[i];
            if (!v) {
                flush();
                continue;
            }
            run.emplace_back(px(i), Canvas::map_y(y, *v));
            c.circle(px(i), Canvas::map_y(y, *v), 3.5, color);
        }
        flush();
        const double ly = kTop + 16.0 * static_cast<double>(k) + 6;
        c.line(kWidth - kRight + 12, ly, kWidth - kRight + 32, ly, color, 2.0);
        c.text(kWidth - kRight + 38, ly + 4, series[k].name);
        c.close_group();
    }
    return c.finish();
}

std::string scatter_chart(const ScatterChart& chart) {
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    if (!chart.points.empty()) {
        auto [xmin, xmax] = std::minmax_element(chart.points.begin(), chart.points.end(),
                                                [](const XY& a, const XY& b) { return a.x < b.x; });
        auto [ymin, ymax] = std::minmax_element(chart.points.begin(), chart.points.end(),
                                                [](const XY& a, const XY& b) { return a.y < b.y; });
        xlo = xmin->x;
        xhi = xmax->x;
        ylo = ymin->y;
        yhi = ymax->y;
    }
    if (chart.line) {
        const auto [m, b] = *chart.line;
        ylo = std::min({ylo, m * xlo + b, m * xhi + b});
        yhi = std::max({yhi, m * xlo + b, m * xhi + b});
    }
    const Axis x = nice_axis(xlo, xhi);
    const Axis y = nice_axis(ylo, yhi);

    Canvas c(chart.title);
    c.y_axis(y, chart.y_label);
    c.x_label(chart.x_label);
    const int xdec = decimals_for(x.step);
    for (double v = x.lo; v <= x.hi + x.step * 1e-6; v += x.step) {
        const double px = Canvas::map_x(x, v);
        c.line(px, kHeight - kBottom, px, kHeight - kBottom + 4, "black");
        c.text(px, kHeight - kBottom + 16, csv::format_fixed(v, xdec), "middle");
    }

    if (chart.connect) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : chart.points) pts.emplace_back(Canvas::map_x(x, p.x), Canvas::map_y(y, p.y));
        c.polyline(pts, kPalette[0]);
    } else {
        for (const auto& p : chart.points) c.circle(Canvas::map_x(x, p.x), Canvas::map_y(y, p.y), 4.0, kPalette[0]);
    }
    if (chart.line) {
        const auto [m, b] = *chart.line;
        c.line(Canvas::map_x(x, xlo), Canvas::map_y(y, m * xlo + b), Canvas::map_x(x, xhi),
               Canvas::map_y(y, m * xhi + b), kPalette[1], 2.0, " stroke-dasharray=\"6 3\"");
    }
    for (std::size_t i = 0; i < chart.annotations.size(); ++i) {
        c.text(kLeft + 10, kTop + 18 + 16.0 * static_cast<double>(i), chart.annotations[i]);
    }
    return c.finish();
}

}  // namespace roadrough::svg
