#ifndef ROADROUGH_CSV_HPP
#define ROADROUGH_CSV_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roadrough {

/// Parse failure pinned to a data row (1-based, header excluded; row 0 is the header).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, const std::string& message);

    std::size_t row() const { return row_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t row_;
    std::string detail_;
};

namespace csv {

/// Reads lines, strips a trailing '\r' and a leading UTF-8 BOM, and skips fully blank lines.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Returns false at end of stream.
    bool next(std::string& line);

private:
    std::istream& in_;
    bool first_ = true;
};

/// Splits on ',' with optional double-quoted fields ("" escapes a quote).
std::vector<std::string> split(std::string_view line);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Throws ParseError (row 0) unless the next line is exactly the `expected` header.
void require_header(LineReader& reader, std::string_view expected);

/// Strict finite decimal parse; whole field must be consumed.
std::optional<double> parse_double(std::string_view field);
std::optional<std::int64_t> parse_int(std::string_view field);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Fixed-point formatting with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

}  // namespace csv
}  // namespace roadrough

#endif
