#pragma once

// `x,f` CSV ingestion and full-precision output for uniform grids.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "altquad/errors.hpp"
#include "altquad/grid.hpp"

namespace altquad {

/// Maximum relative deviation of any gap from the mean gap.
inline constexpr double spacing_tolerance = 1e-9;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace detail

/// Reads `x,f` rows. A first line whose first field is not numeric is a
/// header. The x column only fixes a, b and checks spacing.
inline uniform_grid read_csv(std::istream& in) {
    std::vector<double> xs;
    std::vector<double> fs;
    std::string line;
    int lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        const auto fields = detail::split_commas(body);
        if (first_content) {
            first_content = false;
            if (!detail::parse_real(fields.front())) continue;
        }
        if (fields.size() != 2)
            throw data_error("line " + std::to_string(lineno) + ": expected 2 fields, got " +
                             std::to_string(fields.size()));
        const auto x = detail::parse_real(fields[0]);
        const auto f = detail::parse_real(fields[1]);
        if (!x || !f)
            throw data_error("line " + std::to_string(lineno) + ": unparseable number");
        if (!std::isfinite(*x) || !std::isfinite(*f))
            throw data_error("line " + std::to_string(lineno) + ": non-finite value");
        xs.push_back(*x);
        fs.push_back(*f);
    }
    if (xs.size() < 2)
        throw data_error("csv needs at least 2 data rows, got " + std::to_string(xs.size()));

    const double a = xs.front();
    const double b = xs.back();
    const double mean_gap = (b - a) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double gap = xs[i] - xs[i - 1];
        if (!(gap > 0.0))
            throw data_error("x not strictly increasing at row " + std::to_string(i + 1));
        if (std::abs(gap - mean_gap) > spacing_tolerance * std::abs(mean_gap))
            throw data_error("non-uniform spacing at row " + std::to_string(i + 1) +
                             ": gap " + std::to_string(gap) + " vs mean " +
                             std::to_string(mean_gap));
    }
    return uniform_grid(a, b, std::move(fs));
}

inline uniform_grid read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path.string());
    return read_csv(in);
}

/// Writes a header plus one row per sample at 17 significant digits.
inline void write_csv(std::ostream& out, const uniform_grid& grid) {
    char buf[64];
    out << "x,f\n";
    for (int i = 0; i <= grid.n(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,", grid.x(i));
        out << buf;
        std::snprintf(buf, sizeof buf, "%.17g\n", grid[i]);
        out << buf;
    }
}

}  // namespace altquad
