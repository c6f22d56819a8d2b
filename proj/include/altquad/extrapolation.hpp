#pragma once

// Extrapolation tableaus.
//
// Every A_m shares a leading error term proportional to m^2 h^4, so two
// estimates over part sizes p > q combine as
//
//     A_{p,q} = (Omega A_lower - A_upper) / (Omega - 1),  Omega = (p/q)^2
//
// where A_upper is the estimate being subtracted (leading subscript p).
// Factors compose: Omega_{z,y} Omega_{y,x} = Omega_{z,x}.
//
// The alt tableau applies this column by column over an ordering
// [n, m_1, ..., m_d]. The Romberg tableau is the classical one over
// halved trapezoid steps with weights 4^j.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "altquad/errors.hpp"
#include "altquad/grid.hpp"
#include "altquad/rules.hpp"

namespace altquad {

/// Extrapolation factor (num/den)^2. Squares are taken in integer
/// arithmetic before the single division.
struct omega {
    long long num = 1;
    long long den = 1;

    template <std::floating_point Real = double>
    [[nodiscard]] Real value() const noexcept {
        return static_cast<Real>(num * num) / static_cast<Real>(den * den);
    }

    [[nodiscard]] bool degenerate() const noexcept { return num == den; }
};

[[nodiscard]] constexpr omega make_omega(long long num, long long den) {
    if (num < 1 || den < 1)
        throw precondition_error(precondition::range, "omega subscripts must be positive");
    return {num, den};
}

/// Eliminates the shared leading error term of two estimates.
/// `upper` is the estimate being subtracted; w.num is its leading subscript.
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> extrapolate_pair(const basic_estimate<Real>& upper,
                                                    const basic_estimate<Real>& lower,
                                                    const omega& w) {
    if (w.degenerate())
        throw precondition_error(precondition::degenerate_factor,
                                 "extrapolation factor (" + std::to_string(w.num) + "/" +
                                     std::to_string(w.den) + ")^2 equals 1");
    const Real om = w.value<Real>();
    const Real v = (om * lower.value - upper.value) / (om - 1);
    return make_estimate(v, method::tableau_cell,
                         {static_cast<int>(w.num), static_cast<int>(w.den)});
}

template <std::floating_point Real>
struct basic_extrapolation_tableau {
    std::vector<int> ordering;
    /// columns[0][i] = A_{m_i}; columns[j][i] = A_{m_i, m_{i+j}}.
    std::vector<std::vector<basic_estimate<Real>>> columns;

    [[nodiscard]] int depth() const noexcept { return static_cast<int>(ordering.size()) - 1; }
    [[nodiscard]] const basic_estimate<Real>& final() const { return columns.back().front(); }

    /// Factor used to produce columns[j][i] (j >= 1).
    [[nodiscard]] omega omega_at(int j, int i) const {
        return make_omega(ordering[static_cast<std::size_t>(i)],
                          ordering[static_cast<std::size_t>(i + j)]);
    }

    [[nodiscard]] std::size_t cell_count() const noexcept {
        std::size_t c = 0;
        for (const auto& col : columns) c += col.size();
        return c;
    }
};

using extrapolation_tableau = basic_extrapolation_tableau<double>;

/// [n] followed by the feasible divisors of n, largest first.
[[nodiscard]] inline std::vector<int> default_ordering(int n) {
    if (n < 2)
        throw precondition_error(precondition::degenerate_grid,
                                 "alt tableau needs n >= 2, got n = " + std::to_string(n));
    std::vector<int> out{n};
    const auto divs = feasible_divisors(n);
    out.insert(out.end(), divs.begin(), divs.end());
    return out;
}

/// Throws unless ordering = [n, distinct feasible divisors of n...].
inline void validate_ordering(int n, const std::vector<int>& ordering) {
    auto fail = [](const std::string& msg) {
        throw precondition_error(precondition::ordering, msg);
    };
    if (ordering.empty()) fail("ordering is empty");
    if (ordering.front() != n)
        fail("ordering must start with n = " + std::to_string(n) + ", got " +
             std::to_string(ordering.front()));
    for (std::size_t i = 1; i < ordering.size(); ++i) {
        const int m = ordering[i];
        if (m < 2 || m > n / 2 || n % m != 0)
            fail("ordering entry " + std::to_string(m) + " is not a feasible divisor of n = " +
                 std::to_string(n));
        if (std::find(ordering.begin(), ordering.begin() + static_cast<std::ptrdiff_t>(i), m) !=
            ordering.begin() + static_cast<std::ptrdiff_t>(i))
            fail("ordering entry " + std::to_string(m) + " is repeated");
    }
}

template <std::floating_point Real>
[[nodiscard]] basic_extrapolation_tableau<Real> build_alt_tableau(
    const basic_uniform_grid<Real>& grid, const std::vector<int>& ordering) {
    detail::require_alt_n(grid.n());
    validate_ordering(grid.n(), ordering);

    basic_extrapolation_tableau<Real> t;
    t.ordering = ordering;
    const std::size_t rows = ordering.size();
    t.columns.resize(rows);

    auto& base = t.columns[0];
    base.reserve(rows);
    for (int m : ordering) base.push_back(alt_composite(grid, m));

    for (std::size_t j = 1; j < rows; ++j) {
        const auto& prev = t.columns[j - 1];
        auto& col = t.columns[j];
        col.reserve(rows - j);
        for (std::size_t i = 0; i + j < rows; ++i) {
            const auto w = make_omega(ordering[i], ordering[i + j]);
            col.push_back(extrapolate_pair(prev[i], prev[i + 1], w));
        }
    }
    return t;
}

template <std::floating_point Real>
[[nodiscard]] basic_extrapolation_tableau<Real> build_alt_tableau(
    const basic_uniform_grid<Real>& grid) {
    return build_alt_tableau(grid, default_ordering(grid.n()));
}

template <std::floating_point Real>
struct basic_romberg_tableau {
    int levels = 0;
    /// cells[i][j], j <= i; cells[i][0] is the trapezoid with 2^i subintervals.
    std::vector<std::vector<Real>> cells;

    [[nodiscard]] Real final() const { return cells.back().back(); }
    [[nodiscard]] std::size_t cell_count() const noexcept {
        return static_cast<std::size_t>(levels + 1) * static_cast<std::size_t>(levels + 2) / 2;
    }
};

using romberg_tableau = basic_romberg_tableau<double>;

[[nodiscard]] constexpr bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

template <std::floating_point Real>
[[nodiscard]] basic_romberg_tableau<Real> build_romberg_tableau(const basic_uniform_grid<Real>& grid) {
    const int n = grid.n();
    if (!is_power_of_two(n))
        throw precondition_error(precondition::romberg_arity,
                                 "romberg needs n to be a power of two, got n = " +
                                     std::to_string(n));
    int levels = 0;
    while ((1 << levels) < n) ++levels;

    basic_romberg_tableau<Real> t;
    t.levels = levels;
    t.cells.resize(static_cast<std::size_t>(levels) + 1);
    for (int i = 0; i <= levels; ++i) {
        auto& row = t.cells[static_cast<std::size_t>(i)];
        row.reserve(static_cast<std::size_t>(i) + 1);
        row.push_back(composite_trapezoid(decimate(grid, n >> i)).value);
        Real weight{1};
        for (int j = 1; j <= i; ++j) {
            weight *= 4;
            const Real above = t.cells[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            row.push_back((weight * row.back() - above) / (weight - 1));
        }
    }
    return t;
}

}  // namespace altquad
