#pragma once

// Equally spaced sample grids, equal-part partitions and quadrature estimates.

#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altquad/errors.hpp"

namespace altquad {

/// Samples f(x_i), x_i = a + i*h, h = (b - a)/n, i = 0..n.
///
/// Immutable after construction. Only a, b and n drive the arithmetic;
/// abscissae are regenerated from them rather than stored.
template <std::floating_point Real>
class basic_uniform_grid {
public:
    using value_type = Real;

    basic_uniform_grid(Real a, Real b, std::vector<Real> values)
        : a_(a), b_(b), values_(std::move(values)) {
        if (values_.size() < 2)
            throw data_error("grid needs at least 2 samples, got " +
                             std::to_string(values_.size()));
        if (!std::isfinite(a_) || !std::isfinite(b_))
            throw data_error("grid endpoints must be finite");
        if (!(b_ > a_))
            throw data_error("grid needs b > a");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw data_error("sample " + std::to_string(i) + " is not finite");
        }
        h_ = (b_ - a_) / static_cast<Real>(n());
        if (!(h_ > Real{0}))
            throw data_error("grid step underflows to zero");
    }

    [[nodiscard]] Real a() const noexcept { return a_; }
    [[nodiscard]] Real b() const noexcept { return b_; }
    [[nodiscard]] int n() const noexcept { return static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] Real h() const noexcept { return h_; }

    /// Abscissa of sample i; x(n) is b exactly.
    [[nodiscard]] Real x(int i) const noexcept {
        return i == n() ? b_ : a_ + static_cast<Real>(i) * h_;
    }

    [[nodiscard]] std::span<const Real> values() const noexcept { return values_; }
    [[nodiscard]] Real operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] Real front() const noexcept { return values_.front(); }
    [[nodiscard]] Real back() const noexcept { return values_.back(); }

    /// Sum of f(x_1) .. f(x_{n-1}), accumulated left to right.
    [[nodiscard]] Real interior_sum() const noexcept {
        Real s{0};
        for (int i = 1; i < n(); ++i) s += (*this)[i];
        return s;
    }

private:
    Real a_;
    Real b_;
    Real h_{};
    std::vector<Real> values_;
};

using uniform_grid = basic_uniform_grid<double>;

template <std::floating_point Real>
[[nodiscard]] basic_uniform_grid<Real> make_grid(Real a, Real b, std::vector<Real> values) {
    return basic_uniform_grid<Real>(a, b, std::move(values));
}

/// Every stride-th sample of grid (stride must divide n).
template <std::floating_point Real>
[[nodiscard]] basic_uniform_grid<Real> decimate(const basic_uniform_grid<Real>& grid, int stride) {
    if (stride < 1 || grid.n() % stride != 0)
        throw precondition_error(precondition::divisibility,
                                 "decimation stride " + std::to_string(stride) +
                                     " does not divide n = " + std::to_string(grid.n()));
    std::vector<Real> picked;
    picked.reserve(static_cast<std::size_t>(grid.n() / stride + 1));
    for (int i = 0; i <= grid.n(); i += stride) picked.push_back(grid[i]);
    return basic_uniform_grid<Real>(grid.a(), grid.b(), std::move(picked));
}

/// All m with m | n and 2 <= m <= n/2, largest first.
[[nodiscard]] inline std::vector<int> feasible_divisors(int n) {
    std::vector<int> out;
    for (int m = n / 2; m >= 2; --m) {
        if (n % m == 0) out.push_back(m);
    }
    return out;
}

/// One of the k = n/m equal parts of a grid; shares its boundary samples
/// with the neighbouring parts. Borrows the parent grid.
template <std::floating_point Real>
class basic_part_view {
public:
    basic_part_view(const basic_uniform_grid<Real>& parent, int part_index, int m)
        : parent_(&parent), index_(part_index), m_(m) {}

    [[nodiscard]] const basic_uniform_grid<Real>& parent() const noexcept { return *parent_; }
    [[nodiscard]] int index() const noexcept { return index_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] int parts() const noexcept { return parent_->n() / m_; }
    [[nodiscard]] int first_sample() const noexcept { return index_ * m_; }
    [[nodiscard]] Real h() const noexcept { return parent_->h(); }
    [[nodiscard]] Real width() const noexcept { return static_cast<Real>(m_) * parent_->h(); }
    [[nodiscard]] Real left() const noexcept { return parent_->x(first_sample()); }
    [[nodiscard]] Real right() const noexcept { return parent_->x(first_sample() + m_); }
    [[nodiscard]] Real left_value() const noexcept { return (*parent_)[first_sample()]; }

    /// The m + 1 samples of this part.
    [[nodiscard]] std::span<const Real> samples() const noexcept {
        return parent_->values().subspan(static_cast<std::size_t>(first_sample()),
                                         static_cast<std::size_t>(m_) + 1);
    }

private:
    const basic_uniform_grid<Real>* parent_;
    int index_;
    int m_;
};

using part_view = basic_part_view<double>;

template <std::floating_point Real>
[[nodiscard]] std::vector<basic_part_view<Real>> parts(const basic_uniform_grid<Real>& grid, int m) {
    if (m < 1 || m > grid.n())
        throw precondition_error(precondition::range,
                                 "part size " + std::to_string(m) + " outside [1, " +
                                     std::to_string(grid.n()) + "]");
    if (grid.n() % m != 0)
        throw precondition_error(precondition::divisibility,
                                 "part size " + std::to_string(m) + " does not divide n = " +
                                     std::to_string(grid.n()));
    std::vector<basic_part_view<Real>> out;
    const int k = grid.n() / m;
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) out.emplace_back(grid, j, m);
    return out;
}

enum class method {
    trapezoid,
    composite_trapezoid,
    alt,
    alt_composite,
    simpson,
    simpson38,
    romberg_cell,
    tableau_cell,
};

[[nodiscard]] constexpr const char* to_string(method m) noexcept {
    switch (m) {
        case method::trapezoid: return "trapezoid";
        case method::composite_trapezoid: return "composite-trapezoid";
        case method::alt: return "alt";
        case method::alt_composite: return "alt-composite";
        case method::simpson: return "simpson";
        case method::simpson38: return "simpson38";
        case method::romberg_cell: return "romberg-cell";
        case method::tableau_cell: return "tableau-cell";
    }
    return "?";
}

/// Subscripts of an A_{p,q} label. Raw estimates over parts of m
/// subintervals carry (m, m).
struct signature {
    int p = 0;
    int q = 0;
    friend constexpr auto operator<=>(const signature&, const signature&) = default;
};

template <std::floating_point Real>
struct basic_estimate {
    Real value{};
    method kind = method::trapezoid;
    signature sig{};
};

using estimate = basic_estimate<double>;

template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> make_estimate(Real value, method kind, signature sig) {
    if (!std::isfinite(value))
        throw data_error(std::string(to_string(kind)) + " estimate overflowed");
    return {value, kind, sig};
}

}  // namespace altquad
