#pragma once

// Base quadrature rules over a uniform grid.
//
// The alternative estimator A_n blends the single-panel trapezoid T_1 and
// the composite trapezoid T_n:
//
//     A_n = (n^2 T_n - T_1) / (n^2 - 1)
//
// It is built here two ways: as the average of the limiting under- and
// overestimates U_inf, O_inf (alt_estimate), and from its closed form
// weights (alt_closed_form). A_n coincides with Simpson's rule at n = 2 and
// Simpson's 3/8 rule at n = 3; the simpson* routines are kept only as
// independent checks of that.

#include <concepts>
#include <span>
#include <string>

#include "altquad/errors.hpp"
#include "altquad/grid.hpp"

namespace altquad {

template <std::floating_point Real>
struct basic_alt_intermediates {
    Real u1{};     // h * (f_0 + ... + f_{n-1})
    Real o1{};     // h * (f_1 + ... + f_n)
    Real cap_h{};  // h * f_0
    Real u_inf{};
    Real o_inf{};
};

using alt_intermediates_t = basic_alt_intermediates<double>;

namespace detail {

inline void require_alt_n(int n) {
    if (n < 2)
        throw precondition_error(precondition::degenerate_grid,
                                 "alt estimator needs n >= 2, got n = " + std::to_string(n));
}

template <std::floating_point Real>
Real sum_interior(std::span<const Real> f) noexcept {
    Real s{0};
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s;
}

template <std::floating_point Real>
basic_alt_intermediates<Real> alt_limits(std::span<const Real> f, Real h) {
    const int n = static_cast<int>(f.size()) - 1;
    require_alt_n(n);
    const Real nn = static_cast<Real>(n);
    const Real sigma = sum_interior(f);

    basic_alt_intermediates<Real> r;
    r.u1 = h * (f.front() + sigma);
    r.o1 = h * (sigma + f.back());
    r.cap_h = h * f.front();
    r.u_inf = r.u1 + r.u1 / (nn - 1) - nn / (nn - 1) * r.cap_h;
    r.o_inf = r.o1 - r.o1 / (nn + 1) + nn / (nn + 1) * r.cap_h;
    return r;
}

template <std::floating_point Real>
Real alt_value(std::span<const Real> f, Real h) {
    const auto r = alt_limits(f, h);
    return (r.u_inf + r.o_inf) / 2;
}

}  // namespace detail

/// Single panel: ((b - a)/2) (f(a) + f(b)).
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> trapezoid(const basic_uniform_grid<Real>& grid) {
    const Real v = (grid.b() - grid.a()) / 2 * (grid.front() + grid.back());
    return make_estimate(v, method::trapezoid, {1, 1});
}

template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> composite_trapezoid(const basic_uniform_grid<Real>& grid) {
    const Real v = grid.h() / 2 * (grid.front() + 2 * grid.interior_sum() + grid.back());
    return make_estimate(v, method::composite_trapezoid, {grid.n(), grid.n()});
}

/// U1, O1, H and the limits U_inf, O_inf for the whole grid (n >= 2).
template <std::floating_point Real>
[[nodiscard]] basic_alt_intermediates<Real> alt_intermediates(const basic_uniform_grid<Real>& grid) {
    return detail::alt_limits(grid.values(), grid.h());
}

/// A_n as (U_inf + O_inf) / 2.
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> alt_estimate(const basic_uniform_grid<Real>& grid) {
    return make_estimate(detail::alt_value(grid.values(), grid.h()), method::alt,
                         {grid.n(), grid.n()});
}

/// A_n from its closed-form weights:
/// (h/2) [ n f(a)/(n+1) + 2 n^2 Sigma/(n^2 - 1) + n f(b)/(n+1) ].
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> alt_closed_form(const basic_uniform_grid<Real>& grid) {
    detail::require_alt_n(grid.n());
    const Real n = static_cast<Real>(grid.n());
    const Real end_w = n / (n + 1);
    const Real mid_w = 2 * n * n / (n * n - 1);
    const Real v =
        grid.h() / 2 * (end_w * grid.front() + mid_w * grid.interior_sum() + end_w * grid.back());
    return make_estimate(v, method::alt, {grid.n(), grid.n()});
}

/// A_m: sum of A over the n/m equal parts of m subintervals, each part with
/// its own H = h f(part left endpoint). m = n gives alt_estimate.
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> alt_composite(const basic_uniform_grid<Real>& grid, int m) {
    if (m < 2 || m > grid.n())
        throw precondition_error(precondition::range,
                                 "composite part size " + std::to_string(m) + " outside [2, " +
                                     std::to_string(grid.n()) + "]");
    Real total{0};
    for (const auto& part : parts(grid, m)) total += detail::alt_value(part.samples(), part.h());
    return make_estimate(total, m == grid.n() ? method::alt : method::alt_composite, {m, m});
}

/// Composite Simpson, n even.
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> simpson(const basic_uniform_grid<Real>& grid) {
    const int n = grid.n();
    if (n % 2 != 0)
        throw precondition_error(precondition::parity,
                                 "simpson needs even n, got n = " + std::to_string(n));
    Real odd{0};
    Real even{0};
    for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += grid[i];
    const Real v = grid.h() / 3 * (grid.front() + 4 * odd + 2 * even + grid.back());
    return make_estimate(v, method::simpson, {2, 2});
}

/// Composite Simpson 3/8, n divisible by 3.
template <std::floating_point Real>
[[nodiscard]] basic_estimate<Real> simpson38(const basic_uniform_grid<Real>& grid) {
    const int n = grid.n();
    if (n % 3 != 0)
        throw precondition_error(precondition::divisibility,
                                 "simpson 3/8 needs n divisible by 3, got n = " +
                                     std::to_string(n));
    Real inner{0};
    Real joints{0};
    for (int i = 1; i < n; ++i) (i % 3 ? inner : joints) += grid[i];
    const Real v = 3 * grid.h() / 8 * (grid.front() + 3 * inner + 2 * joints + grid.back());
    return make_estimate(v, method::simpson38, {3, 3});
}

}  // namespace altquad
