#pragma once

// Diagnostics: leading Euler-Maclaurin error terms of the estimators, a
// catalog of integrands with known integrals, and empirical convergence
// orders.
//
// Error terms are reported as estimate - exact. For A_n over [a, b]:
//
//     alpha   = -(b-a)^4 / (720 n^2)  [f'''(a) - f'''(b)]
//     alpha_m = -m^2 (b-a)^4 / (720 n^4) [f'''(a) - f'''(b)]
//
// so alpha = (n/m)^2 alpha_m. These are never subtracted from estimates.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "altquad/errors.hpp"
#include "altquad/extrapolation.hpp"
#include "altquad/grid.hpp"
#include "altquad/rules.hpp"

namespace altquad {

struct catalog_function {
    std::string name;
    std::function<double(double)> eval;
    /// Exact integral over [a, b].
    std::function<double(double, double)> integral;
    std::function<double(double)> first_derivative;  // may be empty
    std::function<double(double)> third_derivative;  // may be empty
    double default_a = 0.0;
    double default_b = 1.0;

    [[nodiscard]] bool has_third_derivative() const noexcept {
        return static_cast<bool>(third_derivative);
    }
};

namespace detail {

inline catalog_function monomial(int k) {
    catalog_function f;
    f.name = "x" + std::to_string(k);
    f.eval = [k](double x) { return std::pow(x, k); };
    f.integral = [k](double a, double b) {
        return (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
    };
    f.first_derivative = [k](double x) { return k == 0 ? 0.0 : k * std::pow(x, k - 1); };
    f.third_derivative = [k](double x) {
        return k < 3 ? 0.0 : static_cast<double>(k * (k - 1) * (k - 2)) * std::pow(x, k - 3);
    };
    return f;
}

inline std::vector<catalog_function> make_catalog() {
    using std::numbers::pi;
    std::vector<catalog_function> c;

    c.push_back({"poly7",
                 [](double x) { return std::pow(x, 7) - 2 * x + 10; },
                 [](double a, double b) {
                     auto anti = [](double x) { return std::pow(x, 8) / 8 - x * x + 10 * x; };
                     return anti(b) - anti(a);
                 },
                 [](double x) { return 7 * std::pow(x, 6) - 2; },
                 [](double x) { return 210 * std::pow(x, 4); },
                 0.0, 10.0});

    c.push_back({"sin",
                 [](double x) { return std::sin(x); },
                 [](double a, double b) { return std::cos(a) - std::cos(b); },
                 [](double x) { return std::cos(x); },
                 [](double x) { return -std::cos(x); },
                 pi, 2 * pi});

    for (int k = 0; k <= 9; ++k) c.push_back(monomial(k));

    c.push_back({"exp",
                 [](double x) { return std::exp(x); },
                 [](double a, double b) { return std::exp(b) - std::exp(a); },
                 [](double x) { return std::exp(x); },
                 [](double x) { return std::exp(x); },
                 0.0, 1.0});

    // Runge's function.
    c.push_back({"runge",
                 [](double x) { return 1 / (1 + x * x); },
                 [](double a, double b) { return std::atan(b) - std::atan(a); },
                 [](double x) { return -2 * x / ((1 + x * x) * (1 + x * x)); },
                 [](double x) {
                     const double q = 1 + x * x;
                     return 24 * x * (1 - x * x) / (q * q * q * q);
                 },
                 -1.0, 1.0});
    return c;
}

}  // namespace detail

inline const std::vector<catalog_function>& catalog() {
    static const std::vector<catalog_function> c = detail::make_catalog();
    return c;
}

/// Looks up a catalog entry; "constant" and "linear" alias x0 and x1.
inline const catalog_function& find_function(std::string_view name) {
    if (name == "constant") name = "x0";
    if (name == "linear") name = "x1";
    for (const auto& f : catalog()) {
        if (f.name == name) return f;
    }
    throw std::out_of_range("unknown catalog function '" + std::string(name) + "'");
}

/// Samples fn at the n + 1 nodes of [a, b].
inline uniform_grid sample(const catalog_function& fn, double a, double b, int n) {
    if (n < 1)
        throw precondition_error(precondition::degenerate_grid,
                                 "sampling needs n >= 1, got n = " + std::to_string(n));
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = fn.eval(i == n ? b : a + i * h);
    return uniform_grid(a, b, std::move(v));
}

namespace detail {

inline double third_derivative_jump(const catalog_function& fn, double a, double b) {
    if (!fn.has_third_derivative())
        throw precondition_error(precondition::capability,
                                 "function '" + fn.name + "' has no third derivative");
    return fn.third_derivative(a) - fn.third_derivative(b);
}

}  // namespace detail

/// Leading error of the composite A_m over the whole of [a, b].
inline double predicted_alpha_composite(const catalog_function& fn, double a, double b, int n, int m) {
    if (n < 2 || m < 2 || m > n)
        throw precondition_error(precondition::range, "need 2 <= m <= n");
    if (n % m != 0)
        throw precondition_error(precondition::divisibility,
                                 std::to_string(m) + " does not divide " + std::to_string(n));
    const double jump = detail::third_derivative_jump(fn, a, b);
    const double len = b - a;
    const double mm = static_cast<double>(m) * m;
    const double n4 = static_cast<double>(n) * n * n * n;
    return -(len * len * len * len) / 720.0 * jump * (mm / n4);
}

/// Leading error of A_n; the composite term at m = n.
inline double predicted_alpha(const catalog_function& fn, double a, double b, int n) {
    return predicted_alpha_composite(fn, a, b, n, n);
}

struct error_model {
    double leading_alt = 0.0;
    /// Single-panel trapezoid: -(b-a)^2/12 [f'(a) - f'(b)].
    std::optional<double> leading_trap;

    int n = 0;
    double scale = 0.0;  // -(b-a)^4 [f'''(a) - f'''(b)] / 720

    [[nodiscard]] double leading_alt_composite(int m) const {
        return scale * (static_cast<double>(m) * m /
                        (static_cast<double>(n) * n * n * n));
    }
};

inline error_model make_error_model(const catalog_function& fn, double a, double b, int n) {
    error_model e;
    e.n = n;
    const double len = b - a;
    e.scale = -(len * len * len * len) / 720.0 * detail::third_derivative_jump(fn, a, b);
    e.leading_alt = predicted_alpha(fn, a, b, n);
    if (fn.first_derivative)
        e.leading_trap = -(len * len) / 12.0 * (fn.first_derivative(a) - fn.first_derivative(b));
    return e;
}

enum class endpoint { left, right };

/// One-sided 5-point estimate of f''' at an endpoint, second order in h.
inline double fd_third_derivative(const uniform_grid& grid, endpoint side) {
    if (grid.n() < 5)
        throw precondition_error(precondition::insufficient_samples,
                                 "third-derivative stencil needs n >= 5, got n = " +
                                     std::to_string(grid.n()));
    static constexpr double w[5] = {-2.5, 9.0, -12.0, 7.0, -1.5};
    const double h3 = grid.h() * grid.h() * grid.h();
    double s = 0.0;
    if (side == endpoint::left) {
        for (int i = 0; i < 5; ++i) s += w[i] * grid[i];
        return s / h3;
    }
    for (int i = 0; i < 5; ++i) s += w[i] * grid[grid.n() - i];
    return -s / h3;
}

/// Leading error of A_n for tabulated data, with f''' taken from the
/// endpoint stencils.
inline double predicted_alpha_fd(const uniform_grid& grid) {
    const double jump =
        fd_third_derivative(grid, endpoint::left) - fd_third_derivative(grid, endpoint::right);
    const double len = grid.b() - grid.a();
    const double n = grid.n();
    return -(len * len * len * len) / (720.0 * n * n) * jump;
}

// ---------------------------------------------------------------------------
// Convergence studies

struct study_method {
    enum class kind { trapezoid, composite_trapezoid, simpson, alt, alt_tableau };

    kind k = kind::alt;
    std::string name = "alt";
    /// Tableau ordering for a given n (alt_tableau only).
    std::function<std::vector<int>(int)> ordering;

    static study_method trapezoid() { return {kind::trapezoid, "trap", {}}; }
    static study_method composite_trapezoid() { return {kind::composite_trapezoid, "composite-trap", {}}; }
    static study_method simpson() { return {kind::simpson, "simpson", {}}; }
    static study_method alt() { return {kind::alt, "alt", {}}; }

    /// Ordering [n, n/2, ..., n/2^depth].
    static study_method alt_tableau_halving(int depth) {
        return {kind::alt_tableau, "alt-tableau-depth-" + std::to_string(depth),
                [depth](int n) {
                    std::vector<int> o{n};
                    for (int d = 1; d <= depth; ++d) o.push_back(n >> d);
                    return o;
                }};
    }

    /// Ordering [n, tail...] with part sizes held fixed as n grows.
    static study_method alt_tableau_fixed(std::vector<int> tail) {
        std::string label = "alt-tableau-fixed";
        for (std::size_t i = 0; i < tail.size(); ++i)
            label += (i ? "," : ":") + std::to_string(tail[i]);
        return {kind::alt_tableau, label, [tail](int n) {
                    std::vector<int> o{n};
                    o.insert(o.end(), tail.begin(), tail.end());
                    return o;
                }};
    }
};

/// Parses trap | composite-trap | simpson | alt | alt-tableau-depth-K |
/// alt-tableau-fixed:m1,m2,...
inline study_method parse_study_method(std::string_view s) {
    if (s == "trap" || s == "trapezoid") return study_method::trapezoid();
    if (s == "composite-trap") return study_method::composite_trapezoid();
    if (s == "simpson") return study_method::simpson();
    if (s == "alt") return study_method::alt();
    constexpr std::string_view depth_prefix = "alt-tableau-depth-";
    constexpr std::string_view fixed_prefix = "alt-tableau-fixed:";
    try {
        if (s.starts_with(depth_prefix)) {
            const int depth = std::stoi(std::string(s.substr(depth_prefix.size())));
            if (depth >= 0) return study_method::alt_tableau_halving(depth);
        } else if (s.starts_with(fixed_prefix)) {
            std::vector<int> tail;
            std::string rest(s.substr(fixed_prefix.size()));
            std::size_t pos = 0;
            while (pos <= rest.size()) {
                const auto comma = rest.find(',', pos);
                tail.push_back(std::stoi(rest.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return study_method::alt_tableau_fixed(std::move(tail));
        }
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("unknown study method '" + std::string(s) + "'");
}

struct convergence_row {
    int n = 0;
    double estimate = 0.0;
    double abs_error = 0.0;
};

struct convergence_report {
    std::string function;
    std::string method;
    std::vector<convergence_row> rows;
    /// Absent when fewer than two rows sit above the noise floor.
    std::optional<double> fitted_order;
};

/// Errors below this are treated as round-off and left out of order fits.
inline constexpr double noise_floor = 1e-13;

/// Negated least-squares slope of log|error| against log n.
inline std::optional<double> fit_order(const std::vector<convergence_row>& rows) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : rows) {
        if (r.abs_error < noise_floor) continue;
        xs.push_back(std::log(static_cast<double>(r.n)));
        ys.push_back(std::log(r.abs_error));
    }
    if (xs.size() < 2) return std::nullopt;
    const double k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return -sxy / sxx;
}

namespace detail {

inline double study_estimate(const uniform_grid& grid, const study_method& m) {
    switch (m.k) {
        case study_method::kind::trapezoid: return trapezoid(grid).value;
        case study_method::kind::composite_trapezoid: return composite_trapezoid(grid).value;
        case study_method::kind::simpson: return simpson(grid).value;
        case study_method::kind::alt: return alt_estimate(grid).value;
        case study_method::kind::alt_tableau:
            return build_alt_tableau(grid, m.ordering(grid.n())).final().value;
    }
    return 0.0;
}

inline void check_study_n(int n, const study_method& m) {
    switch (m.k) {
        case study_method::kind::trapezoid:
        case study_method::kind::composite_trapezoid:
            if (n < 1)
                throw precondition_error(precondition::degenerate_grid,
                                         "n = " + std::to_string(n) + " invalid for " + m.name);
            break;
        case study_method::kind::simpson:
            if (n < 2 || n % 2 != 0)
                throw precondition_error(precondition::parity,
                                         "n = " + std::to_string(n) + " invalid for " + m.name);
            break;
        case study_method::kind::alt:
            require_alt_n(n);
            break;
        case study_method::kind::alt_tableau:
            require_alt_n(n);
            validate_ordering(n, m.ordering(n));
            break;
    }
}

}  // namespace detail

inline convergence_report convergence_study(const catalog_function& fn, double a, double b,
                                            const std::vector<int>& n_list,
                                            const study_method& m) {
    if (n_list.empty())
        throw precondition_error(precondition::range, "convergence study needs at least one n");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw precondition_error(precondition::range, "n list must be strictly ascending");
        detail::check_study_n(n_list[i], m);
    }

    convergence_report rep;
    rep.function = fn.name;
    rep.method = m.name;
    const double exact = fn.integral(a, b);
    for (int n : n_list) {
        const double est = detail::study_estimate(sample(fn, a, b, n), m);
        rep.rows.push_back({n, est, std::abs(est - exact)});
    }
    rep.fitted_order = fit_order(rep.rows);
    return rep;
}

/// `n,estimate,abs_error` rows and a `#order=` trailer ("nan" if skipped).
inline void write_report_csv(std::ostream& out, const convergence_report& rep) {
    char buf[96];
    out << "n,estimate,abs_error\n";
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", r.n, r.estimate, r.abs_error);
        out << buf;
    }
    if (rep.fitted_order) {
        std::snprintf(buf, sizeof buf, "#order=%.6f\n", *rep.fitted_order);
        out << buf;
    } else {
        out << "#order=nan\n";
    }
}

}  // namespace altquad
