#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace altquad::cli {

namespace {

struct raw_options {
    std::string input;
    std::string function;
    std::string a;
    std::string b;
    int n = 0;
    std::string method = "alt";
    std::string ordering = "default";
    std::string output = "human";
    int precision = 10;
    bool show_omega = false;
    std::string n_list;
    std::string study_method = "alt";
};

void configure(CLI::App& app, raw_options& raw) {
    app.description("Integrate equally spaced samples with the alternative extrapolated "
                    "trapezoid estimator or classical Romberg.");
    app.add_option("--input", raw.input, "CSV file of x,f rows");
    app.add_option("--function", raw.function, "catalog integrand (poly7, sin, x0..x9, exp, runge)");
    app.add_option("--a", raw.a, "left endpoint (real or multiple of pi)");
    app.add_option("--b", raw.b, "right endpoint (real or multiple of pi)");
    app.add_option("--n", raw.n, "number of subintervals");
    app.add_option("--method", raw.method, "alt|romberg|trap|simpson|compare|convergence")
        ->check(CLI::IsMember({"alt", "romberg", "trap", "simpson", "compare", "convergence"}));
    app.add_option("--ordering", raw.ordering,
                   "default|paper-table-2|paper-table-4|comma list of part sizes");
    app.add_option("--output", raw.output, "human|csv")->check(CLI::IsMember({"human", "csv"}));
    app.add_option("--precision", raw.precision, "printed decimal places")
        ->check(CLI::Range(1, 30));
    app.add_flag("--show-omega", raw.show_omega, "print the extrapolation factor of every cell");
    app.add_option("--n-list", raw.n_list, "convergence: ascending comma list of n");
    app.add_option("--study-method", raw.study_method,
                   "convergence: trap|composite-trap|simpson|alt|alt-tableau-depth-K|"
                   "alt-tableau-fixed:m1,m2");
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw usage_error(std::string("bad ") + what + " entry '" + item + "'");
        }
        if (used != item.size()) throw usage_error(std::string("bad ") + what + " entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw usage_error(std::string(what) + " is empty");
    return out;
}

run_method to_method(const std::string& s) {
    if (s == "alt") return run_method::alt;
    if (s == "romberg") return run_method::romberg;
    if (s == "trap") return run_method::trap;
    if (s == "simpson") return run_method::simpson;
    if (s == "compare") return run_method::compare;
    return run_method::convergence;
}

run_config to_config(const raw_options& raw, const CLI::App& app) {
    run_config cfg;
    const bool has_input = app.count("--input") > 0;
    const bool has_function = app.count("--function") > 0;
    if (has_input == has_function)
        throw usage_error("give exactly one of --input or --function");

    cfg.method = to_method(raw.method);

    if (has_input) {
        for (const char* flag : {"--a", "--b", "--n"}) {
            if (app.count(flag) > 0)
                throw usage_error(std::string(flag) + " only applies to --function sources");
        }
        cfg.source = csv_source{raw.input};
    } else {
        const catalog_function* fn = nullptr;
        try {
            fn = &find_function(raw.function);
        } catch (const std::out_of_range& e) {
            throw usage_error(e.what());
        }
        catalog_source src{fn->name, fn->default_a, fn->default_b, 0};
        if (app.count("--a") > 0) src.a = parse_endpoint(raw.a);
        if (app.count("--b") > 0) src.b = parse_endpoint(raw.b);
        if (app.count("--n") > 0) {
            if (raw.n < 1) throw usage_error("--n must be positive");
            src.n = raw.n;
        } else if (cfg.method != run_method::convergence) {
            throw usage_error("--function sources need --n");
        }
        cfg.source = src;
    }

    if (raw.ordering == "default")
        cfg.ordering = ordering_preset::by_default;
    else if (raw.ordering == "paper-table-2")
        cfg.ordering = ordering_preset::paper_table_2;
    else if (raw.ordering == "paper-table-4")
        cfg.ordering = ordering_preset::paper_table_4;
    else
        cfg.ordering = parse_int_list(raw.ordering, "--ordering");

    cfg.output = raw.output == "csv" ? output_format::csv : output_format::human;
    cfg.precision = raw.precision;
    cfg.show_omega = raw.show_omega;
    if (app.count("--n-list") > 0) cfg.n_list = parse_int_list(raw.n_list, "--n-list");
    cfg.study_method = raw.study_method;
    try {
        (void)parse_study_method(cfg.study_method);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    return cfg;
}

std::string label(const estimate& e) {
    if (e.sig.p == e.sig.q) return "A_" + std::to_string(e.sig.p);
    return "A_{" + std::to_string(e.sig.p) + "," + std::to_string(e.sig.q) + "}";
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

// Rows are labelled; row r holds cells[r][0..].
void print_grid_table(std::ostream& out, const std::string& corner,
                      const std::vector<std::string>& headers,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::vector<std::string>>& cells) {
    std::size_t label_w = corner.size();
    for (const auto& l : row_labels) label_w = std::max(label_w, l.size());
    std::size_t cell_w = 0;
    for (const auto& h : headers) cell_w = std::max(cell_w, h.size());
    for (const auto& row : cells)
        for (const auto& c : row) cell_w = std::max(cell_w, c.size());
    label_w += 2;
    cell_w += 2;

    out << pad_right(corner, label_w);
    for (const auto& h : headers) out << pad_left(h, cell_w);
    out << '\n';
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out << pad_right(row_labels[r], label_w);
        for (const auto& c : cells[r]) out << pad_left(c, cell_w);
        out << '\n';
    }
}

void print_alt_tableau(std::ostream& out, const uniform_grid& grid, const extrapolation_tableau& t,
                       const run_config& cfg) {
    const int p = cfg.precision;
    if (cfg.output == output_format::csv) {
        out << "column,row,p,q,value\n";
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            for (std::size_t i = 0; i < t.columns[j].size(); ++i) {
                const auto& e = t.columns[j][i];
                out << j << ',' << i << ',' << e.sig.p << ',' << e.sig.q << ','
                    << format_fixed(e.value, p) << '\n';
            }
        return;
    }

    std::string ord;
    for (std::size_t i = 0; i < t.ordering.size(); ++i)
        ord += (i ? "," : "") + std::to_string(t.ordering[i]);
    out << "alt tableau: n = " << grid.n() << ", h = " << format_fixed(grid.h(), p)
        << ", ordering " << ord << '\n';

    std::vector<std::string> headers;
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        headers.push_back("O(n^2h^" + std::to_string(4 + 2 * j) + ")");
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells(t.ordering.size());
    for (std::size_t i = 0; i < t.ordering.size(); ++i) {
        labels.push_back(label(t.columns[0][i]));
        for (std::size_t j = 0; i + j < t.ordering.size(); ++j)
            cells[i].push_back(format_fixed(t.columns[j][i].value, p));
    }
    print_grid_table(out, "Error", headers, labels, cells);

    if (cfg.show_omega && t.columns.size() > 1) {
        out << "extrapolation factors:\n";
        for (std::size_t j = 1; j < t.columns.size(); ++j)
            for (std::size_t i = 0; i < t.columns[j].size(); ++i) {
                const auto w = t.omega_at(static_cast<int>(j), static_cast<int>(i));
                const std::string om =
                    "(" + std::to_string(w.num) + "/" + std::to_string(w.den) + ")^2";
                out << "  " << label(t.columns[j][i]) << " = (" << om << " "
                    << label(t.columns[j - 1][i + 1]) << " - " << label(t.columns[j - 1][i])
                    << ") / (" << om << " - 1)\n";
            }
    }
    out << "final " << label(t.final()) << " = " << format_fixed(t.final().value, p) << '\n';
    out << "approximations: " << t.cell_count() << '\n';
}

void print_romberg(std::ostream& out, const uniform_grid& grid, const romberg_tableau& t,
                   const run_config& cfg) {
    const int p = cfg.precision;
    if (cfg.output == output_format::csv) {
        out << "row,column,value\n";
        for (std::size_t i = 0; i < t.cells.size(); ++i)
            for (std::size_t j = 0; j < t.cells[i].size(); ++j)
                out << i << ',' << j << ',' << format_fixed(t.cells[i][j], p) << '\n';
        return;
    }
    out << "romberg tableau: n = " << grid.n() << ", levels = " << t.levels << '\n';
    std::vector<std::string> headers;
    for (int j = 0; j <= t.levels; ++j) headers.push_back("O(h^" + std::to_string(2 + 2 * j) + ")");
    // Row r starts at the trapezoid with step (b-a)/2^r and runs along the
    // diagonal R[r+j][j].
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(t.levels) + 1);
    for (int r = 0; r <= t.levels; ++r) {
        labels.push_back(format_fixed((grid.b() - grid.a()) / std::ldexp(1.0, r), p));
        for (int j = 0; r + j <= t.levels; ++j)
            cells[static_cast<std::size_t>(r)].push_back(
                format_fixed(t.cells[static_cast<std::size_t>(r + j)][static_cast<std::size_t>(j)], p));
    }
    print_grid_table(out, "h", headers, labels, cells);
    out << "final = " << format_fixed(t.final(), p) << '\n';
    out << "approximations: " << t.cell_count() << '\n';
}

void print_error_model(std::ostream& out, const run_config& cfg, const uniform_grid& grid) {
    if (cfg.output != output_format::human || grid.n() < 2) return;
    if (const auto* src = std::get_if<catalog_source>(&cfg.source)) {
        const auto& fn = find_function(src->name);
        if (!fn.has_third_derivative()) return;
        const double exact = fn.integral(grid.a(), grid.b());
        out << "exact integral = " << format_fixed(exact, cfg.precision) << '\n';
        out << "leading error of A_" << grid.n() << " (predicted) = "
            << format_fixed(predicted_alpha(fn, grid.a(), grid.b(), grid.n()), cfg.precision)
            << '\n';
    } else if (grid.n() >= 5) {
        out << "leading error of A_" << grid.n() << " (finite-difference f''') = "
            << format_fixed(predicted_alpha_fd(grid), cfg.precision) << '\n';
    }
}

}  // namespace

double parse_endpoint(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    auto to_real = [&](const std::string& part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw usage_error("bad endpoint '" + text + "'");
        }
        if (used != part.size() || !std::isfinite(v)) throw usage_error("bad endpoint '" + text + "'");
        return v;
    };
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string coef = s.substr(0, s.size() - 2);
        if (!coef.empty() && coef.back() == '*') coef.pop_back();
        if (coef.empty() || coef == "+") return std::numbers::pi;
        if (coef == "-") return -std::numbers::pi;
        return to_real(coef) * std::numbers::pi;
    }
    return to_real(s);
}

std::vector<int> resolve_ordering(const ordering_spec& spec, int n) {
    std::vector<int> ordering;
    if (const auto* list = std::get_if<std::vector<int>>(&spec)) {
        ordering = *list;
    } else {
        switch (std::get<ordering_preset>(spec)) {
            case ordering_preset::by_default:
                ordering = default_ordering(n);
                break;
            case ordering_preset::paper_table_2:
                if (n % 12 != 0)
                    throw precondition_error(precondition::ordering,
                                             "paper-table-2 ordering needs n divisible by 12, got n = " +
                                                 std::to_string(n));
                ordering = {n, n / 2, n / 6, n / 4, n / 3};
                break;
            case ordering_preset::paper_table_4:
                if (!is_power_of_two(n) || n < 4)
                    throw precondition_error(precondition::ordering,
                                             "paper-table-4 ordering needs n = 2^L >= 4, got n = " +
                                                 std::to_string(n));
                ordering = {n};
                for (int m = 2; m < n; m *= 2) ordering.push_back(m);
                break;
        }
    }
    validate_ordering(n, ordering);
    return ordering;
}

std::string format_fixed(double value, int precision) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

uniform_grid load_grid(const run_config& config) {
    if (const auto* csv = std::get_if<csv_source>(&config.source)) return read_csv(csv->path);
    const auto& src = std::get<catalog_source>(config.source);
    return sample(find_function(src.name), src.a, src.b, src.n);
}

int cmd_integrate(const run_config& cfg, std::ostream& out) {
    const auto grid = load_grid(cfg);
    const int p = cfg.precision;
    switch (cfg.method) {
        case run_method::alt: {
            detail::require_alt_n(grid.n());
            const auto ordering = resolve_ordering(cfg.ordering, grid.n());
            const auto t = build_alt_tableau(grid, ordering);
            print_alt_tableau(out, grid, t, cfg);
            print_error_model(out, cfg, grid);
            break;
        }
        case run_method::romberg:
            print_romberg(out, grid, build_romberg_tableau(grid), cfg);
            break;
        case run_method::trap: {
            const auto t1 = trapezoid(grid);
            const auto tn = composite_trapezoid(grid);
            if (cfg.output == output_format::csv) {
                out << "method,value\n"
                    << "trapezoid," << format_fixed(t1.value, p) << '\n'
                    << "composite-trapezoid," << format_fixed(tn.value, p) << '\n';
            } else {
                out << "trapezoid = " << format_fixed(t1.value, p) << '\n'
                    << "composite trapezoid (n = " << grid.n() << ") = " << format_fixed(tn.value, p)
                    << '\n';
            }
            break;
        }
        case run_method::simpson: {
            std::vector<estimate> results;
            if (grid.n() % 2 == 0) results.push_back(simpson(grid));
            if (grid.n() % 3 == 0) results.push_back(simpson38(grid));
            if (results.empty())
                throw precondition_error(precondition::divisibility,
                                         "simpson needs n divisible by 2 or 3, got n = " +
                                             std::to_string(grid.n()));
            if (cfg.output == output_format::csv) out << "method,value\n";
            for (const auto& e : results) {
                if (cfg.output == output_format::csv)
                    out << to_string(e.kind) << ',' << format_fixed(e.value, p) << '\n';
                else
                    out << to_string(e.kind) << " = " << format_fixed(e.value, p) << '\n';
            }
            break;
        }
        case run_method::compare: return cmd_compare(cfg, out);
        case run_method::convergence: return cmd_convergence(cfg, out);
    }
    return success;
}

int cmd_compare(const run_config& cfg, std::ostream& out) {
    const auto grid = load_grid(cfg);
    if (!is_power_of_two(grid.n()) || grid.n() < 4)
        throw precondition_error(precondition::romberg_arity,
                                 "compare needs n to be a power of two >= 4, got n = " +
                                     std::to_string(grid.n()));
    const auto ordering = resolve_ordering(cfg.ordering, grid.n());
    const auto alt = build_alt_tableau(grid, ordering);
    const auto rom = build_romberg_tableau(grid);
    const double diff = std::abs(alt.final().value - rom.final());
    const int p = cfg.precision;
    if (cfg.output == output_format::csv) {
        out << "method,final,approximations\n"
            << "alt," << format_fixed(alt.final().value, p) << ',' << alt.cell_count() << '\n'
            << "romberg," << format_fixed(rom.final(), p) << ',' << rom.cell_count() << '\n';
        char buf[64];
        std::snprintf(buf, sizeof buf, "#difference=%.17g\n", diff);
        out << buf;
        return success;
    }
    print_alt_tableau(out, grid, alt, cfg);
    out << '\n';
    print_romberg(out, grid, rom, cfg);
    out << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", diff);
    out << "alt final     = " << format_fixed(alt.final().value, p) << "  (" << alt.cell_count()
        << " approximations)\n"
        << "romberg final = " << format_fixed(rom.final(), p) << "  (" << rom.cell_count()
        << " approximations)\n"
        << "|difference|  = " << buf << '\n';
    return success;
}

int cmd_convergence(const run_config& cfg, std::ostream& out) {
    const auto* src = std::get_if<catalog_source>(&cfg.source);
    if (src == nullptr)
        throw precondition_error(precondition::capability,
                                 "convergence needs a catalog function; csv data cannot be resampled");
    const auto& fn = find_function(src->name);
    const auto rep =
        convergence_study(fn, src->a, src->b, cfg.n_list, parse_study_method(cfg.study_method));
    if (cfg.output == output_format::csv) {
        write_report_csv(out, rep);
        return success;
    }
    out << "convergence of " << rep.method << " on " << rep.function << " over ["
        << format_fixed(src->a, cfg.precision) << ", " << format_fixed(src->b, cfg.precision)
        << "]\n";
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rep.rows) {
        labels.push_back(std::to_string(r.n));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", r.abs_error);
        cells.push_back({format_fixed(r.estimate, cfg.precision), buf});
    }
    print_grid_table(out, "n", {"estimate", "abs_error"}, labels, cells);
    if (rep.fitted_order) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *rep.fitted_order);
        out << "fitted order = " << buf << '\n';
    } else {
        out << "fitted order = n/a (errors at round-off level)\n";
    }
    return success;
}

run_config parse_args(const std::vector<std::string>& args) {
    CLI::App app{"altquad"};
    raw_options raw;
    configure(app, raw);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what());
    }
    return to_config(raw, app);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const auto cfg = parse_args(args);
        switch (cfg.method) {
            case run_method::compare: return cmd_compare(cfg, out);
            case run_method::convergence: return cmd_convergence(cfg, out);
            default: return cmd_integrate(cfg, out);
        }
    } catch (const CLI::CallForHelp&) {
        CLI::App app{"altquad"};
        raw_options raw;
        configure(app, raw);
        out << app.help();
        return success;
    } catch (const usage_error& e) {
        err << "altquad: usage error: " << e.what() << '\n';
        return usage_failure;
    } catch (const precondition_error& e) {
        err << "altquad: method precondition failed: " << e.what() << '\n';
        return method_failure;
    } catch (const data_error& e) {
        err << "altquad: data error: " << e.what() << '\n';
        return data_failure;
    } catch (const std::exception& e) {
        err << "altquad: error: " << e.what() << '\n';
        return data_failure;
    }
}

}  // namespace altquad::cli
