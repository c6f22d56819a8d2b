#pragma once

// Command-line front end for the altquad library.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "altquad/altquad.hpp"

namespace altquad::cli {

enum exit_code : int {
    success = 0,
    usage_failure = 2,
    data_failure = 3,
    method_failure = 4,
};

/// Bad flags or flag values.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct csv_source {
    std::string path;
};

struct catalog_source {
    std::string name;
    double a = 0.0;
    double b = 1.0;
    int n = 0;  // 0: not given
};

enum class run_method { alt, romberg, trap, simpson, compare, convergence };
enum class ordering_preset { by_default, paper_table_2, paper_table_4 };
enum class output_format { human, csv };

using ordering_spec = std::variant<ordering_preset, std::vector<int>>;

struct run_config {
    std::variant<csv_source, catalog_source> source;
    run_method method = run_method::alt;
    ordering_spec ordering = ordering_preset::by_default;
    output_format output = output_format::human;
    int precision = 10;
    bool show_omega = false;
    std::vector<int> n_list{4, 8, 16, 32, 64};
    std::string study_method = "alt";
};

/// Parses argv-style arguments (without the program name). Throws usage_error.
run_config parse_args(const std::vector<std::string>& args);

/// Accepts plain reals and multiples of pi: "pi", "2pi", "-0.5*pi".
double parse_endpoint(const std::string& text);

/// Concrete tableau ordering for a grid of n subintervals.
std::vector<int> resolve_ordering(const ordering_spec& spec, int n);

/// Fixed-point text with `precision` decimals; never prints "-0.000".
std::string format_fixed(double value, int precision);

uniform_grid load_grid(const run_config& config);

int cmd_integrate(const run_config& config, std::ostream& out);
int cmd_compare(const run_config& config, std::ostream& out);
int cmd_convergence(const run_config& config, std::ostream& out);

/// Full pipeline: parse, dispatch, map failures to exit codes with a
/// one-line diagnostic on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altquad::cli
