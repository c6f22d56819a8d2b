#pragma once

#include <stdexcept>
#include <string>

namespace altquad {

/// Malformed or invalid input data: non-finite samples, bad CSV rows,
/// non-uniform spacing, unreadable files.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which method precondition a call violated.
enum class precondition {
    degenerate_grid,       // too few subintervals for the rule
    divisibility,          // part size does not divide n
    range,                 // part size outside [2, n]
    parity,                // Simpson needs an even n
    romberg_arity,         // Romberg needs n = 2^L
    degenerate_factor,     // extrapolation factor equal to 1
    ordering,              // malformed tableau ordering
    capability,            // missing derivative / unsupported source
    insufficient_samples,  // finite-difference stencil does not fit
};

/// A method was asked to run on input it cannot handle.
class precondition_error : public std::invalid_argument {
public:
    precondition_error(precondition kind, const std::string& what)
        : std::invalid_argument(what), kind_(kind) {}

    [[nodiscard]] precondition kind() const noexcept { return kind_; }

private:
    precondition kind_;
};

}  // namespace altquad
