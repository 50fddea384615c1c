#ifndef FRACDYN_ERRORS_HPP
#define FRACDYN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fracdyn {

// Malformed user input: bad parameters, grammar errors, unreadable files.
// The CLI maps this family to exit code 2.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runtime numerical failure (non-finite values, failed root finds, ...).
// The CLI maps this family to exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma evaluated at a nonpositive integer.
struct pole_error : numeric_error {
    using numeric_error::numeric_error;
};

// Requested value exceeds double range.
struct overflow_error : numeric_error {
    using numeric_error::numeric_error;
};

// Input lies inside the documented domain but the summation cannot certify
// the advertised accuracy in double precision.
struct precision_error : numeric_error {
    using numeric_error::numeric_error;
};

// det(g) vanished at an evaluation point of a velocity Hessian.
struct singular_gram_error : numeric_error {
    singular_gram_error(const std::string& what, std::vector<double> at)
        : numeric_error(what), point(std::move(at)) {}
    std::vector<double> point;
};

// A simulated state left the open positive orthant while fractional powers
// of the state were still in play.
struct orthant_exit_error : numeric_error {
    orthant_exit_error(const std::string& what, double when)
        : numeric_error(what), time(when) {}
    double time;
};

// Integration aborted mid-run; `step` is the offending node index.
struct solver_error : numeric_error {
    solver_error(const std::string& what, std::size_t at_step, double at_time)
        : numeric_error(what), step(at_step), time(at_time) {}
    std::size_t step;
    double time;
};

} // namespace fracdyn

#endif
