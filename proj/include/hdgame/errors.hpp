#ifndef HDGAME_ERRORS_HPP
#define HDGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hdgame {

// Malformed or inconsistent input (bad files, dimension mismatches,
// invalid flags). Maps to exit code 2 in the CLI.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Valid input, but the requested computation cannot proceed.
// Maps to exit code 1 in the CLI.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A game assumption (distinct distances, injectivity) is violated.
struct assumption_error : domain_error {
  explicit assumption_error(const std::string& msg) : domain_error(msg) {}
};

// No feasible solution for the requested parameters (e.g. N outside range).
struct infeasible_error : domain_error {
  explicit infeasible_error(const std::string& msg) : domain_error(msg) {}
};

// Numerical failure: ill-conditioned solve, underflow of choice weights.
struct numeric_error : domain_error {
  explicit numeric_error(const std::string& msg) : domain_error(msg) {}
};

}  // namespace hdgame

#endif
