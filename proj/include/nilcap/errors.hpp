#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilcap {

// Base for all arithmetic/structure failures surfaced to the CLI as exit code 3.
struct computation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A group-regime hypothesis was violated (wrong prime, wrong class, bad orders).
struct regime_error : computation_error {
  using computation_error::computation_error;
};

// An enumeration exceeded its element cap.
struct cap_error : computation_error {
  using computation_error::computation_error;
};

// Element-expression syntax error; carries the offset into the input string.
struct parse_error : computation_error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : computation_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace nilcap
