#pragma once

#include <stdexcept>
#include <string>

namespace qvdb {

// Thrown when the dense-unitary path or a decomposition would exceed the
// desk-scale qubit guards.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown by the QASM exporter for gates outside its whitelist.
struct UnsupportedGateError : std::runtime_error {
  explicit UnsupportedGateError(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when database JSON cannot be parsed at all. Structural problems
// (bad keys, width mismatches) raise std::invalid_argument instead.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qvdb
