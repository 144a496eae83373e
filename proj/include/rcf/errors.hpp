#pragma once
#include <stdexcept>
#include <string>

namespace rcf {

// Bad input: malformed files, inconsistent parameters, degenerate scenarios.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure inside the LP/MIP machinery (cannot make progress, node
// limit hit without proof, ...).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive oracle was asked to enumerate past its configured cap.
struct OracleCapError : std::runtime_error {
  explicit OracleCapError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rcf
