#ifndef CORRTHERM_ERRORS_HPP
#define CORRTHERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corrtherm {

/// Invalid configuration or violated operation precondition (CLI exit code 4).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested computation exceeds its enumeration/memory budget (CLI exit code 3).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical routine failed to meet its tolerance (root finder, overflow, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A runtime verification found a counterexample; carries the witness in the message.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corrtherm

#endif
