#pragma once

#include <stdexcept>
#include <string>

namespace bsnoma {

/// Precondition or argument-range violation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The optimization problem has no feasible point. `constraint()` names the
/// constraint that could not be met (e.g. "C1", "C5[2]", "sic-gap").
class InfeasibleProblem : public std::runtime_error {
 public:
  InfeasibleProblem(std::string constraint, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Configuration file problem; `key()` is the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A numerical routine produced a non-finite or otherwise unusable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsnoma
