#pragma once

#include <stdexcept>
#include <string>

namespace arvex {

/// Bad caller input: shape mismatch, parse failure, violated precondition.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Optimizer failed to converge or to certify a decision.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural guarantee was violated at runtime; indicates a numerical
/// rank misjudgment rather than bad input.
class InternalError : public std::runtime_error {
public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arvex
