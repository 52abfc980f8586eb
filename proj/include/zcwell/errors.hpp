#pragma once

#include <stdexcept>
#include <string>

namespace zcwell {

// Validation errors: the request is well-formed C++ but physically or
// structurally inadmissible.  The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// A slope discontinuity sits on a node of the wave: the cusp condition
// admits no finite strength there.
class CuspAtNodeError : public ValidationError {
public:
  explicit CuspAtNodeError(const std::string& what)
      : ValidationError("CuspAtNode", what) {}
};

// Requested waveform cannot be realised under periodic boundary conditions.
class PeriodicInfeasibleError : public ValidationError {
public:
  explicit PeriodicInfeasibleError(const std::string& what)
      : ValidationError("PeriodicInfeasible", what) {}
};

// The wave touches or crosses zero strictly inside the well, so no
// superpotential exists.
class NodeInInteriorError : public ValidationError {
public:
  explicit NodeInInteriorError(const std::string& what)
      : ValidationError("NodeInInterior", what) {}
};

// Asymmetric well parameters do not satisfy the zero-curvature condition.
class UntunedWellError : public ValidationError {
public:
  explicit UntunedWellError(const std::string& what)
      : ValidationError("UntunedWell", what) {}
};

// A delta spike does not coincide with a grid node.
class SpikeOffNodeError : public ValidationError {
public:
  explicit SpikeOffNodeError(const std::string& what)
      : ValidationError("SpikeOffNode", what) {}
};

// Numeric failures: the request is valid but an iterative scheme did not
// reach its target.  The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
  NumericError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class BracketExhaustedError : public NumericError {
public:
  explicit BracketExhaustedError(const std::string& what)
      : NumericError("BracketExhausted", what) {}
};

class EigensolveError : public NumericError {
public:
  explicit EigensolveError(const std::string& what)
      : NumericError("EigensolveFailure", what) {}
};

class QuadratureError : public NumericError {
public:
  explicit QuadratureError(const std::string& what)
      : NumericError("QuadratureFailure", what) {}
};

}  // namespace zcwell
