#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rigidlab {

/// Failure category, used by the command-line driver to pick an exit status.
enum class ErrorKind {
  Validation,   ///< malformed or out-of-contract input
  NumericGate,  ///< computation refused to protect accuracy or cost budgets
};

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define RIGIDLAB_ERROR(Name, Kind)                      \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& message)           \
        : Error(ErrorKind::Kind, #Name ": " + message) {} \
  }

RIGIDLAB_ERROR(NotUnimodular, Validation);
RIGIDLAB_ERROR(NotHyperbolic, Validation);
RIGIDLAB_ERROR(Overflow, NumericGate);
RIGIDLAB_ERROR(PrecisionLoss, NumericGate);
RIGIDLAB_ERROR(NonPositiveRoof, Validation);
RIGIDLAB_ERROR(EmptyCatalog, Validation);
RIGIDLAB_ERROR(BaseMismatch, Validation);
RIGIDLAB_ERROR(InvalidJet, Validation);
RIGIDLAB_ERROR(ResonanceAtTruncation, NumericGate);
RIGIDLAB_ERROR(StepTooSmall, Validation);
RIGIDLAB_ERROR(TiltTooLarge, Validation);
RIGIDLAB_ERROR(NonPositiveWeight, Validation);
RIGIDLAB_ERROR(NotConverged, NumericGate);
RIGIDLAB_ERROR(Inconclusive, NumericGate);
RIGIDLAB_ERROR(ToleranceAmbiguity, NumericGate);
RIGIDLAB_ERROR(CostGate, NumericGate);
RIGIDLAB_ERROR(InvalidAssignment, Validation);
RIGIDLAB_ERROR(HypothesisViolated, Validation);
RIGIDLAB_ERROR(ConfigError, Validation);

#undef RIGIDLAB_ERROR

}  // namespace rigidlab
