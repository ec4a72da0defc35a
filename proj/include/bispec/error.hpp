#pragma once

#include <stdexcept>
#include <string>

namespace bispec {

enum class ErrorKind {
  InvalidArgument,
  DegreeMismatch,
  BalanceViolation,
  DuplicateEdge,
  DegenerateScaling,
  RejectionBudgetExceeded,
  SeedConstructionFailed,
  TooLarge,
  HorizonTooLarge,
  PreconditionViolated,
  EdgeMissing,
  Overflow,
  NonDecayingCoefficients,
  SolverFailure,
  DuplicateHyperedge,
  InvalidHypergraph,
  InvariantViolated,
  Io,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::BalanceViolation: return "BalanceViolation";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::DegenerateScaling: return "DegenerateScaling";
    case ErrorKind::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorKind::SeedConstructionFailed: return "SeedConstructionFailed";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::EdgeMissing: return "EdgeMissing";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonDecayingCoefficients: return "NonDecayingCoefficients";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::DuplicateHyperedge: return "DuplicateHyperedge";
    case ErrorKind::InvalidHypergraph: return "InvalidHypergraph";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bispec
