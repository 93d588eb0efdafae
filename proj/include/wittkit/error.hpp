#pragma once

#include <stdexcept>
#include <string>

namespace wittkit {

enum class ErrorKind {
  Usage,
  Parse,
  RingMismatch,
  NonUnit,
  SizeCap,
  PrecisionExhausted,
  InsufficientPrecision,
  NotInIR,
  UnsupportedRing,
  NonLocalRing,
  DegreeViolation,
  NotBijective,
  NotInvertible,
  InvalidZink,
  NotMinuscule,
  NotInDoubleCoset,
  SplitFailure,
  InexactDivision,  // internal: a bug if it ever surfaces
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NotInIR: return "NotInIR";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::NonLocalRing: return "NonLocalRing";
    case ErrorKind::DegreeViolation: return "DegreeViolation";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InvalidZink: return "InvalidZink";
    case ErrorKind::NotMinuscule: return "NotMinuscule";
    case ErrorKind::NotInDoubleCoset: return "NotInDoubleCoset";
    case ErrorKind::SplitFailure: return "SplitFailure";
    case ErrorKind::InexactDivision: return "InexactDivision";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_precision() const noexcept {
    return kind_ == ErrorKind::PrecisionExhausted || kind_ == ErrorKind::InsufficientPrecision;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace wittkit
