#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stonekit {

enum class ErrorKind {
  Cycle,
  Index,
  Size,
  Parse,
  NotALattice,
  NotDistributive,
  NotMonotone,
  NotJoinPreserving,
  NotMeetPreserving,
  BoundsViolated,
  NotT0,
  MissingSplitting,
  HypothesisFailed,
  SplitEquationFailed,
  NotAutomorphism,
  NotAGroup,
  // Internal traps: reaching one of these means a theorem the library relies
  // on was falsified by the computation, i.e. a bug.
  Internal,
  OracleMismatch,
  NotEqualizerImage,
  InvariantViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Cycle: return "CycleError";
    case ErrorKind::Index: return "IndexError";
    case ErrorKind::Size: return "SizeError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorKind::NotMeetPreserving: return "NotMeetPreserving";
    case ErrorKind::BoundsViolated: return "BoundsViolated";
    case ErrorKind::NotT0: return "NotT0";
    case ErrorKind::MissingSplitting: return "MissingSplitting";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::SplitEquationFailed: return "SplitEquationFailed";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::Internal: return "InternalError";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::NotEqualizerImage: return "NotEqualizerImage";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "UnknownError";
}

inline bool is_trap(ErrorKind kind) {
  return kind == ErrorKind::Internal || kind == ErrorKind::OracleMismatch ||
         kind == ErrorKind::NotEqualizerImage || kind == ErrorKind::InvariantViolation;
}

/// Every failure raised by the library. `witness` carries the offending
/// indices (a pair, a triple, a single point) and `which` names the violated
/// law or hypothesis where there is more than one candidate.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> witness = {},
        std::string which = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message),
        witness_(std::move(witness)),
        which_(std::move(which)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }
  const std::string& which() const noexcept { return which_; }
  bool trap() const noexcept { return is_trap(kind_); }

 private:
  ErrorKind kind_;
  std::string message_;
  std::vector<std::size_t> witness_;
  std::string which_;
};

namespace detail {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

// Throws InternalError; used for conditions that a theorem says are unreachable.
inline void ensure(bool condition, const std::string& what, std::vector<std::size_t> witness = {}) {
  if (!condition) throw Error(ErrorKind::Internal, what, std::move(witness));
}

}  // namespace detail
}  // namespace stonekit
