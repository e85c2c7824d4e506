#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace copeland {

enum class Errc {
  UnknownCandidate,
  SameCandidate,
  EmptyCandidateSet,
  NotAPartition,
  InvalidAlpha,
  InvalidElection,
  InvalidGoal,
  InfeasibleSpec,
  NameClash,
  AlphaOutOfRange,
  EmptyGraph,
  BudgetExceeded,
  MalformedInstance,
  NotIrrational,
  WrongProblem,
  BoundViolated,
  SyntaxError,
  DuplicateCandidate,
  IncompleteTable,
  BadMultiplicity,
  BadVertex,
  DuplicateEdge,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::UnknownCandidate: return "UnknownCandidate";
    case Errc::SameCandidate: return "SameCandidate";
    case Errc::EmptyCandidateSet: return "EmptyCandidateSet";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::InvalidAlpha: return "InvalidAlpha";
    case Errc::InvalidElection: return "InvalidElection";
    case Errc::InvalidGoal: return "InvalidGoal";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
    case Errc::NameClash: return "NameClash";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::MalformedInstance: return "MalformedInstance";
    case Errc::NotIrrational: return "NotIrrational";
    case Errc::WrongProblem: return "WrongProblem";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateCandidate: return "DuplicateCandidate";
    case Errc::IncompleteTable: return "IncompleteTable";
    case Errc::BadMultiplicity: return "BadMultiplicity";
    case Errc::BadVertex: return "BadVertex";
    case Errc::DuplicateEdge: return "DuplicateEdge";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception type; the
/// code identifies the failure class, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace copeland
