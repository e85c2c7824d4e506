#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "copeland/goal.hpp"
#include "copeland/realize.hpp"
#include "copeland/two_stage.hpp"

namespace copeland {

enum class ControlType { ACu, AC, DC, PC, RPC, AV, DV, PV };

struct Problem {
  bool constructive = true;
  ControlType type = ControlType::DC;
  TieRule rule = TieRule::TP;  // partition types only

  bool is_partition() const { return type == ControlType::PC || type == ControlType::RPC || type == ControlType::PV; }
  bool is_candidate_control() const {
    return type == ControlType::ACu || type == ControlType::AC || type == ControlType::DC || type == ControlType::PC ||
           type == ControlType::RPC;
  }
  bool is_voter_control() const { return !is_candidate_control(); }
  bool needs_spoilers() const { return type == ControlType::ACu || type == ControlType::AC; }
  bool needs_pool() const { return type == ControlType::AV; }
  bool bounded() const { return type == ControlType::AC || type == ControlType::DC || type == ControlType::AV || type == ControlType::DV; }

  /// "CCAC_u", "DCRPC-TE", ...
  std::string code() const {
    std::string s = constructive ? "CC" : "DC";
    switch (type) {
      case ControlType::ACu: s += "AC_u"; break;
      case ControlType::AC: s += "AC"; break;
      case ControlType::DC: s += "DC"; break;
      case ControlType::PC: s += "PC"; break;
      case ControlType::RPC: s += "RPC"; break;
      case ControlType::AV: s += "AV"; break;
      case ControlType::DV: s += "DV"; break;
      case ControlType::PV: s += "PV"; break;
    }
    if (is_partition()) s += rule == TieRule::TP ? "-TP" : "-TE";
    return s;
  }

  /// Inverse of code(); also accepts "AC_u" spelled "ACu" and RPV as an alias of PV.
  static Problem parse(std::string_view text) {
    std::string s(text);
    Problem pr;
    if (s.rfind("CC", 0) == 0) pr.constructive = true;
    else if (s.rfind("DC", 0) == 0) pr.constructive = false;
    else throw Error(Errc::MalformedInstance, "unknown problem '" + s + "'");
    s = s.substr(2);
    std::optional<TieRule> rule;
    if (s.size() > 3 && (s.ends_with("-TP") || s.ends_with("-TE"))) {
      rule = s.ends_with("-TP") ? TieRule::TP : TieRule::TE;
      s = s.substr(0, s.size() - 3);
    }
    if (s == "AC_u" || s == "ACu") pr.type = ControlType::ACu;
    else if (s == "AC") pr.type = ControlType::AC;
    else if (s == "DC") pr.type = ControlType::DC;
    else if (s == "PC") pr.type = ControlType::PC;
    else if (s == "RPC") pr.type = ControlType::RPC;
    else if (s == "AV") pr.type = ControlType::AV;
    else if (s == "DV") pr.type = ControlType::DV;
    else if (s == "PV" || s == "RPV") pr.type = ControlType::PV;
    else throw Error(Errc::MalformedInstance, "unknown problem '" + std::string(text) + "'");
    if (pr.is_partition() != rule.has_value())
      throw Error(Errc::MalformedInstance, "tie rule suffix mismatch in '" + std::string(text) + "'");
    if (rule) pr.rule = *rule;
    return pr;
  }

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// A control decision problem. `election` (or `pattern`, for generated
/// instances whose ballots are never materialized) ranges over C together
/// with the spoiler candidates D; `voter_pool` ballots range over the same
/// candidate list.
struct ControlInstance {
  Problem problem;
  WinnerModel model = WinnerModel::NonUnique;
  Alpha alpha;
  Election election;
  std::optional<DesiredOutcomes> pattern;
  std::vector<std::string> spoiler_candidates;
  std::vector<Ballot> voter_pool;
  std::optional<BigInt> k;
  std::string p;
  std::optional<GoalSpec> goal;

  const std::vector<std::string>& candidates() const {
    return pattern ? pattern->names() : election.candidates();
  }

  GoalSpec effective_goal() const { return goal ? *goal : default_goal(p, problem.constructive, model); }

  /// Outcome table over C and D.
  OutcomeTable full_table() const { return pattern ? mcgarvey_table(*pattern) : outcome_table(election); }

  /// The election with ballots, realizing `pattern` when needed.
  Election materialized() const { return pattern ? realize_outcomes(*pattern) : election; }

  std::vector<bool> spoiler_mask() const {
    const auto& names = candidates();
    std::vector<bool> m(names.size(), false);
    for (const auto& d : spoiler_candidates) {
      bool found = false;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == d) m[i] = found = true;
      if (!found) throw Error(Errc::MalformedInstance, "unknown spoiler '" + d + "'");
    }
    return m;
  }

  void validate() const {
    const auto& names = candidates();
    if (pattern && problem.is_voter_control())
      throw Error(Errc::MalformedInstance, "voter control needs explicit ballots");
    if (!problem.needs_spoilers() && !spoiler_candidates.empty())
      throw Error(Errc::MalformedInstance, problem.code() + " takes no spoiler candidates");
    if (!problem.needs_pool() && !voter_pool.empty())
      throw Error(Errc::MalformedInstance, problem.code() + " takes no voter pool");
    if (problem.bounded() != k.has_value())
      throw Error(Errc::MalformedInstance, problem.code() + (problem.bounded() ? " needs k" : " takes no k"));
    if (k && *k < 0) throw Error(Errc::MalformedInstance, "negative k");
    const auto spoilers = spoiler_mask();
    bool p_found = false;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == p) {
        p_found = true;
        if (spoilers[i]) throw Error(Errc::MalformedInstance, "p must be a registered candidate");
      }
    if (!p_found) throw Error(Errc::UnknownCandidate, "p = '" + p + "'");
    for (const auto& b : voter_pool) {
      // Reuse Election's ballot validation.
      (void)Election(names, {b});
    }
    BoundGoal(effective_goal(), names);
  }
};

struct AddedCandidates {
  std::vector<std::string> names;
  friend bool operator==(const AddedCandidates&, const AddedCandidates&) = default;
};
struct DeletedCandidates {
  std::vector<std::string> names;
  friend bool operator==(const DeletedCandidates&, const DeletedCandidates&) = default;
};
struct PartitionOfCandidates {
  std::vector<std::string> first;
  std::vector<std::string> second;
  friend bool operator==(const PartitionOfCandidates&, const PartitionOfCandidates&) = default;
};
/// units[i] copies of voter-pool line i are added.
struct AddedVoters {
  std::vector<BigInt> units;
  friend bool operator==(const AddedVoters&, const AddedVoters&) = default;
};
/// units[i] copies of election ballot line i are deleted.
struct DeletedVoters {
  std::vector<BigInt> units;
  friend bool operator==(const DeletedVoters&, const DeletedVoters&) = default;
};
struct PartitionOfVoters {
  std::vector<BigInt> first_units;
  friend bool operator==(const PartitionOfVoters&, const PartitionOfVoters&) = default;
};
/// Each entry bribes one unit voter of ballot line `line` into `replacement`.
struct BribedBallots {
  std::vector<std::pair<std::size_t, Ballot>> changes;
  friend bool operator==(const BribedBallots&, const BribedBallots&) = default;
};
/// `units` unit voters of table line `line` switch their {a,b} entry to a > b.
struct Flip {
  std::size_t line;
  CandidateIndex a;
  CandidateIndex b;
  BigInt units = 1;
  friend bool operator==(const Flip&, const Flip&) = default;
};
struct Flips {
  std::vector<Flip> flips;
  friend bool operator==(const Flips&, const Flips&) = default;
};

using Witness = std::variant<AddedCandidates, DeletedCandidates, PartitionOfCandidates, AddedVoters, DeletedVoters,
                             PartitionOfVoters, BribedBallots, Flips>;

struct Decision {
  bool yes = false;
  std::optional<Witness> witness;

  static Decision no() { return {}; }
  static Decision yes_with(Witness w) { return {true, std::move(w)}; }
};

/// Guards on exhaustive search.
struct SizeLimits {
  std::size_t max_candidates = 4096;
  std::size_t max_voters = 64;               // unit voters touched by voter searches
  std::uint64_t max_subsets = 200'000'000;   // enumerated actions / search nodes
};

}  // namespace copeland
