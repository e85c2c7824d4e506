#pragma once

#include <variant>
#include <vector>

#include "copeland/outcome.hpp"

namespace copeland {

/// Tie handling in subelections: ties promote / ties eliminate.
enum class TieRule { TP, TE };

/// Survivors of C1 meet all of C2 in the final.
struct CandidatePartition {
  CandidateSet first;
  CandidateSet second;
};
/// Survivors of C1 meet survivors of C2 in the final.
struct RunoffCandidatePartition {
  CandidateSet first;
  CandidateSet second;
};
/// `first_units[i]` units of ballot line i vote in V1, the rest in V2.
struct VoterPartition {
  std::vector<BigInt> first_units;
};

using Split = std::variant<CandidatePartition, RunoffCandidatePartition, VoterPartition>;

namespace detail {

inline std::vector<bool> mask_of_partition(std::size_t n, const CandidateSet& a, const CandidateSet& b,
                                           std::vector<bool>& second) {
  std::vector<bool> first(n, false);
  second.assign(n, false);
  for (auto c : a) {
    if (c >= n || first[c]) throw Error(Errc::NotAPartition, "bad or repeated candidate in C1");
    first[c] = true;
  }
  for (auto c : b) {
    if (c >= n || first[c] || second[c]) throw Error(Errc::NotAPartition, "bad or repeated candidate in C2");
    second[c] = true;
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!first[c] && !second[c]) throw Error(Errc::NotAPartition, "candidate in neither part");
  return first;
}

}  // namespace detail

inline CandidateSet survivors(const PointTable& pts, const std::vector<bool>& part, TieRule rule) {
  return pts.winners_within(part, rule == TieRule::TP ? WinnerModel::NonUnique : WinnerModel::Unique);
}

/// Final-round winners (NonUnique) of a candidate partition, index based.
/// `runoff` selects whether C2 also goes through a subelection.
inline CandidateSet two_stage_candidates(const PointTable& pts, const std::vector<bool>& first,
                                         const std::vector<bool>& second, bool runoff, TieRule rule) {
  std::vector<bool> fin(pts.size(), false);
  for (auto c : survivors(pts, first, rule)) fin[c] = true;
  if (runoff) {
    for (auto c : survivors(pts, second, rule)) fin[c] = true;
  } else {
    for (std::size_t c = 0; c < pts.size(); ++c)
      if (second[c]) fin[c] = true;
  }
  return pts.winners_within(fin, WinnerModel::NonUnique);
}

inline CandidateSet apply_model(CandidateSet w, WinnerModel model) {
  if (model == WinnerModel::Unique && w.size() != 1) w.clear();
  return w;
}

namespace detail {

inline Election voter_part(const Election& e, const std::vector<BigInt>& units, bool first) {
  std::vector<Ballot> out;
  for (std::size_t i = 0; i < e.ballots().size(); ++i) {
    const auto& b = e.ballots()[i];
    const BigInt m = first ? units[i] : BigInt(b.multiplicity() - units[i]);
    if (m > 0) out.push_back(b.with_multiplicity(m));
  }
  return e.with_ballots(std::move(out));
}

}  // namespace detail

/// Final-round winners of a voter partition: survivors of (C,V1) and (C,V2)
/// meet in a final over all of V.
inline CandidateSet two_stage_voters(const Election& e, const VoterPartition& vp, const Alpha& alpha,
                                     TieRule rule) {
  if (vp.first_units.size() != e.ballots().size()) throw Error(Errc::NotAPartition, "unit vector size");
  for (std::size_t i = 0; i < e.ballots().size(); ++i) {
    if (vp.first_units[i] < 0 || vp.first_units[i] > e.ballots()[i].multiplicity())
      throw Error(Errc::NotAPartition, "unit count out of range");
  }
  const auto n = e.size();
  const std::vector<bool> all(n, true);
  std::vector<bool> fin(n, false);
  for (bool first : {true, false}) {
    const PointTable pts(outcome_table(detail::voter_part(e, vp.first_units, first)), alpha);
    for (auto c : survivors(pts, all, rule)) fin[c] = true;
  }
  const PointTable full(outcome_table(e), alpha);
  return full.winners_within(fin, WinnerModel::NonUnique);
}

inline CandidateSet evaluate_two_stage(const Election& e, const Split& split, TieRule rule, const Alpha& alpha,
                                       WinnerModel model) {
  if (const auto* vp = std::get_if<VoterPartition>(&split)) {
    return apply_model(two_stage_voters(e, *vp, alpha, rule), model);
  }
  const bool runoff = std::holds_alternative<RunoffCandidatePartition>(split);
  const auto& [a, b] = runoff ? std::pair{std::get<RunoffCandidatePartition>(split).first,
                                          std::get<RunoffCandidatePartition>(split).second}
                              : std::pair{std::get<CandidatePartition>(split).first,
                                          std::get<CandidatePartition>(split).second};
  std::vector<bool> second;
  const auto first = detail::mask_of_partition(e.size(), a, b, second);
  const PointTable pts(outcome_table(e), alpha);
  return apply_model(two_stage_candidates(pts, first, second, runoff, rule), model);
}

}  // namespace copeland
