#pragma once

#include <map>

#include "copeland/instance.hpp"

namespace copeland {

namespace detail {

inline std::map<std::string, CandidateIndex> name_index(const std::vector<std::string>& names) {
  std::map<std::string, CandidateIndex> m;
  for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = i;
  return m;
}

/// Goal check on the sub-election of `table` over `present` (universe indexed).
inline bool goal_on_subset(const BoundGoal& goal, const OutcomeTable& table, const std::vector<bool>& present,
                           const CandidateSet& winners_override, bool use_override, const Alpha& alpha) {
  CandidateSet subset;
  for (std::size_t i = 0; i < present.size(); ++i)
    if (present[i]) subset.push_back(i);
  const auto sub = table.restricted(subset);
  const auto sub_scores = copeland_scores(sub, alpha);
  std::vector<std::int64_t> scaled(present.size(), 0);
  for (std::size_t x = 0; x < subset.size(); ++x) scaled[subset[x]] = sub_scores.scaled[x];
  CandidateSet w;
  if (use_override) {
    w = winners_override;
  } else if (!subset.empty()) {
    for (auto x : winners_of_scores(sub_scores.scaled, WinnerModel::NonUnique)) w.push_back(subset[x]);
  }
  return goal.holds(present, scaled, w, alpha, [&] { return sub; });
}

inline Election add_pool_units(const Election& e, const std::vector<Ballot>& pool, const std::vector<BigInt>& units) {
  auto ballots = e.ballots();
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (units[i] > 0) ballots.push_back(pool[i].with_multiplicity(units[i]));
  return e.with_ballots(std::move(ballots));
}

inline Election remove_units(const Election& e, const std::vector<BigInt>& units) {
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < e.ballots().size(); ++i) {
    const BigInt m = e.ballots()[i].multiplicity() - units[i];
    if (m > 0) ballots.push_back(e.ballots()[i].with_multiplicity(m));
  }
  return e.with_ballots(std::move(ballots));
}

}  // namespace detail

/// Re-applies a control witness to the instance and evaluates the goal on the
/// result. This path works on whole elections/tables and shares no search
/// state with the solvers, so it serves as their independent checker.
inline bool check_control_witness(const ControlInstance& inst, const Witness& w) {
  inst.validate();
  const auto& names = inst.candidates();
  const auto idx = detail::name_index(names);
  const BoundGoal goal(inst.effective_goal(), names);
  const auto spoilers = inst.spoiler_mask();
  const auto n = names.size();
  auto lookup = [&](const std::string& name) {
    auto it = idx.find(name);
    if (it == idx.end()) throw Error(Errc::UnknownCandidate, name);
    return it->second;
  };
  const auto type = inst.problem.type;

  if (inst.problem.is_candidate_control()) {
    const auto table = inst.full_table();
    std::vector<bool> present(n);
    for (std::size_t i = 0; i < n; ++i) present[i] = !spoilers[i];
    if (type == ControlType::ACu || type == ControlType::AC) {
      const auto* add = std::get_if<AddedCandidates>(&w);
      if (!add) return false;
      if (type == ControlType::AC && BigInt(add->names.size()) > *inst.k) return false;
      for (const auto& d : add->names) {
        const auto c = lookup(d);
        if (!spoilers[c] || present[c]) return false;
        present[c] = true;
      }
      return detail::goal_on_subset(goal, table, present, {}, false, inst.alpha);
    }
    if (type == ControlType::DC) {
      const auto* del = std::get_if<DeletedCandidates>(&w);
      if (!del || BigInt(del->names.size()) > *inst.k) return false;
      for (const auto& d : del->names) {
        const auto c = lookup(d);
        if (d == inst.p || !present[c]) return false;
        present[c] = false;
      }
      return detail::goal_on_subset(goal, table, present, {}, false, inst.alpha);
    }
    const auto* part = std::get_if<PartitionOfCandidates>(&w);
    if (!part) return false;
    CandidateSet a, b;
    for (const auto& x : part->first) a.push_back(lookup(x));
    for (const auto& x : part->second) b.push_back(lookup(x));
    std::vector<bool> second;
    const auto first = detail::mask_of_partition(n, a, b, second);
    const PointTable pts(table, inst.alpha);
    std::vector<bool> fin(n, false);
    for (auto c : survivors(pts, first, inst.problem.rule)) fin[c] = true;
    if (type == ControlType::RPC) {
      for (auto c : survivors(pts, second, inst.problem.rule)) fin[c] = true;
    } else {
      for (std::size_t c = 0; c < n; ++c)
        if (second[c]) fin[c] = true;
    }
    return detail::goal_on_subset(goal, table, fin, {}, false, inst.alpha);
  }

  const auto& e = inst.election;
  const std::vector<bool> all(n, true);
  if (type == ControlType::AV) {
    const auto* add = std::get_if<AddedVoters>(&w);
    if (!add || add->units.size() != inst.voter_pool.size()) return false;
    BigInt used = 0;
    for (std::size_t i = 0; i < add->units.size(); ++i) {
      if (add->units[i] < 0 || add->units[i] > inst.voter_pool[i].multiplicity()) return false;
      used += add->units[i];
    }
    if (used > *inst.k) return false;
    const auto after = detail::add_pool_units(e, inst.voter_pool, add->units);
    return detail::goal_on_subset(goal, outcome_table(after), all, {}, false, inst.alpha);
  }
  if (type == ControlType::DV) {
    const auto* del = std::get_if<DeletedVoters>(&w);
    if (!del || del->units.size() != e.ballots().size()) return false;
    BigInt used = 0;
    for (std::size_t i = 0; i < del->units.size(); ++i) {
      if (del->units[i] < 0 || del->units[i] > e.ballots()[i].multiplicity()) return false;
      used += del->units[i];
    }
    if (used > *inst.k) return false;
    const auto after = detail::remove_units(e, del->units);
    return detail::goal_on_subset(goal, outcome_table(after), all, {}, false, inst.alpha);
  }
  const auto* vp = std::get_if<PartitionOfVoters>(&w);
  if (!vp) return false;
  const VoterPartition split{vp->first_units};
  if (split.first_units.size() != e.ballots().size()) return false;
  std::vector<bool> fin(n, false);
  for (bool first : {true, false}) {
    const PointTable pts(outcome_table(detail::voter_part(e, split.first_units, first)), inst.alpha);
    for (auto c : survivors(pts, all, inst.problem.rule)) fin[c] = true;
  }
  return detail::goal_on_subset(goal, outcome_table(e), fin, {}, false, inst.alpha);
}

/// Applies a bribery (BribedBallots) or microbribery (Flips) witness.
inline Election apply_bribery(const Election& e, const Witness& w) {
  const auto n = e.size();
  if (const auto* br = std::get_if<BribedBallots>(&w)) {
    std::vector<BigInt> taken(e.ballots().size(), 0);
    std::vector<Ballot> extra;
    for (const auto& [line, repl] : br->changes) {
      if (line >= e.ballots().size() || repl.kind() != e.ballots()[line].kind())
        throw Error(Errc::MalformedInstance, "bad bribery witness");
      taken[line] += 1;
      extra.push_back(repl.with_multiplicity(1));
    }
    auto after = detail::remove_units(e, taken);
    for (std::size_t i = 0; i < taken.size(); ++i)
      if (taken[i] > e.ballots()[i].multiplicity()) throw Error(Errc::MalformedInstance, "bribed too many units");
    auto ballots = after.ballots();
    ballots.insert(ballots.end(), extra.begin(), extra.end());
    return e.with_ballots(std::move(ballots));
  }
  const auto& fl = std::get<Flips>(w);
  // Units of a line flipped on several pairs must be distinct units only when
  // the pairs coincide; a flipped unit becomes its own line.
  std::vector<Ballot> ballots = e.ballots();
  std::vector<Ballot> extra;
  // Group flips per line; the k-th unit of a line receives the k-th flip set.
  std::map<std::size_t, std::vector<Flip>> per_line;
  for (const auto& f : fl.flips) per_line[f.line].push_back(f);
  for (auto& [line, flips] : per_line) {
    if (line >= ballots.size() || ballots[line].is_linear()) throw Error(Errc::NotIrrational, "flip on linear ballot");
    // Per pair, the number of units to flip; units are assigned greedily from the front.
    const BigInt m = ballots[line].multiplicity();
    std::vector<std::pair<std::size_t, BigInt>> need;  // (pair index, count) with orientation applied below
    for (const auto& f : flips) {
      if (f.a == f.b || f.a >= n || f.b >= n || f.units < 1 || f.units > m)
        throw Error(Errc::MalformedInstance, "bad flip");
      if (ballots[line].prefers(n, f.a, f.b)) throw Error(Errc::MalformedInstance, "flip does not change the entry");
    }
    // Unit u (0-based) flips every pair whose count exceeds u. Units with the
    // same flip set are merged into one line.
    std::vector<BigInt> cuts{0, m};
    for (const auto& f : flips) cuts.push_back(f.units);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const BigInt count = cuts[s + 1] - cuts[s];
      if (count <= 0) continue;
      auto prefs = ballots[line].prefs();
      for (const auto& f : flips) {
        if (f.units > cuts[s]) {
          if (f.a < f.b) prefs[pair_index(n, f.a, f.b)] = 1;
          else prefs[pair_index(n, f.b, f.a)] = 0;
        }
      }
      extra.push_back(Ballot::table(std::move(prefs), count));
    }
    ballots[line] = Ballot::table({}, 1);  // placeholder, dropped below
  }
  std::vector<Ballot> out;
  for (std::size_t i = 0; i < ballots.size(); ++i)
    if (!per_line.count(i)) out.push_back(ballots[i]);
  out.insert(out.end(), extra.begin(), extra.end());
  return e.with_ballots(std::move(out));
}

inline BigInt bribery_cost(const Witness& w) {
  if (const auto* br = std::get_if<BribedBallots>(&w)) return BigInt(br->changes.size());
  BigInt c = 0;
  for (const auto& f : std::get<Flips>(w).flips) c += f.units;
  return c;
}

inline bool check_bribery_witness(const Election& e, const Alpha& alpha, const GoalSpec& goal, const BigInt& k,
                                  const Witness& w) {
  if (bribery_cost(w) > k) return false;
  const auto after = apply_bribery(e, w);
  const BoundGoal bound(goal, e.candidates());
  return detail::goal_on_subset(bound, outcome_table(after), std::vector<bool>(e.size(), true), {}, false, alpha);
}

}  // namespace copeland
