#pragma once

#include <algorithm>
#include <map>
#include <optional>

#include "copeland/exact.hpp"

namespace copeland {

/// BC_j bounds the number of candidates (spoilers included), BV_j the total
/// voter multiplicity (pool included).
struct BoundParameter {
  enum class Kind { BC, BV };
  Kind kind = Kind::BC;
  std::size_t j = 1;
};

namespace detail {

inline StandardGoal destructive_goal(const ControlInstance& inst, const std::string& who) {
  const auto g = as_standard(inst.effective_goal());
  if (!g || g->constructive) throw Error(Errc::WrongProblem, who + " needs a destructive winner goal");
  return *g;
}

/// A rival with gap = score(c) - score(p) defeats p's (unique) win.
inline bool gap_suffices(std::int64_t gap, WinnerModel model) {
  return model == WinnerModel::Unique ? gap >= 0 : gap > 0;
}

}  // namespace detail

// ---- Destructive candidate control -----------------------------------------

/// DCAC_u, DCAC and DCDC. Scores decompose over pairwise contests, so each
/// action moves the gap between a rival c and p by a fixed amount; per rival
/// the best actions are simply the largest positive moves.
inline Decision greedy_destructive_candidate(const ControlInstance& inst) {
  inst.validate();
  const auto type = inst.problem.type;
  if (inst.problem.constructive || !(type == ControlType::ACu || type == ControlType::AC || type == ControlType::DC))
    throw Error(Errc::WrongProblem, inst.problem.code() + " is not DCAC_u, DCAC or DCDC");
  const auto goal = detail::destructive_goal(inst, "greedy_destructive_candidate");
  const auto& names = inst.candidates();
  const auto n = names.size();
  const PointTable pts(inst.full_table(), inst.alpha);
  const auto p = detail::name_index(names).at(goal.p);
  const auto spoilers = inst.spoiler_mask();
  const bool adding = type != ControlType::DC;
  const std::size_t cap = type == ControlType::ACu ? n : detail::clamp_k(inst.k, n);
  std::vector<bool> registered(n);
  for (std::size_t i = 0; i < n; ++i) registered[i] = !spoilers[i];
  const auto base = pts.scores_within(registered);

  std::vector<std::pair<std::int64_t, CandidateIndex>> moves;
  for (std::size_t c = 0; c < n; ++c) {
    if (c == p) continue;
    std::size_t budget = cap;
    CandidateSet chosen;
    std::int64_t gap = base[c] - base[p];
    if (!registered[c]) {
      if (budget == 0) continue;
      --budget;
      chosen.push_back(c);
      gap = -base[p] - pts(p, c);
      for (std::size_t y = 0; y < n; ++y)
        if (registered[y]) gap += pts(c, y);
    }
    moves.clear();
    for (std::size_t d = 0; d < n; ++d) {
      if (d == p || d == c || registered[d] != !adding) continue;
      const auto delta = adding ? pts(c, d) - pts(p, d) : pts(p, d) - pts(c, d);
      if (delta > 0) moves.emplace_back(delta, d);
    }
    std::stable_sort(moves.begin(), moves.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t i = 0; i < std::min(budget, moves.size()); ++i) {
      gap += moves[i].first;
      chosen.push_back(moves[i].second);
    }
    if (!detail::gap_suffices(gap, goal.model)) continue;
    std::sort(chosen.begin(), chosen.end());
    if (adding) return Decision::yes_with(AddedCandidates{names_of(names, chosen)});
    return Decision::yes_with(DeletedCandidates{names_of(names, chosen)});
  }
  return Decision::no();
}

/// DCPC and DCRPC in both tie models.
///
/// A partition defeats p exactly when some X containing p already does, i.e.
/// p is not a (unique, under TE or the unique model) winner of X; by the
/// decomposition that holds iff for some rival c the gap over {p, c} plus
/// every contest where c outdoes p reaches the threshold. Witnesses come from
/// three layouts per such rival: X itself as p's part, everything but c, and
/// p alone with the rest of C outside X.
inline Decision destructive_partition_candidate(const ControlInstance& inst) {
  inst.validate();
  const auto type = inst.problem.type;
  if (inst.problem.constructive || !(type == ControlType::PC || type == ControlType::RPC))
    throw Error(Errc::WrongProblem, inst.problem.code() + " is not DCPC or DCRPC");
  const auto goal = detail::destructive_goal(inst, "destructive_partition_candidate");
  const auto& names = inst.candidates();
  const auto n = names.size();
  const PointTable pts(inst.full_table(), inst.alpha);
  const auto p = detail::name_index(names).at(goal.p);
  const auto rule = inst.problem.rule;
  const bool runoff = type == ControlType::RPC;
  const auto model = rule == TieRule::TE ? WinnerModel::Unique : goal.model;

  auto defeats = [&](const std::vector<bool>& first) {
    std::vector<bool> second(n);
    for (std::size_t i = 0; i < n; ++i) second[i] = !first[i];
    const auto w = two_stage_candidates(pts, first, second, runoff, rule);
    if (goal.model == WinnerModel::Unique) return !(w.size() == 1 && w[0] == p);
    return std::find(w.begin(), w.end(), p) == w.end();
  };
  auto witness = [&](const std::vector<bool>& first) {
    PartitionOfCandidates w;
    for (std::size_t i = 0; i < n; ++i) (first[i] ? w.first : w.second).push_back(names[i]);
    return Decision::yes_with(std::move(w));
  };

  for (std::size_t c = 0; c < n; ++c) {
    if (c == p) continue;
    std::vector<bool> x(n, false);
    x[p] = x[c] = true;
    std::int64_t gap = pts(c, p) - pts(p, c);
    for (std::size_t d = 0; d < n; ++d) {
      if (d == p || d == c || pts(c, d) <= pts(p, d)) continue;
      x[d] = true;
      gap += pts(c, d) - pts(p, d);
    }
    if (!detail::gap_suffices(gap, model)) continue;
    std::vector<bool> all_but_c(n, true), p_and_rest(n);
    all_but_c[c] = false;
    for (std::size_t i = 0; i < n; ++i) p_and_rest[i] = i == p || !x[i];
    for (const auto& part : {x, all_but_c, p_and_rest}) {
      if (defeats(part)) return witness(part);
      if (runoff) continue;
      std::vector<bool> flipped(n);
      for (std::size_t i = 0; i < n; ++i) flipped[i] = !part[i];
      if (defeats(flipped)) return witness(flipped);
    }
  }
  return Decision::no();
}

// ---- Destructive microbribery ----------------------------------------------

namespace detail {

/// Cheapest shift of the lower-index tally `up` (out of `total`) that gives
/// the lower-index candidate result r; nullopt when r is unreachable.
inline std::optional<BigInt> target_tally(const BigInt& up, const BigInt& total, Result r) {
  const BigInt half = total / 2;
  switch (r) {
    case Result::Win:
      if (total < 1) return std::nullopt;
      return std::max(up, BigInt(half + 1));
    case Result::Tie:
      if (total % 2 != 0) return std::nullopt;
      return half;
    case Result::Loss:
      if (total < 1) return std::nullopt;
      return std::min(up, BigInt((total - 1) / 2));
  }
  return std::nullopt;
}

inline std::int64_t points_for(Result r, const Alpha& a) {
  return r == Result::Win ? a.win_points() : r == Result::Tie ? a.tie_points() : 0;
}

}  // namespace detail

/// Per rival c only contests touching p or c matter. Each contest offers up
/// to three outcomes with an exact flip cost and an integer gain to the scaled
/// gap; a knapsack over the capped gain finds the cheapest way to reach the
/// threshold.
inline Decision destructive_microbribery_dp(const Election& e, const Alpha& alpha, const std::string& p_name,
                                            const BigInt& k, WinnerModel model,
                                            std::size_t max_states = 50'000'000) {
  if (!e.all_tables()) throw Error(Errc::NotIrrational, "microbribery needs preference-table ballots");
  const auto n = e.size();
  const auto p = e.index_of(p_name);
  const auto pairs = pair_count(n);
  detail::TallyAcc base(pairs);
  for (const auto& b : e.ballots()) base.add(b.prefs(), b.multiplicity());
  const PointTable pts(base.table(e.candidates()), alpha);
  const auto scores = pts.scores_within(std::vector<bool>(n, true));

  struct Option {
    std::int64_t gain;
    BigInt cost;
    BigInt tally;  // new lower-index tally of the contest
  };
  struct Contest {
    std::size_t q;
    std::vector<Option> options;
  };

  for (std::size_t c = 0; c < n; ++c) {
    if (c == p) continue;
    const std::int64_t gap = scores[c] - scores[p];
    const std::int64_t need = std::max<std::int64_t>(0, (model == WinnerModel::Unique ? 0 : 1) - gap);
    // Contest (x, y) with weight wx on x's points and wy on y's points.
    std::vector<Contest> items;
    auto add_contest = [&](CandidateIndex x, CandidateIndex y, int wx, int wy) {
      const auto lo = std::min(x, y), hi = std::max(x, y);
      const auto q = pair_index(n, lo, hi);
      const auto now = pts(x, y) * wx + pts(y, x) * wy;
      Contest it{q, {}};
      for (auto r : {Result::Win, Result::Tie, Result::Loss}) {
        const auto t = detail::target_tally(base.up[q], base.total, r);
        if (!t) continue;
        const auto rx = x == lo ? r : flip(r);
        const auto gain = detail::points_for(rx, alpha) * wx + detail::points_for(flip(rx), alpha) * wy - now;
        if (gain <= 0) continue;
        const BigInt d = *t - base.up[q];
        it.options.push_back({gain, d < 0 ? BigInt(-d) : d, *t});
      }
      if (!it.options.empty()) items.push_back(std::move(it));
    };
    add_contest(c, p, 1, -1);
    for (std::size_t d = 0; d < n; ++d) {
      if (d == c || d == p) continue;
      add_contest(c, d, 1, 0);
      add_contest(p, d, -1, 0);
    }
    const auto width = static_cast<std::size_t>(need) + 1;
    if (width * (items.size() + 1) > max_states)
      throw Error(Errc::BudgetExceeded, "microbribery table of " + std::to_string(width * (items.size() + 1)) + " cells");
    // best[g]: cheapest cost reaching capped gain g; pick[i][g]: option used by item i (-1 none).
    std::vector<std::optional<BigInt>> best(width);
    best[0] = BigInt(0);
    std::vector<std::vector<int>> pick(items.size(), std::vector<int>(width, -1));
    std::vector<std::vector<std::size_t>> from(items.size(), std::vector<std::size_t>(width, 0));
    for (std::size_t i = 0; i < items.size(); ++i) {
      auto next = best;
      for (std::size_t g = 0; g < width; ++g) from[i][g] = g;
      for (std::size_t g = 0; g < width; ++g) {
        if (!best[g]) continue;
        for (std::size_t o = 0; o < items[i].options.size(); ++o) {
          const auto& opt = items[i].options[o];
          const auto to = std::min<std::size_t>(width - 1, g + static_cast<std::size_t>(opt.gain));
          const BigInt cost = *best[g] + opt.cost;
          if (!next[to] || cost < *next[to]) {
            next[to] = cost;
            pick[i][to] = static_cast<int>(o);
            from[i][to] = g;
          }
        }
      }
      best = std::move(next);
    }
    if (!best[width - 1] || *best[width - 1] > k) continue;

    Flips w;
    std::vector<std::pair<CandidateIndex, CandidateIndex>> pair_of(pairs);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pair_of[pair_index(n, i, j)] = {i, j};
    std::size_t g = width - 1;
    for (std::size_t i = items.size(); i-- > 0;) {
      const int o = pick[i][g];
      const auto prev = from[i][g];
      if (o >= 0) {
        const auto q = items[i].q;
        const auto [lo, hi] = pair_of[q];
        const BigInt shift = items[i].options[o].tally - base.up[q];
        const bool toward_lower = shift > 0;
        BigInt left = toward_lower ? shift : BigInt(-shift);
        for (std::size_t line = 0; line < e.ballots().size() && left > 0; ++line) {
          const auto& b = e.ballots()[line];
          if ((b.prefs()[q] == 1) == toward_lower) continue;
          const BigInt take = std::min(left, b.multiplicity());
          w.flips.push_back(toward_lower ? Flip{line, lo, hi, take} : Flip{line, hi, lo, take});
          left -= take;
        }
      }
      g = prev;
    }
    std::sort(w.flips.begin(), w.flips.end(), [](const Flip& a, const Flip& b) {
      return std::tie(a.line, a.a, a.b) < std::tie(b.line, b.a, b.b);
    });
    return Decision::yes_with(std::move(w));
  }
  return Decision::no();
}

// ---- FPT solvers -----------------------------------------------------------

namespace detail {

/// Integer feasibility of lo <= sum a_i x_i <= hi (a_i in {-1, 0, 1}) over a
/// box, by bounds propagation and splitting the widest variable.
class BoxSearch {
 public:
  struct Row {
    std::vector<std::int8_t> a;
    std::optional<BigInt> lo, hi;
  };

  BoxSearch(const std::vector<Row>& rows, Budget& budget) : budget_(budget) {
    std::map<std::vector<std::int8_t>, std::size_t> seen;
    for (auto r : rows) {
      // Rows over the same linear form (up to sign) are merged.
      const auto nz = std::find_if(r.a.begin(), r.a.end(), [](auto v) { return v != 0; });
      if (nz == r.a.end()) {
        if ((r.lo && *r.lo > 0) || (r.hi && *r.hi < 0)) infeasible_ = true;
        continue;
      }
      if (*nz < 0) {
        for (auto& v : r.a) v = static_cast<std::int8_t>(-v);
        std::optional<BigInt> lo, hi;
        if (r.hi) lo = BigInt(-*r.hi);
        if (r.lo) hi = BigInt(-*r.lo);
        r.lo = lo;
        r.hi = hi;
      }
      auto [it, fresh] = seen.emplace(r.a, rows_.size());
      if (fresh) {
        rows_.push_back(std::move(r));
        continue;
      }
      auto& m = rows_[it->second];
      if (r.lo && (!m.lo || *r.lo > *m.lo)) m.lo = r.lo;
      if (r.hi && (!m.hi || *r.hi < *m.hi)) m.hi = r.hi;
    }
  }

  std::optional<std::vector<BigInt>> solve(std::vector<BigInt> l, std::vector<BigInt> u) {
    if (infeasible_) return std::nullopt;
    return search(std::move(l), std::move(u));
  }

 private:
  bool propagate(std::vector<BigInt>& l, std::vector<BigInt>& u) const {
    const auto dim = l.size();
    for (std::size_t round = 0; round < 2 * dim + 4; ++round) {
      bool changed = false;
      for (const auto& r : rows_) {
        BigInt mn = 0, mx = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          if (r.a[i] > 0) mn += l[i], mx += u[i];
          else if (r.a[i] < 0) mn -= u[i], mx -= l[i];
        }
        if ((r.lo && mx < *r.lo) || (r.hi && mn > *r.hi)) return false;
        for (std::size_t i = 0; i < dim; ++i) {
          if (r.a[i] == 0) continue;
          const BigInt tmin = r.a[i] > 0 ? l[i] : BigInt(-u[i]);
          const BigInt tmax = r.a[i] > 0 ? u[i] : BigInt(-l[i]);
          std::optional<BigInt> t_lo, t_hi;
          if (r.lo) t_lo = *r.lo - (mx - tmax);
          if (r.hi) t_hi = *r.hi - (mn - tmin);
          std::optional<BigInt> x_lo = r.a[i] > 0 ? t_lo : (t_hi ? std::optional<BigInt>(-*t_hi) : std::nullopt);
          std::optional<BigInt> x_hi = r.a[i] > 0 ? t_hi : (t_lo ? std::optional<BigInt>(-*t_lo) : std::nullopt);
          if (x_lo && *x_lo > l[i]) l[i] = *x_lo, changed = true;
          if (x_hi && *x_hi < u[i]) u[i] = *x_hi, changed = true;
          if (l[i] > u[i]) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  std::optional<std::vector<BigInt>> search(std::vector<BigInt> l, std::vector<BigInt> u) {
    budget_.spend();
    if (!propagate(l, u)) return std::nullopt;
    std::size_t pick = l.size();
    BigInt widest = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (u[i] - l[i] > widest) {
        widest = u[i] - l[i];
        pick = i;
      }
    }
    if (pick == l.size()) {
      for (const auto& r : rows_) {
        BigInt s = 0;
        for (std::size_t i = 0; i < l.size(); ++i) {
          if (r.a[i] > 0) s += l[i];
          else if (r.a[i] < 0) s -= l[i];
        }
        if ((r.lo && s < *r.lo) || (r.hi && s > *r.hi)) return std::nullopt;
      }
      return l;
    }
    const BigInt mid = l[pick] + (u[pick] - l[pick]) / 2;
    auto l2 = l, u2 = u;
    u2[pick] = mid;
    if (auto r = search(l, u2)) return r;
    l2[pick] = mid + 1;
    return search(l2, u);
  }

  std::vector<Row> rows_;
  bool infeasible_ = false;
  Budget& budget_;
};

/// Ballot lines grouped by their pairwise preferences.
struct TypeGroups {
  std::vector<std::vector<std::uint8_t>> prefs;
  std::vector<BigInt> count;
  std::vector<std::size_t> type_of_line;

  TypeGroups(const std::vector<Ballot>& lines, std::size_t n) {
    std::map<std::vector<std::uint8_t>, std::size_t> idx;
    for (const auto& b : lines) {
      auto pr = upper_prefs(b, n);
      auto [it, fresh] = idx.emplace(pr, prefs.size());
      if (fresh) {
        prefs.push_back(std::move(pr));
        count.push_back(0);
      }
      count[it->second] += b.multiplicity();
      type_of_line.push_back(it->second);
    }
  }
  std::size_t size() const noexcept { return prefs.size(); }

  /// Spreads per-type unit counts over the lines, first lines first.
  std::vector<BigInt> per_line(const std::vector<Ballot>& lines, const std::vector<BigInt>& x) const {
    auto left = x;
    std::vector<BigInt> out(lines.size(), 0);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto& rest = left[type_of_line[i]];
      out[i] = std::min(rest, lines[i].multiplicity());
      rest -= out[i];
    }
    return out;
  }
};

/// Outcome table carrying only the win/tie/loss pattern (lower index view).
inline OutcomeTable pattern_table(const std::vector<std::string>& names, const std::vector<Result>& res) {
  std::vector<std::uint64_t> up(res.size());
  for (std::size_t q = 0; q < res.size(); ++q) up[q] = static_cast<std::uint64_t>(static_cast<int>(res[q]) + 1);
  return OutcomeTable(names, std::uint64_t{2}, std::move(up));
}

/// Calls fn on every result vector of the given length; stops when fn returns true.
inline bool for_each_pattern(std::size_t len, const std::function<bool(const std::vector<Result>&)>& fn) {
  std::vector<Result> r(len, Result::Win);
  while (true) {
    if (fn(r)) return true;
    std::size_t i = len;
    while (i > 0 && r[i - 1] == Result::Loss) r[--i] = Result::Win;
    if (i == 0) return false;
    r[i - 1] = r[i - 1] == Result::Win ? Result::Tie : Result::Loss;
  }
}

/// Row forcing constant + sign * sum(sigma_t x_t) to have result r.
inline BoxSearch::Row margin_row(const BigInt& constant, int sign, const TypeGroups& g, std::size_t q, Result r) {
  BoxSearch::Row row;
  for (std::size_t t = 0; t < g.size(); ++t) row.a.push_back(static_cast<std::int8_t>(sign * (g.prefs[t][q] ? 1 : -1)));
  // margin = constant + sum a x; Win: >= 1, Tie: = 0, Loss: <= -1.
  if (r == Result::Win) row.lo = BigInt(1 - constant);
  if (r == Result::Tie) row.lo = row.hi = BigInt(-constant);
  if (r == Result::Loss) row.hi = BigInt(-1 - constant);
  return row;
}

}  // namespace detail

/// Voter control (AV, DV, PV; constructive or destructive) under a bound.
/// BV_j enumerates unit-voter actions directly. BC_j groups ballots into
/// types and, per target outcome pattern satisfying the goal, decides
/// integer feasibility of the per-type action counts. A TablePredicate goal
/// sees the pattern table (tallies 2/1/0 for win/tie/loss).
inline Decision fpt_voter_control(const ControlInstance& inst, const BoundParameter& bound,
                                  const std::optional<GoalSpec>& goal_spec = std::nullopt,
                                  const SizeLimits& limits = {}) {
  if (!inst.problem.is_voter_control()) throw Error(Errc::WrongProblem, inst.problem.code() + " is not voter control");
  ControlInstance local = inst;
  if (goal_spec) local.goal = *goal_spec;
  local.validate();
  const auto& e = local.election;
  if (bound.j == 0) throw Error(Errc::BoundViolated, "bound must be positive");
  if (bound.kind == BoundParameter::Kind::BV) {
    BigInt total = e.total_multiplicity();
    for (const auto& b : local.voter_pool) total += b.multiplicity();
    if (total > BigInt(bound.j))
      throw Error(Errc::BoundViolated, total.str() + " voters exceed BV_" + std::to_string(bound.j));
    return detail::voter_control_exact(local, limits);
  }
  const auto n = e.size();
  if (n > bound.j)
    throw Error(Errc::BoundViolated, std::to_string(n) + " candidates exceed BC_" + std::to_string(bound.j));
  const auto& names = e.candidates();
  const auto pairs = pair_count(n);
  const BoundGoal goal(local.effective_goal(), names);
  detail::Budget budget(limits.max_subsets);
  const std::vector<bool> all(n, true);

  detail::TallyAcc acc(pairs);
  for (const auto& b : e.ballots()) acc.add(detail::upper_prefs(b, n), b.multiplicity());
  std::vector<BigInt> margin(pairs);
  for (std::size_t q = 0; q < pairs; ++q) margin[q] = 2 * acc.up[q] - acc.total;

  auto goal_on_pattern = [&](const std::vector<Result>& res) {
    const auto t = detail::pattern_table(names, res);
    const PointTable pts(t, local.alpha);
    return detail::SubsetGoal(goal, t, local.alpha)(all, pts.scores_within(all));
  };

  const auto type = local.problem.type;
  if (type == ControlType::AV || type == ControlType::DV) {
    const bool adding = type == ControlType::AV;
    const auto& lines = adding ? local.voter_pool : e.ballots();
    const detail::TypeGroups g(lines, n);
    detail::BoxSearch::Row spend;
    spend.a.assign(g.size(), 1);
    spend.hi = *local.k;
    std::optional<std::vector<BigInt>> found;
    detail::for_each_pattern(pairs, [&](const std::vector<Result>& res) {
      budget.spend();
      if (!goal_on_pattern(res)) return false;
      std::vector<detail::BoxSearch::Row> rows{spend};
      for (std::size_t q = 0; q < pairs; ++q) rows.push_back(detail::margin_row(margin[q], adding ? 1 : -1, g, q, res[q]));
      found = detail::BoxSearch(rows, budget).solve(std::vector<BigInt>(g.size(), 0), g.count);
      return found.has_value();
    });
    if (!found) return Decision::no();
    const auto units = g.per_line(lines, *found);
    if (adding) return Decision::yes_with(AddedVoters{units});
    return Decision::yes_with(DeletedVoters{units});
  }

  // PV: x_t units of type t vote in V1. Patterns reachable by each half are
  // found first; only compatible pairs whose finalists satisfy the goal are
  // then solved jointly.
  const detail::TypeGroups g(e.ballots(), n);
  const auto full_table = acc.table(names);
  const PointTable full(full_table, local.alpha);
  const detail::SubsetGoal check(goal, full_table, local.alpha);
  struct Half {
    std::vector<Result> res;
    std::vector<bool> survivors;
  };
  std::vector<Half> first, second;
  const std::vector<BigInt> zero(g.size(), 0);
  detail::for_each_pattern(pairs, [&](const std::vector<Result>& res) {
    budget.spend();
    const PointTable pts(detail::pattern_table(names, res), local.alpha);
    std::vector<bool> surv(n, false);
    for (auto c : survivors(pts, all, local.problem.rule)) surv[c] = true;
    std::vector<detail::BoxSearch::Row> r1, r2;
    for (std::size_t q = 0; q < pairs; ++q) {
      r1.push_back(detail::margin_row(0, 1, g, q, res[q]));
      r2.push_back(detail::margin_row(margin[q], -1, g, q, res[q]));
    }
    if (detail::BoxSearch(r1, budget).solve(zero, g.count)) first.push_back({res, surv});
    if (detail::BoxSearch(r2, budget).solve(zero, g.count)) second.push_back({res, surv});
    return false;
  });
  for (const auto& h1 : first) {
    for (const auto& h2 : second) {
      std::vector<bool> fin(n);
      for (std::size_t c = 0; c < n; ++c) fin[c] = h1.survivors[c] || h2.survivors[c];
      if (!check(fin, full.scores_within(fin))) continue;
      std::vector<detail::BoxSearch::Row> rows;
      for (std::size_t q = 0; q < pairs; ++q) {
        rows.push_back(detail::margin_row(0, 1, g, q, h1.res[q]));
        rows.push_back(detail::margin_row(margin[q], -1, g, q, h2.res[q]));
      }
      if (auto x = detail::BoxSearch(rows, budget).solve(zero, g.count))
        return Decision::yes_with(PartitionOfVoters{g.per_line(e.ballots(), *x)});
    }
  }
  return Decision::no();
}

/// Candidate control under BC_j: every subset or bipartition is tried on a
/// table tallied from type-grouped ballots.
inline Decision fpt_candidate_control(const ControlInstance& inst, const BoundParameter& bound,
                                      const std::optional<GoalSpec>& goal_spec = std::nullopt,
                                      const SizeLimits& limits = {}) {
  if (!inst.problem.is_candidate_control())
    throw Error(Errc::WrongProblem, inst.problem.code() + " is not candidate control");
  if (bound.kind != BoundParameter::Kind::BC) throw Error(Errc::BoundViolated, "candidate control takes BC_j");
  ControlInstance local = inst;
  if (goal_spec) local.goal = *goal_spec;
  local.validate();
  const auto& names = local.candidates();
  const auto n = names.size();
  if (n > bound.j || bound.j == 0)
    throw Error(Errc::BoundViolated, std::to_string(n) + " candidates exceed BC_" + std::to_string(bound.j));
  if (n >= 63) throw Error(Errc::BudgetExceeded, "too many candidates");

  OutcomeTable table;
  if (local.pattern) {
    table = local.full_table();
  } else {
    const detail::TypeGroups g(local.election.ballots(), n);
    detail::TallyAcc acc(pair_count(n));
    for (std::size_t t = 0; t < g.size(); ++t) acc.add(g.prefs[t], g.count[t]);
    table = acc.table(names);
  }
  const PointTable pts(table, local.alpha);
  const BoundGoal goal(local.effective_goal(), names);
  const detail::SubsetGoal check(goal, table, local.alpha);
  const auto spoilers = local.spoiler_mask();
  const auto p = detail::name_index(names).at(local.p);
  const auto type = local.problem.type;
  detail::Budget budget(limits.max_subsets);
  const std::size_t kmax = detail::clamp_k(local.k, n);

  CandidateSet movable;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = type == ControlType::ACu || type == ControlType::AC ? spoilers[i]
                    : type == ControlType::DC                           ? i != p
                                                                        : true;
    if (ok) movable.push_back(i);
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << movable.size()); ++mask) {
    budget.spend();
    std::vector<bool> sel(n, false);
    std::size_t count = 0;
    for (std::size_t b = 0; b < movable.size(); ++b)
      if ((mask >> b) & 1) sel[movable[b]] = true, ++count;
    if (type == ControlType::ACu || type == ControlType::AC || type == ControlType::DC) {
      if (type != ControlType::ACu && count > kmax) continue;
      std::vector<bool> present(n);
      for (std::size_t i = 0; i < n; ++i) present[i] = type == ControlType::DC ? !sel[i] : (!spoilers[i] || sel[i]);
      if (!check(present, pts.scores_within(present))) continue;
      CandidateSet chosen;
      for (std::size_t i = 0; i < n; ++i)
        if (sel[i]) chosen.push_back(i);
      if (type == ControlType::DC) return Decision::yes_with(DeletedCandidates{names_of(names, chosen)});
      return Decision::yes_with(AddedCandidates{names_of(names, chosen)});
    }
    std::vector<bool> first(n), second(n);
    for (std::size_t i = 0; i < n; ++i) (sel[i] ? second : first)[i] = true;
    std::vector<bool> fin(n, false);
    for (auto c : survivors(pts, first, local.problem.rule)) fin[c] = true;
    if (type == ControlType::RPC) {
      for (auto c : survivors(pts, second, local.problem.rule)) fin[c] = true;
    } else {
      for (std::size_t c = 0; c < n; ++c)
        if (second[c]) fin[c] = true;
    }
    if (check(fin, pts.scores_within(fin))) {
      PartitionOfCandidates w;
      for (std::size_t i = 0; i < n; ++i) (first[i] ? w.first : w.second).push_back(names[i]);
      return Decision::yes_with(std::move(w));
    }
  }
  return Decision::no();
}

}  // namespace copeland
