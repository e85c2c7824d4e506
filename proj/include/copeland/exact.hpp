#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "copeland/instance.hpp"
#include "copeland/verify.hpp"

namespace copeland {

/// Auto picks a complete pruned search where one exists (constructive
/// standard goals under DC, PC and RPC); Enumerate always walks the raw
/// action space.
enum class SearchMode { Auto, Enumerate };

namespace detail {

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void spend(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_) throw Error(Errc::BudgetExceeded, "search exceeded " + std::to_string(limit_) + " states");
  }
  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

inline BigInt binomial_sum(std::size_t n, std::size_t kmax) {
  BigInt total = 0, c = 1;
  for (std::size_t i = 0; i <= std::min(n, kmax); ++i) {
    total += c;
    c = c * (n - i) / (i + 1);
  }
  return total;
}

inline void require_within(const BigInt& states, const SizeLimits& limits, const std::string& what) {
  if (states > BigInt(limits.max_subsets))
    throw Error(Errc::BudgetExceeded, what + " has " + states.str() + " states, limit " +
                                          std::to_string(limits.max_subsets));
}

/// Goal check for a sub-election of a point table.
class SubsetGoal {
 public:
  SubsetGoal(const BoundGoal& goal, const OutcomeTable& table, const Alpha& alpha)
      : goal_(goal), table_(table), alpha_(alpha) {}

  bool operator()(const std::vector<bool>& present, const std::vector<std::int64_t>& scaled) const {
    const auto w = PointTable::argmax(scaled, present, WinnerModel::NonUnique);
    return goal_.holds(present, scaled, w, alpha_, [&] {
      CandidateSet subset;
      for (std::size_t i = 0; i < present.size(); ++i)
        if (present[i]) subset.push_back(i);
      return table_.restricted(subset);
    });
  }

 private:
  const BoundGoal& goal_;
  const OutcomeTable& table_;
  Alpha alpha_;
};

/// Calls fn(combo) for every subset of `pool` with at most kmax elements,
/// by increasing size and lexicographically within a size; stops when fn
/// returns true.
inline bool for_each_combination(const std::vector<CandidateIndex>& pool, std::size_t kmax,
                                 const std::function<bool(const CandidateSet&)>& fn) {
  const auto m = pool.size();
  for (std::size_t s = 0; s <= std::min(kmax, m); ++s) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      CandidateSet combo(s);
      for (std::size_t i = 0; i < s; ++i) combo[i] = pool[idx[i]];
      if (fn(combo)) return true;
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == m - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

inline std::size_t clamp_k(const std::optional<BigInt>& k, std::size_t cap) {
  if (!k) return cap;
  return *k >= BigInt(cap) ? cap : static_cast<std::size_t>(*k);
}

// ---- Deleting candidates: conflict-directed search ------------------------

/// Complete search for "q is a (unique) winner after deleting at most k
/// candidates other than q and `keep`". A rival x that still outscores q
/// must itself be deleted or lose points against a deleted d with
/// pts(x,d) > pts(q,d); the search branches over exactly those options.
class DeletionSearch {
 public:
  DeletionSearch(const PointTable& pts, CandidateIndex q, CandidateIndex keep, bool unique, std::size_t k,
                 Budget& budget)
      : pts_(pts), n_(pts.size()), q_(q), keep_(keep), unique_(unique), k_(k), budget_(budget),
        present_(n_, true), excluded_(n_, false) {
    score_ = pts.scores_within(present_);
  }

  std::optional<CandidateSet> run() {
    if (dfs()) return deleted_;
    return std::nullopt;
  }

 private:
  bool unresolved(CandidateIndex x) const {
    const auto g = score_[x] - score_[q_];
    return unique_ ? g >= 0 : g > 0;
  }

  void remove(CandidateIndex d) {
    present_[d] = false;
    for (std::size_t y = 0; y < n_; ++y) score_[y] -= pts_(y, d);
    deleted_.push_back(d);
  }
  void restore(CandidateIndex d) {
    present_[d] = true;
    for (std::size_t y = 0; y < n_; ++y) score_[y] += pts_(y, d);
    deleted_.pop_back();
  }
  bool deletable(CandidateIndex d) const { return present_[d] && !excluded_[d] && d != q_ && d != keep_; }

  bool dfs() {
    budget_.spend();
    std::optional<CandidateSet> best;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!present_[x] || x == q_ || !unresolved(x)) continue;
      if (deleted_.size() == k_) return false;
      CandidateSet opts;
      if (deletable(x)) opts.push_back(x);
      for (std::size_t d = 0; d < n_; ++d)
        if (d != x && deletable(d) && pts_(x, d) > pts_(q_, d)) opts.push_back(d);
      if (opts.empty()) return false;
      if (!best || opts.size() < best->size()) best = std::move(opts);
    }
    if (!best) return true;
    CandidateSet fixed;
    bool found = false;
    for (auto d : *best) {
      remove(d);
      found = dfs();
      if (found) break;
      restore(d);
      excluded_[d] = true;
      fixed.push_back(d);
    }
    for (auto d : fixed) excluded_[d] = false;
    return found;
  }

  const PointTable& pts_;
  std::size_t n_;
  CandidateIndex q_, keep_;
  bool unique_;
  std::size_t k_;
  Budget& budget_;
  std::vector<bool> present_, excluded_;
  std::vector<std::int64_t> score_;
  CandidateSet deleted_;
};

// ---- Partitions: conflict-directed branch and bound -----------------------

/// Complete search for a partition (A, B) with q in A such that q wins the
/// final round. A is q's part, B the other; `a_sub`/`b_sub` say whether a
/// part is a subelection whose survivors advance (otherwise all of it does).
///
/// Undecided candidates sit in A by default. When that default fails, the
/// violated condition names the candidates whose move to B could repair it
/// and the search branches over them (earlier alternatives get pinned to A).
/// Bounds that hold for every completion prune the rest.
class PartitionSearch {
 public:
  PartitionSearch(const PointTable& pts, CandidateIndex q, bool a_sub, bool b_sub, TieRule rule, bool unique,
                  Budget& budget)
      : P_(pts), n_(pts.size()), q_(q), a_sub_(a_sub), b_sub_(b_sub), te_(rule == TieRule::TE), unique_(unique),
        budget_(budget), st_(n_, Free), sA_(n_, 0), sB_(n_, 0), free_sum_(n_, 0) {
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = 0; y < n_; ++y) {
        sA_[x] += P_(x, y);
        if (y != q_) free_sum_[x] += P_(x, y);
      }
    }
    st_[q_] = InA;
  }

  /// Membership mask of A in a winning partition, if one exists.
  std::optional<std::vector<bool>> run() {
    if (!dfs()) return std::nullopt;
    std::vector<bool> a(n_);
    for (std::size_t x = 0; x < n_; ++x) a[x] = st_[x] != InB;
    return a;
  }

 private:
  enum State : std::int8_t { Free = 0, InA = 1, InB = 2 };

  bool a_violates(std::int64_t gap) const { return te_ ? gap >= 0 : gap > 0; }
  bool final_violates(std::int64_t gap) const { return unique_ ? gap >= 0 : gap > 0; }

  void to_b(CandidateIndex c) {
    st_[c] = InB;
    for (std::size_t x = 0; x < n_; ++x) {
      const auto v = P_(x, c);
      sA_[x] -= v;
      sB_[x] += v;
      free_sum_[x] -= v;
    }
    trail_.push_back(c);
  }
  void to_a(CandidateIndex c) {
    st_[c] = InA;
    for (std::size_t x = 0; x < n_; ++x) free_sum_[x] -= P_(x, c);
    trail_.push_back(c);
  }
  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto c = trail_.back();
      trail_.pop_back();
      const bool was_b = st_[c] == InB;
      st_[c] = Free;
      for (std::size_t x = 0; x < n_; ++x) {
        const auto v = P_(x, c);
        if (was_b) {
          sA_[x] += v;
          sB_[x] -= v;
        }
        free_sum_[x] += v;
      }
    }
  }

  /// Smallest A-score gap of x over q reachable by moving free candidates to B.
  std::int64_t min_gap(CandidateIndex x) const {
    std::int64_t g = sA_[x] - sA_[q_];
    for (std::size_t d = 0; d < n_; ++d)
      if (st_[d] == Free && d != x) g -= std::max<std::int64_t>(0, P_(x, d) - P_(q_, d));
    return g;
  }

  /// Forces moves implied by q's survival in A. Min gaps only grow under
  /// forced moves, so every forcing found in a pass stays valid.
  bool propagate() {
    if (!a_sub_) return true;
    while (true) {
      std::vector<CandidateIndex> to_b_list;
      for (std::size_t x = 0; x < n_; ++x) {
        if (x == q_ || st_[x] == InB) continue;
        const auto mg = min_gap(x);
        if (a_violates(mg)) {
          if (st_[x] == InA) return false;
          to_b_list.push_back(x);
        } else if (st_[x] == InA) {
          for (std::size_t d = 0; d < n_; ++d) {
            if (st_[d] != Free || d == x) continue;
            const auto c = P_(x, d) - P_(q_, d);
            if (c > 0 && a_violates(mg + c)) to_b_list.push_back(d);
          }
        }
      }
      if (to_b_list.empty()) return true;
      for (auto c : to_b_list)
        if (st_[c] == Free) to_b(c);
    }
  }

  /// The finalist with the largest lead over q, or n_ if q wins the final.
  CandidateIndex final_offender() const {
    std::vector<bool> fin(n_, false);
    if (a_sub_) {
      for (std::size_t x = 0; x < n_; ++x)
        if (st_[x] != InB && (x == q_ || (!te_ && sA_[x] == sA_[q_]))) fin[x] = true;
    } else {
      for (std::size_t x = 0; x < n_; ++x) fin[x] = st_[x] != InB;
    }
    bool any_b = false;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::size_t at_best = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      if (st_[x] != InB) continue;
      any_b = true;
      if (sB_[x] > best) {
        best = sB_[x];
        at_best = 0;
      }
      if (sB_[x] == best) ++at_best;
    }
    if (any_b) {
      for (std::size_t x = 0; x < n_; ++x) {
        if (st_[x] != InB) continue;
        if (!b_sub_ || (sB_[x] == best && (!te_ || at_best == 1))) fin[x] = true;
      }
    }
    std::int64_t sq = 0;
    for (std::size_t y = 0; y < n_; ++y)
      if (fin[y]) sq += P_(q_, y);
    CandidateIndex worst = n_;
    std::int64_t worst_gap = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!fin[x] || x == q_) continue;
      std::int64_t sx = 0;
      for (std::size_t y = 0; y < n_; ++y)
        if (fin[y]) sx += P_(x, y);
      if (final_violates(sx - sq) && (worst == n_ || sx - sq > worst_gap)) {
        worst = x;
        worst_gap = sx - sq;
      }
    }
    return worst;
  }

  /// True if no completion can let q win the final.
  bool final_bound_prunes() const {
    std::vector<bool> possible(n_, false), sure(n_, false);
    // A side.
    for (std::size_t x = 0; x < n_; ++x) {
      if (x == q_ || st_[x] != InA) continue;
      if (!a_sub_) {
        sure[x] = possible[x] = true;
      } else if (!te_) {
        std::int64_t g = sA_[x] - sA_[q_], hi = g;
        for (std::size_t d = 0; d < n_; ++d) {
          if (st_[d] != Free || d == x) continue;
          const auto c = P_(x, d) - P_(q_, d);
          g -= std::max<std::int64_t>(0, c);
          hi += std::max<std::int64_t>(0, -c);
        }
        possible[x] = hi >= 0;
        sure[x] = g >= 0;
      }
    }
    // B side.
    std::int64_t top1 = std::numeric_limits<std::int64_t>::min(), top2 = top1;
    CandidateIndex top1_at = n_;
    std::vector<CandidateIndex> in_b;
    for (std::size_t x = 0; x < n_; ++x) {
      if (st_[x] != InB) continue;
      in_b.push_back(x);
      if (sB_[x] > top1) {
        top2 = top1;
        top1 = sB_[x];
        top1_at = x;
      } else if (sB_[x] > top2) {
        top2 = sB_[x];
      }
    }
    for (auto x : in_b) {
      if (!b_sub_) {
        sure[x] = possible[x] = true;
        continue;
      }
      const auto other_best = x == top1_at ? top2 : top1;
      const auto ub = sB_[x] + free_sum_[x];
      possible[x] = in_b.size() == 1 || (te_ ? ub > other_best : ub >= other_best);
    }
    if (b_sub_) {
      // Guaranteed survivors among the best-placed members of B.
      std::vector<CandidateIndex> cand;
      for (auto x : in_b)
        if (sB_[x] == top1 || sB_[x] == top2) cand.push_back(x);
      if (cand.size() > 4) cand.resize(4);
      for (auto x : cand) {
        bool ok = true;
        for (std::size_t y = 0; y < n_ && ok; ++y) {
          if (y == x || y == q_ || st_[y] == InA) continue;
          std::int64_t diff = sB_[y] - sB_[x];
          if (st_[y] == Free) diff -= P_(x, y);
          for (std::size_t u = 0; u < n_; ++u)
            if (st_[u] == Free && u != y) diff += std::max<std::int64_t>(0, P_(y, u) - P_(x, u));
          ok = te_ ? diff < 0 : diff <= 0;
        }
        if (ok) sure[x] = true;
      }
    }
    // A free candidate is a possible finalist if it could survive on either side.
    for (std::size_t x = 0; x < n_; ++x) {
      if (st_[x] != Free) continue;
      bool via_a = !a_sub_;
      if (a_sub_ && !te_) {
        std::int64_t hi = sA_[x] - sA_[q_];
        for (std::size_t d = 0; d < n_; ++d)
          if (st_[d] == Free && d != x) hi += std::max<std::int64_t>(0, P_(q_, d) - P_(x, d));
        via_a = hi >= 0;
      }
      const auto ub = sB_[x] + free_sum_[x];
      const bool via_b = !b_sub_ || in_b.empty() || (te_ ? ub > top1 : ub >= top1);
      possible[x] = via_a || via_b;
    }

    auto lower_bound = [&](CandidateIndex x) {
      std::int64_t lb = P_(x, q_) - P_(q_, x);
      for (std::size_t y = 0; y < n_; ++y) {
        if (y == x || y == q_) continue;
        const auto c = P_(x, y) - P_(q_, y);
        if (sure[y]) lb += c;
        else if (possible[y]) lb += std::min<std::int64_t>(0, c);
      }
      return lb;
    };
    for (std::size_t x = 0; x < n_; ++x)
      if (sure[x] && x != q_ && final_violates(lower_bound(x))) return true;
    // Under TP a nonempty subelection B always sends someone to the final.
    if (b_sub_ && !te_ && !in_b.empty()) {
      bool all_bad = true;
      for (std::size_t x = 0; x < n_ && all_bad; ++x) {
        if (x == q_ || st_[x] == InA || !possible[x]) continue;
        if (!final_violates(lower_bound(x))) all_bad = false;
      }
      if (all_bad) return true;
    }
    return false;
  }

  bool branch(const CandidateSet& clause) {
    const auto mark = trail_.size();
    for (auto c : clause) {
      if (st_[c] != Free) continue;
      const auto inner = trail_.size();
      to_b(c);
      if (dfs()) return true;
      undo_to(inner);
      to_a(c);
    }
    undo_to(mark);
    return false;
  }

  bool dfs() {
    budget_.spend();
    const auto mark = trail_.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    if (a_sub_) {
      // Most violated rival first, then the shortest clause.
      std::optional<CandidateSet> best;
      std::int64_t best_gap = 0;
      for (std::size_t x = 0; x < n_; ++x) {
        const auto gap = sA_[x] - sA_[q_];
        if (x == q_ || st_[x] == InB || !a_violates(gap)) continue;
        if (best && gap < best_gap) continue;
        CandidateSet clause;
        if (st_[x] == Free) clause.push_back(x);
        std::vector<std::pair<std::int64_t, CandidateIndex>> red;
        for (std::size_t d = 0; d < n_; ++d) {
          if (st_[d] != Free || d == x) continue;
          const auto c = P_(x, d) - P_(q_, d);
          if (c > 0) red.emplace_back(-c, d);
        }
        std::sort(red.begin(), red.end());
        for (auto [c, d] : red) clause.push_back(d);
        if (!best || gap > best_gap || clause.size() < best->size()) {
          best = std::move(clause);
          best_gap = gap;
        }
      }
      if (best) {
        const bool ok = branch(*best);
        if (!ok) undo_to(mark);
        return ok;
      }
    }
    const auto bad = final_offender();
    if (bad == n_) return true;
    if (final_bound_prunes()) {
      undo_to(mark);
      return false;
    }
    // Any free candidate may repair the final; try first those that hurt the offender most.
    std::vector<std::tuple<std::int64_t, std::int64_t, CandidateIndex>> order;
    for (std::size_t d = 0; d < n_; ++d) {
      if (st_[d] != Free) continue;
      const auto hurt = st_[bad] == InB ? P_(d, bad) - P_(bad, d) : P_(bad, d) - P_(q_, d);
      order.emplace_back(-hurt, -(P_(d, q_) - P_(q_, d)), d);
    }
    std::sort(order.begin(), order.end());
    CandidateSet clause;
    for (auto [h, v, d] : order) clause.push_back(d);
    const bool ok = branch(clause);
    if (!ok) undo_to(mark);
    return ok;
  }

  const PointTable& P_;
  std::size_t n_;
  CandidateIndex q_;
  bool a_sub_, b_sub_, te_, unique_;
  Budget& budget_;
  std::vector<std::int8_t> st_;
  std::vector<std::int64_t> sA_, sB_, free_sum_;
  std::vector<CandidateIndex> trail_;
};

// ---- Candidate control -----------------------------------------------------

inline Decision candidate_control_exact(const ControlInstance& inst, const SizeLimits& limits, SearchMode mode) {
  const auto& names = inst.candidates();
  const auto n = names.size();
  const auto table = inst.full_table();
  const PointTable pts(table, inst.alpha);
  const BoundGoal goal(inst.effective_goal(), names);
  const SubsetGoal check(goal, table, inst.alpha);
  const auto spoilers = inst.spoiler_mask();
  const auto p = detail::name_index(names).at(inst.p);
  const auto type = inst.problem.type;
  Budget budget(limits.max_subsets);
  auto to_names = [&](const CandidateSet& s) { return names_of(names, s); };
  const auto& std_goal = goal.standard();
  const bool constructive_std = std_goal && std_goal->constructive;

  if (type == ControlType::ACu || type == ControlType::AC) {
    std::vector<bool> registered(n);
    CandidateSet pool;
    for (std::size_t i = 0; i < n; ++i) {
      registered[i] = !spoilers[i];
      if (spoilers[i]) pool.push_back(i);
    }
    const auto kmax = type == ControlType::ACu ? pool.size() : clamp_k(inst.k, pool.size());
    require_within(binomial_sum(pool.size(), kmax), limits, inst.problem.code());
    const auto base = pts.scores_within(registered);
    std::vector<std::int64_t> reg_sum(n, 0);
    for (auto d : pool) {
      reg_sum[d] = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (registered[y]) reg_sum[d] += pts(d, y);
    }
    std::optional<CandidateSet> found;
    for_each_combination(pool, kmax, [&](const CandidateSet& combo) {
      budget.spend();
      auto present = registered;
      auto s = base;
      for (auto d : combo) present[d] = true;
      for (std::size_t x = 0; x < n; ++x) {
        if (!registered[x]) continue;
        for (auto d : combo) s[x] += pts(x, d);
      }
      for (auto d : combo) {
        s[d] = reg_sum[d];
        for (auto e : combo) s[d] += pts(d, e);
      }
      if (check(present, s)) {
        found = combo;
        return true;
      }
      return false;
    });
    if (!found) return Decision::no();
    return Decision::yes_with(AddedCandidates{to_names(*found)});
  }

  if (type == ControlType::DC) {
    const auto kmax = clamp_k(inst.k, n - 1);
    if (mode == SearchMode::Auto && constructive_std) {
      DeletionSearch search(pts, goal.target(), p, (std_goal->model == WinnerModel::Unique), kmax, budget);
      if (auto d = search.run()) {
        std::sort(d->begin(), d->end());
        return Decision::yes_with(DeletedCandidates{to_names(*d)});
      }
      return Decision::no();
    }
    CandidateSet pool;
    for (std::size_t i = 0; i < n; ++i)
      if (i != p) pool.push_back(i);
    require_within(binomial_sum(pool.size(), kmax), limits, inst.problem.code());
    const std::vector<bool> all(n, true);
    const auto full = pts.scores_within(all);
    std::optional<CandidateSet> found;
    for_each_combination(pool, kmax, [&](const CandidateSet& combo) {
      budget.spend();
      std::vector<bool> present(n, true);
      for (auto d : combo) present[d] = false;
      auto s = full;
      for (std::size_t x = 0; x < n; ++x) {
        if (!present[x]) {
          s[x] = 0;
          continue;
        }
        for (auto d : combo) s[x] -= pts(x, d);
      }
      if (check(present, s)) {
        found = combo;
        return true;
      }
      return false;
    });
    if (!found) return Decision::no();
    return Decision::yes_with(DeletedCandidates{to_names(*found)});
  }

  // PC / RPC.
  const bool runoff = type == ControlType::RPC;
  const auto rule = inst.problem.rule;
  auto witness_of = [&](const std::vector<bool>& first) {
    PartitionOfCandidates w;
    for (std::size_t i = 0; i < n; ++i) (first[i] ? w.first : w.second).push_back(names[i]);
    return w;
  };
  if (mode == SearchMode::Auto && constructive_std) {
    const auto q = goal.target();
    const bool unique = (std_goal->model == WinnerModel::Unique);
    if (runoff) {
      PartitionSearch s(pts, q, true, true, rule, unique, budget);
      if (auto a = s.run()) return Decision::yes_with(witness_of(*a));
      return Decision::no();
    }
    PartitionSearch in_first(pts, q, true, false, rule, unique, budget);
    if (auto a = in_first.run()) return Decision::yes_with(witness_of(*a));
    PartitionSearch in_second(pts, q, false, true, rule, unique, budget);
    if (auto a = in_second.run()) {
      std::vector<bool> first(n);
      for (std::size_t i = 0; i < n; ++i) first[i] = !(*a)[i];
      return Decision::yes_with(witness_of(first));
    }
    return Decision::no();
  }
  // Plain enumeration; for RPC p stays in C1 (the two parts play symmetric roles).
  const std::size_t free_bits = runoff ? n - 1 : n;
  if (free_bits >= 63) throw Error(Errc::BudgetExceeded, "too many candidates for partition enumeration");
  require_within(BigInt(1) << free_bits, limits, inst.problem.code());
  CandidateSet others;
  for (std::size_t i = 0; i < n; ++i)
    if (!runoff || i != p) others.push_back(i);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
    budget.spend();
    std::vector<bool> first(n, false), second(n, false);
    if (runoff) first[p] = true;
    for (std::size_t b = 0; b < others.size(); ++b) ((mask >> b) & 1 ? second : first)[others[b]] = true;
    std::vector<bool> fin(n, false);
    for (auto c : survivors(pts, first, rule)) fin[c] = true;
    if (runoff) {
      for (auto c : survivors(pts, second, rule)) fin[c] = true;
    } else {
      for (std::size_t c = 0; c < n; ++c)
        if (second[c]) fin[c] = true;
    }
    if (check(fin, pts.scores_within(fin))) return Decision::yes_with(witness_of(first));
  }
  return Decision::no();
}

// ---- Voter control ---------------------------------------------------------

/// Upper-triangle preference indicator of a ballot: 1 where the lower index is preferred.
inline std::vector<std::uint8_t> upper_prefs(const Ballot& b, std::size_t n) {
  return b.is_linear() ? Ballot::table_of_order(b.order(), n) : b.prefs();
}

/// Tallies accumulated as big integers; sizes here are small.
struct TallyAcc {
  BigInt total = 0;
  std::vector<BigInt> up;

  explicit TallyAcc(std::size_t pairs) : up(pairs, 0) {}
  void add(const std::vector<std::uint8_t>& prefs, const BigInt& units) {
    if (units == 0) return;
    total += units;
    for (std::size_t q = 0; q < prefs.size(); ++q)
      if (prefs[q]) up[q] += units;
  }
  OutcomeTable table(const std::vector<std::string>& names) const { return OutcomeTable(names, total, up); }
};

/// Odometer over vectors u with 0 <= u[i] <= cap[i] and sum(u) <= kmax
/// (kmax absent: no sum bound), in lexicographic order.
inline bool for_each_unit_vector(const std::vector<BigInt>& cap, const std::optional<BigInt>& kmax,
                                 const std::function<bool(const std::vector<BigInt>&)>& fn) {
  std::vector<BigInt> u(cap.size(), 0);
  BigInt sum = 0;
  while (true) {
    if (fn(u)) return true;
    std::size_t i = cap.size();
    while (i > 0) {
      --i;
      if (u[i] < cap[i] && (!kmax || sum < *kmax)) {
        ++u[i];
        ++sum;
        break;
      }
      sum -= u[i];
      u[i] = 0;
      if (i == 0) return false;
    }
    if (cap.empty()) return false;
  }
}

inline BigInt unit_vector_count(const std::vector<BigInt>& cap, const std::optional<BigInt>& kmax) {
  BigInt prod = 1;
  for (const auto& c : cap) {
    prod *= (kmax ? std::min(c, *kmax) : c) + 1;
    if (prod > BigInt(std::numeric_limits<std::uint64_t>::max())) break;
  }
  return prod;
}

inline Decision voter_control_exact(const ControlInstance& inst, const SizeLimits& limits) {
  const auto& e = inst.election;
  const auto& names = e.candidates();
  const auto n = names.size();
  const BoundGoal goal(inst.effective_goal(), names);
  Budget budget(limits.max_subsets);
  const auto pairs = pair_count(n);
  const std::vector<bool> all(n, true);

  auto goal_on = [&](const TallyAcc& acc, const std::vector<bool>& present) {
    const auto table = acc.table(names);
    const PointTable pts(table, inst.alpha);
    return SubsetGoal(goal, table, inst.alpha)(present, pts.scores_within(present));
  };
  std::vector<std::vector<std::uint8_t>> line_prefs;
  for (const auto& b : e.ballots()) line_prefs.push_back(upper_prefs(b, n));
  TallyAcc base(pairs);
  for (std::size_t i = 0; i < e.ballots().size(); ++i) base.add(line_prefs[i], e.ballots()[i].multiplicity());

  const auto type = inst.problem.type;
  if (type == ControlType::AV || type == ControlType::DV) {
    const bool adding = type == ControlType::AV;
    const auto& lines = adding ? inst.voter_pool : e.ballots();
    std::vector<std::vector<std::uint8_t>> prefs;
    std::vector<BigInt> cap;
    for (const auto& b : lines) {
      prefs.push_back(upper_prefs(b, n));
      cap.push_back(b.multiplicity());
    }
    require_within(unit_vector_count(cap, inst.k), limits, inst.problem.code());
    std::optional<std::vector<BigInt>> found;
    for_each_unit_vector(cap, inst.k, [&](const std::vector<BigInt>& u) {
      budget.spend();
      TallyAcc acc = base;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        if (adding) {
          acc.add(prefs[i], u[i]);
        } else {
          acc.total -= u[i];
          for (std::size_t q = 0; q < pairs; ++q)
            if (prefs[i][q]) acc.up[q] -= u[i];
        }
      }
      if (goal_on(acc, all)) {
        found = u;
        return true;
      }
      return false;
    });
    if (!found) return Decision::no();
    if (adding) return Decision::yes_with(AddedVoters{*found});
    return Decision::yes_with(DeletedVoters{*found});
  }

  // PV: every split of the unit voters; V1 gets u[i] units of line i.
  std::vector<BigInt> cap;
  for (const auto& b : e.ballots()) cap.push_back(b.multiplicity());
  require_within(unit_vector_count(cap, std::nullopt), limits, inst.problem.code());
  const auto full_table = base.table(names);
  const PointTable full(full_table, inst.alpha);
  const SubsetGoal check(goal, full_table, inst.alpha);
  std::optional<std::vector<BigInt>> found;
  for_each_unit_vector(cap, std::nullopt, [&](const std::vector<BigInt>& u) {
    budget.spend();
    TallyAcc first(pairs), second(pairs);
    for (std::size_t i = 0; i < u.size(); ++i) {
      first.add(line_prefs[i], u[i]);
      second.add(line_prefs[i], cap[i] - u[i]);
    }
    std::vector<bool> fin(n, false);
    for (const auto* acc : {&first, &second}) {
      const PointTable pts(acc->table(names), inst.alpha);
      for (auto c : survivors(pts, all, inst.problem.rule)) fin[c] = true;
    }
    if (check(fin, full.scores_within(fin))) {
      found = u;
      return true;
    }
    return false;
  });
  if (!found) return Decision::no();
  return Decision::yes_with(PartitionOfVoters{*found});
}

}  // namespace detail

/// Exhaustive (complete) decision procedure for every control problem. YES
/// answers carry a witness accepted by check_control_witness.
inline Decision solve_control_exact(const ControlInstance& inst, const SizeLimits& limits = {},
                                    SearchMode mode = SearchMode::Auto) {
  inst.validate();
  if (inst.candidates().size() > limits.max_candidates)
    throw Error(Errc::BudgetExceeded, std::to_string(inst.candidates().size()) + " candidates exceed the limit");
  if (inst.problem.is_candidate_control()) return detail::candidate_control_exact(inst, limits, mode);
  return detail::voter_control_exact(inst, limits);
}

// ---- Bribery ---------------------------------------------------------------

namespace detail {

inline std::vector<Ballot> all_linear_ballots(std::size_t n) {
  std::vector<CandidateIndex> o(n);
  std::iota(o.begin(), o.end(), 0);
  std::vector<Ballot> out;
  do out.push_back(Ballot::linear(o)); while (std::next_permutation(o.begin(), o.end()));
  return out;
}

inline std::vector<Ballot> all_table_ballots(std::size_t n) {
  const auto pairs = pair_count(n);
  if (pairs >= 24) throw Error(Errc::BudgetExceeded, "too many preference tables");
  std::vector<Ballot> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) {
    std::vector<std::uint8_t> p(pairs);
    for (std::size_t q = 0; q < pairs; ++q) p[q] = (m >> q) & 1;
    out.push_back(Ballot::table(std::move(p)));
  }
  return out;
}

/// Nondecreasing index sequences of length len over [0, options).
inline bool for_each_multiset(std::size_t options, std::size_t len,
                              const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(len, 0);
  if (len > 0 && options == 0) return false;
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = len;
    while (i > 0 && idx[i - 1] == options - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < len; ++j) idx[j] = idx[i - 1];
  }
}

inline BigInt multiset_count(std::size_t options, std::size_t len) {
  // C(options + len - 1, len)
  BigInt c = 1;
  for (std::size_t i = 0; i < len; ++i) c = c * (options + i) / (i + 1);
  return c;
}

}  // namespace detail

/// Bribery: at most k unit voters receive new ballots of the same kind.
inline Decision solve_bribery_exact(const Election& e, const Alpha& alpha, const GoalSpec& goal_spec, const BigInt& k,
                                    const SizeLimits& limits = {}) {
  const auto n = e.size();
  const auto& names = e.candidates();
  const BoundGoal goal(goal_spec, names);
  if (e.total_multiplicity() > BigInt(limits.max_voters))
    throw Error(Errc::BudgetExceeded, "too many voters for exhaustive bribery");
  const auto pairs = pair_count(n);
  const std::vector<bool> all(n, true);
  std::vector<std::vector<std::uint8_t>> line_prefs;
  std::vector<BigInt> cap;
  bool any_linear = false, any_table = false;
  for (const auto& b : e.ballots()) {
    line_prefs.push_back(detail::upper_prefs(b, n));
    cap.push_back(b.multiplicity());
    (b.is_linear() ? any_linear : any_table) = true;
  }
  const auto lin = any_linear ? detail::all_linear_ballots(n) : std::vector<Ballot>{};
  const auto tab = any_table ? detail::all_table_ballots(n) : std::vector<Ballot>{};
  std::vector<std::vector<std::uint8_t>> lin_prefs, tab_prefs;
  for (const auto& b : lin) lin_prefs.push_back(detail::upper_prefs(b, n));
  for (const auto& b : tab) tab_prefs.push_back(detail::upper_prefs(b, n));

  detail::TallyAcc base(pairs);
  for (std::size_t i = 0; i < cap.size(); ++i) base.add(line_prefs[i], cap[i]);
  detail::Budget budget(limits.max_subsets);
  const auto kk = static_cast<std::size_t>(std::min(k, e.total_multiplicity()));

  std::optional<BribedBallots> found;
  detail::for_each_unit_vector(cap, BigInt(kk), [&](const std::vector<BigInt>& removed) {
    std::size_t jl = 0, jt = 0;
    detail::TallyAcc after = base;
    for (std::size_t i = 0; i < removed.size(); ++i) {
      if (removed[i] == 0) continue;
      (e.ballots()[i].is_linear() ? jl : jt) += static_cast<std::size_t>(removed[i]);
      after.total -= removed[i];
      for (std::size_t q = 0; q < pairs; ++q)
        if (line_prefs[i][q]) after.up[q] -= removed[i];
    }
    detail::require_within(detail::multiset_count(lin.size(), jl) * detail::multiset_count(tab.size(), jt), limits,
                           "bribery");
    return detail::for_each_multiset(lin.size(), jl, [&](const std::vector<std::size_t>& lsel) {
      return detail::for_each_multiset(tab.size(), jt, [&](const std::vector<std::size_t>& tsel) {
        budget.spend();
        detail::TallyAcc acc = after;
        for (auto i : lsel) acc.add(lin_prefs[i], 1);
        for (auto i : tsel) acc.add(tab_prefs[i], 1);
        const auto table = acc.table(names);
        const PointTable pts(table, alpha);
        if (!detail::SubsetGoal(goal, table, alpha)(all, pts.scores_within(all))) return false;
        BribedBallots w;
        std::size_t li = 0, ti = 0;
        for (std::size_t line = 0; line < removed.size(); ++line) {
          for (BigInt u = 0; u < removed[line]; ++u) {
            if (e.ballots()[line].is_linear()) w.changes.emplace_back(line, lin[lsel[li++]]);
            else w.changes.emplace_back(line, tab[tsel[ti++]]);
          }
        }
        found = std::move(w);
        return true;
      });
    });
  });
  if (!found) return Decision::no();
  return Decision::yes_with(std::move(*found));
}

inline Decision solve_bribery_exact(const Election& e, const Alpha& alpha, const std::string& p, const BigInt& k,
                                    bool constructive, WinnerModel model, const SizeLimits& limits = {}) {
  return solve_bribery_exact(e, alpha, default_goal(p, constructive, model), k, limits);
}

/// Microbribery: at most k single-entry flips on table ballots. The outcome
/// depends on the flips only through each pair's net tally shift, and a net
/// shift of s costs at least |s| flips; the search therefore enumerates all
/// shift vectors with total cost <= k, which covers every flip multiset.
inline Decision solve_microbribery_exact(const Election& e, const Alpha& alpha, const GoalSpec& goal_spec,
                                         const BigInt& k, const SizeLimits& limits = {}) {
  if (!e.all_tables()) throw Error(Errc::NotIrrational, "microbribery needs preference-table ballots");
  const auto n = e.size();
  const auto& names = e.candidates();
  const BoundGoal goal(goal_spec, names);
  const auto pairs = pair_count(n);
  const std::vector<bool> all(n, true);
  detail::TallyAcc base(pairs);
  for (const auto& b : e.ballots()) base.add(b.prefs(), b.multiplicity());
  detail::Budget budget(limits.max_subsets);
  // Per pair: units preferring the lower index (A) and the higher one (B).
  std::vector<BigInt> pro(pairs), con(pairs);
  for (std::size_t q = 0; q < pairs; ++q) {
    pro[q] = base.up[q];
    con[q] = base.total - base.up[q];
  }
  std::vector<BigInt> shift(pairs, 0);
  std::function<bool(std::size_t, BigInt)> rec = [&](std::size_t q, BigInt left) -> bool {
    if (q == pairs) {
      budget.spend();
      detail::TallyAcc acc = base;
      for (std::size_t r = 0; r < pairs; ++r) acc.up[r] += shift[r];
      const auto table = acc.table(names);
      const PointTable pts(table, alpha);
      return detail::SubsetGoal(goal, table, alpha)(all, pts.scores_within(all));
    }
    const BigInt lo = -std::min(pro[q], left), hi = std::min(con[q], left);
    // Try zero first, then growing magnitudes.
    for (BigInt mag = 0; mag <= std::max(BigInt(-lo), hi); ++mag) {
      for (int sign : {1, -1}) {
        if (mag == 0 && sign == -1) continue;
        const BigInt s = mag * sign;
        if (s < lo || s > hi) continue;
        shift[q] = s;
        if (rec(q + 1, left - mag)) return true;
      }
    }
    shift[q] = 0;
    return false;
  };
  if (!rec(0, k)) return Decision::no();

  // Realize the shifts as concrete flips on specific lines.
  Flips w;
  std::vector<std::pair<CandidateIndex, CandidateIndex>> pair_of(pairs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pair_of[pair_index(n, i, j)] = {i, j};
  for (std::size_t q = 0; q < pairs; ++q) {
    if (shift[q] == 0) continue;
    auto [i, j] = pair_of[q];
    const bool toward_lower = shift[q] > 0;  // units preferring j switch to i > j
    BigInt need = toward_lower ? shift[q] : BigInt(-shift[q]);
    for (std::size_t line = 0; line < e.ballots().size() && need > 0; ++line) {
      const auto& b = e.ballots()[line];
      const bool prefers_lower = b.prefs()[q] == 1;
      if (prefers_lower == toward_lower) continue;
      const BigInt take = std::min(need, b.multiplicity());
      w.flips.push_back(toward_lower ? Flip{line, i, j, take} : Flip{line, j, i, take});
      need -= take;
    }
  }
  return Decision::yes_with(std::move(w));
}

inline Decision solve_microbribery_exact(const Election& e, const Alpha& alpha, const std::string& p,
                                         const BigInt& k, bool constructive, WinnerModel model,
                                         const SizeLimits& limits = {}) {
  return solve_microbribery_exact(e, alpha, default_goal(p, constructive, model), k, limits);
}

}  // namespace copeland
