#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "copeland/outcome.hpp"

namespace copeland {

enum class Relation { Less, LessEqual, Equal };

struct MakeWinner { std::string p; };
struct MakeUniqueWinner { std::string p; };
struct PrecludeWinner { std::string p; };
struct PrecludeUniqueWinner { std::string p; };
struct ScoreComparison {
  std::string a;
  Relation rel;
  std::string b;
};
struct ScoreOrder { std::vector<ScoreComparison> relations; };
struct ExactScaledScores { std::vector<std::pair<std::string, std::int64_t>> scores; };
/// Every member of `a` strictly outscores every member of `b`.
struct GroupDominance {
  std::vector<std::string> a;
  std::vector<std::string> b;
};
/// Arbitrary condition on the resulting outcome table (API-only extension hook).
struct TablePredicate {
  std::function<bool(const OutcomeTable&, const Alpha&)> holds;
  std::string label = "predicate";
};

using GoalSpec = std::variant<MakeWinner, MakeUniqueWinner, PrecludeWinner, PrecludeUniqueWinner,
                              ScoreOrder, ExactScaledScores, GroupDominance, TablePredicate>;

/// Default goal for constructive/destructive control of p in a winner model.
inline GoalSpec default_goal(const std::string& p, bool constructive, WinnerModel model) {
  if (constructive) {
    if (model == WinnerModel::Unique) return MakeUniqueWinner{p};
    return MakeWinner{p};
  }
  if (model == WinnerModel::Unique) return PrecludeUniqueWinner{p};
  return PrecludeWinner{p};
}

/// Which of the four standard goals (if any) a GoalSpec is.
struct StandardGoal {
  std::string p;
  bool constructive;
  WinnerModel model;
};

inline std::optional<StandardGoal> as_standard(const GoalSpec& g) {
  if (auto* x = std::get_if<MakeWinner>(&g)) return StandardGoal{x->p, true, WinnerModel::NonUnique};
  if (auto* x = std::get_if<MakeUniqueWinner>(&g)) return StandardGoal{x->p, true, WinnerModel::Unique};
  if (auto* x = std::get_if<PrecludeWinner>(&g)) return StandardGoal{x->p, false, WinnerModel::NonUnique};
  if (auto* x = std::get_if<PrecludeUniqueWinner>(&g)) return StandardGoal{x->p, false, WinnerModel::Unique};
  return std::nullopt;
}

inline std::vector<std::string> referenced_candidates(const GoalSpec& g) {
  std::vector<std::string> out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ScoreOrder>) {
          for (const auto& r : v.relations) {
            out.push_back(r.a);
            out.push_back(r.b);
          }
        } else if constexpr (std::is_same_v<T, ExactScaledScores>) {
          for (const auto& [c, _] : v.scores) out.push_back(c);
        } else if constexpr (std::is_same_v<T, GroupDominance>) {
          out.insert(out.end(), v.a.begin(), v.a.end());
          out.insert(out.end(), v.b.begin(), v.b.end());
        } else if constexpr (std::is_same_v<T, TablePredicate>) {
        } else {
          out.push_back(v.p);
        }
      },
      g);
  return out;
}

/// Throws InvalidGoal when the strict relations of a ScoreOrder cannot all
/// hold (a cycle through the "<=" graph containing a "<" edge).
inline void check_goal_consistency(const GoalSpec& g) {
  const auto* so = std::get_if<ScoreOrder>(&g);
  if (!so) return;
  std::map<std::string, std::size_t> id;
  for (const auto& r : so->relations) {
    id.emplace(r.a, id.size());
    id.emplace(r.b, id.size());
  }
  const auto n = id.size();
  // reach[i][j]: score(i) <= score(j) is implied; strict[i][j]: < is implied.
  std::vector<std::vector<int>> rel(n, std::vector<int>(n, -1));  // -1 none, 0 <=, 1 <
  auto add = [&](std::size_t a, std::size_t b, int s) { rel[a][b] = std::max(rel[a][b], s); };
  for (const auto& r : so->relations) {
    const auto a = id[r.a], b = id[r.b];
    switch (r.rel) {
      case Relation::Less: add(a, b, 1); break;
      case Relation::LessEqual: add(a, b, 0); break;
      case Relation::Equal: add(a, b, 0); add(b, a, 0); break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) add(i, i, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] >= 0 && rel[k][j] >= 0) add(i, j, std::max(rel[i][k], rel[k][j]));
  for (std::size_t i = 0; i < n; ++i)
    if (rel[i][i] == 1) throw Error(Errc::InvalidGoal, "score order contains a strict cycle");
}

/// A GoalSpec with candidate names resolved against a fixed universe.
///
/// Inside solvers some candidates of the universe may be absent from the
/// evaluated election (deleted, not added). An absent candidate is never a
/// winner, every score comparison involving it is false, and it is ignored
/// by GroupDominance.
class BoundGoal {
 public:
  BoundGoal(const GoalSpec& goal, const std::vector<std::string>& universe) : goal_(goal) {
    check_goal_consistency(goal);
    for (const auto& name : referenced_candidates(goal)) {
      bool found = false;
      for (std::size_t i = 0; i < universe.size(); ++i) {
        if (universe[i] == name) {
          index_.emplace(name, i);
          found = true;
          break;
        }
      }
      if (!found) throw Error(Errc::UnknownCandidate, "goal references '" + name + "'");
    }
    standard_ = as_standard(goal);
    if (standard_) p_ = index_.at(standard_->p);
  }

  const GoalSpec& spec() const noexcept { return goal_; }
  const std::optional<StandardGoal>& standard() const noexcept { return standard_; }
  /// Distinguished candidate of a standard goal.
  CandidateIndex target() const noexcept { return p_; }
  bool needs_table() const noexcept { return std::holds_alternative<TablePredicate>(goal_); }

  /// `present` and `scaled` are indexed by the universe; `scaled` holds the
  /// score of each present candidate in the evaluated election and `winners`
  /// its (nonunique) winner set. `table` is only invoked for TablePredicate.
  bool holds(const std::vector<bool>& present, const std::vector<std::int64_t>& scaled,
             const CandidateSet& winners, const Alpha& alpha,
             const std::function<OutcomeTable()>& table = {}) const {
    auto is_winner = [&](CandidateIndex c) {
      return std::find(winners.begin(), winners.end(), c) != winners.end();
    };
    return std::visit(
        [&](const auto& v) -> bool {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, MakeWinner>) {
            return is_winner(p_);
          } else if constexpr (std::is_same_v<T, MakeUniqueWinner>) {
            return winners.size() == 1 && winners[0] == p_;
          } else if constexpr (std::is_same_v<T, PrecludeWinner>) {
            return !is_winner(p_);
          } else if constexpr (std::is_same_v<T, PrecludeUniqueWinner>) {
            return !(winners.size() == 1 && winners[0] == p_);
          } else if constexpr (std::is_same_v<T, ScoreOrder>) {
            for (const auto& r : v.relations) {
              const auto a = index_.at(r.a), b = index_.at(r.b);
              if (!present[a] || !present[b]) return false;
              const bool ok = r.rel == Relation::Less        ? scaled[a] < scaled[b]
                              : r.rel == Relation::LessEqual ? scaled[a] <= scaled[b]
                                                             : scaled[a] == scaled[b];
              if (!ok) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, ExactScaledScores>) {
            for (const auto& [name, want] : v.scores) {
              const auto c = index_.at(name);
              if (!present[c] || scaled[c] != want) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, GroupDominance>) {
            for (const auto& an : v.a) {
              const auto a = index_.at(an);
              if (!present[a]) continue;
              for (const auto& bn : v.b) {
                const auto b = index_.at(bn);
                if (present[b] && scaled[a] <= scaled[b]) return false;
              }
            }
            return true;
          } else {
            return v.holds && v.holds(table(), alpha);
          }
        },
        goal_);
  }

 private:
  GoalSpec goal_;
  std::map<std::string, CandidateIndex> index_;
  std::optional<StandardGoal> standard_;
  CandidateIndex p_ = 0;
};

/// Goal evaluated on a complete single-stage election given by its table.
inline bool evaluate_goal(const OutcomeTable& table, const Alpha& alpha, const GoalSpec& goal) {
  BoundGoal bound(goal, table.names());
  const auto scores = copeland_scores(table, alpha);
  const auto w = table.size() ? winners_of_scores(scores.scaled, WinnerModel::NonUnique) : CandidateSet{};
  return bound.holds(std::vector<bool>(table.size(), true), scores.scaled, w, alpha, [&] { return table; });
}

}  // namespace copeland
