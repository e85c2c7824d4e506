#pragma once

// Invariant grids run by `selftest`, the unit suite and the acceptance binary.

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "copeland/fast.hpp"
#include "copeland/reductions.hpp"

namespace copeland::selftest {

struct Tally {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::string first_failure;

  void record(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (mismatches++ == 0) first_failure = what();
  }
  bool ok() const noexcept { return mismatches == 0; }
};

// ---- Random instances ------------------------------------------------------

inline std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
  return v;
}

inline const std::vector<Alpha>& alpha_grid() {
  static const std::vector<Alpha> g{Alpha(0, 1), Alpha(1, 3), Alpha(1, 2), Alpha(2, 3), Alpha(1, 1)};
  return g;
}

inline Ballot random_linear(std::mt19937_64& rng, std::size_t n, BigInt m = 1) {
  std::vector<CandidateIndex> o(n);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(o.begin(), o.end(), rng);
  return Ballot::linear(std::move(o), std::move(m));
}

inline Ballot random_table(std::mt19937_64& rng, std::size_t n, BigInt m = 1) {
  std::vector<std::uint8_t> p(pair_count(n));
  for (auto& x : p) x = static_cast<std::uint8_t>(rng() & 1);
  return Ballot::table(std::move(p), std::move(m));
}

/// Random election; `mixed` draws each ballot's kind at random.
inline Election random_election(std::mt19937_64& rng, std::size_t n, std::size_t voters, bool mixed,
                                bool tables_only = false) {
  std::vector<Ballot> bs;
  for (std::size_t v = 0; v < voters; ++v) {
    const bool table = tables_only || (mixed && (rng() & 1));
    bs.push_back(table ? random_table(rng, n) : random_linear(rng, n));
  }
  return Election(letters(n), std::move(bs));
}

inline DesiredOutcomes random_pattern(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& names) {
  DesiredOutcomes d(names);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, static_cast<Result>(static_cast<int>(rng() % 3) - 1));
  return d;
}

/// Every outcome pattern on n candidates.
inline void for_each_outcome_pattern(std::size_t n, const std::function<void(const DesiredOutcomes&)>& fn) {
  const auto names = letters(n);
  const auto pairs = pair_count(n);
  std::vector<int> r(pairs, 0);
  while (true) {
    DesiredOutcomes d(names);
    std::size_t q = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, static_cast<Result>(r[q++] - 1));
    fn(d);
    std::size_t i = 0;
    while (i < pairs && r[i] == 2) r[i++] = 0;
    if (i == pairs) return;
    ++r[i];
  }
}

inline std::string describe(const ControlInstance& inst) {
  std::ostringstream os;
  os << inst.problem.code() << " alpha=" << inst.alpha.str()
     << (inst.model == WinnerModel::Unique ? " unique" : " nonunique") << " p=" << inst.p;
  if (inst.k) os << " k=" << *inst.k;
  const auto t = inst.full_table();
  os << " table=";
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) os << static_cast<int>(t.result(i, j)) + 1;
  if (!inst.spoiler_candidates.empty()) os << " spoilers=" << inst.spoiler_candidates.size();
  return os.str();
}

inline ControlInstance make_instance(const std::string& code, WinnerModel model, const Alpha& a,
                                     std::optional<BigInt> k = std::nullopt) {
  ControlInstance inst;
  inst.problem = Problem::parse(code);
  inst.model = model;
  inst.alpha = a;
  inst.k = std::move(k);
  inst.p = "a";
  return inst;
}

/// Same answer as the exhaustive solver, and a YES witness that re-verifies.
inline bool agrees(const ControlInstance& inst, const Decision& fast) {
  const auto exact = solve_control_exact(inst);
  if (exact.yes != fast.yes) return false;
  return !fast.yes || (fast.witness && check_control_witness(inst, *fast.witness));
}

// ---- Construction suites -----------------------------------------------------

/// Every candidate of Pad_n scores exactly n points.
inline Tally pad_suite(std::size_t nmax) {
  Tally t;
  for (std::size_t n = 0; n <= nmax; ++n) {
    const auto table = outcome_table(build_pad(n));
    for (const auto& a : alpha_grid()) {
      const auto s = copeland_scores(table, a).scaled;
      bool ok = s.size() == 2 * n + 1;
      for (auto x : s) ok = ok && x == static_cast<std::int64_t>(n) * a.den();
      t.record(ok, [&] { return "Pad_" + std::to_string(n) + " alpha=" + a.str(); });
    }
  }
  return t;
}

/// Construction lemma on random bases (n <= 8), scores tallied from realized ballots.
inline Tally construction_suite(std::size_t count, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (std::size_t round = 0; round < count; ++round) {
    const std::size_t n = 1 + rng() % 8;
    const auto base = random_pattern(rng, n, letters(n));
    std::vector<std::size_t> k(n);
    for (auto& x : k) x = rng() % (n + 1);
    // The pattern does not depend on alpha; each build self-checks its scores.
    bool built = true;
    for (const auto& a : alpha_grid()) {
      try {
        if (!(scored_pattern({base, k}, a) == scored_pattern({base, k}, Alpha(1, 2)))) built = false;
      } catch (const Error&) {
        built = false;
      }
    }
    if (!built) {
      t.record(false, [&] { return "construction lemma build failed, n=" + std::to_string(n); });
      continue;
    }
    const auto table = outcome_table(realize_outcomes(scored_pattern({base, k}, Alpha(1, 2))));
    for (const auto& a : alpha_grid()) {
      const auto s = copeland_scores(table, a).scaled;
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i)
        ok = ok && s[i] == a.den() * static_cast<std::int64_t>(2 * n * n - k[i]) +
                               a.num() * static_cast<std::int64_t>(base.ties_of(i));
      for (std::size_t j = n; j < s.size(); ++j) ok = ok && s[j] <= a.den() * static_cast<std::int64_t>(n * n + 1);
      t.record(ok, [&] { return "construction lemma n=" + std::to_string(n) + " alpha=" + a.str(); });
    }
  }
  return t;
}

/// outcome_table(realize_outcomes(T)) reproduces T.
inline Tally realization_suite(std::size_t exhaustive_max, std::size_t random_count, std::uint64_t seed) {
  Tally t;
  auto check = [&](const DesiredOutcomes& d) {
    const auto back = DesiredOutcomes::of(outcome_table(realize_outcomes(d)));
    t.record(back.matrix() == d.matrix(), [&] { return "realization, " + std::to_string(d.size()) + " candidates"; });
  };
  for (std::size_t n = 1; n <= exhaustive_max; ++n) for_each_outcome_pattern(n, check);
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) check(random_pattern(rng, 10, letters(10)));
  return t;
}

// ---- Fast solvers against the exhaustive ones ---------------------------------

inline const std::vector<Alpha>& fast_alphas() {
  static const std::vector<Alpha> g{Alpha(0, 1), Alpha(1, 3), Alpha(1, 2), Alpha(1, 1)};
  return g;
}

/// Destructive candidate instances over n candidates (p = "a").
inline void destructive_family(bool partition, std::size_t n, const std::function<void(ControlInstance)>& fn) {
  for (const auto& a : fast_alphas()) {
    for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
      if (partition) {
        for (const char* code : {"DCPC-TP", "DCPC-TE", "DCRPC-TP", "DCRPC-TE"}) fn(make_instance(code, model, a));
        continue;
      }
      for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{2}, n})
        fn(make_instance("DCDC", model, a, BigInt(k)));
      for (std::size_t s = 1; s <= 2 && s < n; ++s) {
        auto spoil = [&](ControlInstance inst) {
          for (std::size_t i = n - s; i < n; ++i) inst.spoiler_candidates.push_back(letters(n)[i]);
          return inst;
        };
        fn(spoil(make_instance("DCAC_u", model, a)));
        for (std::size_t k : {0, 1, 2}) fn(spoil(make_instance("DCAC", model, a, BigInt(k))));
      }
    }
  }
}

/// Greedy (partition == false) or partition solver: every outcome pattern on
/// up to `max_exhaustive` candidates, then `random_count` random elections
/// with up to 7 candidates and 7 unit voters.
inline Tally destructive_candidate_grid(bool partition, std::size_t max_exhaustive, std::size_t random_count,
                                        std::uint64_t seed) {
  Tally t;
  auto run = [&](ControlInstance inst) {
    const auto d = partition ? destructive_partition_candidate(inst) : greedy_destructive_candidate(inst);
    t.record(agrees(inst, d), [&] { return describe(inst); });
  };
  for (std::size_t n = 1; n <= max_exhaustive; ++n) {
    for_each_outcome_pattern(n, [&](const DesiredOutcomes& d) {
      destructive_family(partition, n, [&](ControlInstance inst) {
        inst.pattern = d;
        run(std::move(inst));
      });
    });
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) {
    const std::size_t n = 2 + rng() % 6, voters = 1 + rng() % 7;
    const auto e = random_election(rng, n, voters, true);
    destructive_family(partition, n, [&](ControlInstance inst) {
      inst.election = e;
      run(std::move(inst));
    });
  }
  return t;
}

/// Microbribery DP: random table elections with up to 4 candidates and 4
/// unit voters, k <= 3, alpha in {0, 1/2, 1}, both models.
inline Tally microbribery_grid(std::size_t count, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t n = 2 + rng() % 3, voters = 1 + rng() % 4;
    const auto e = random_election(rng, n, voters, false, true);
    for (const auto& a : {Alpha(0, 1), Alpha(1, 2), Alpha(1, 1)}) {
      for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
        for (int k = 0; k <= 3; ++k) {
          const auto fast = destructive_microbribery_dp(e, a, "a", k, model);
          const auto exact = solve_microbribery_exact(e, a, "a", k, false, model);
          const bool ok = fast.yes == exact.yes &&
                          (!fast.yes || (fast.witness && check_bribery_witness(e, a, default_goal("a", false, model),
                                                                               k, *fast.witness)));
          t.record(ok, [&] {
            return "microbribery n=" + std::to_string(n) + " voters=" + std::to_string(voters) + " alpha=" + a.str() +
                   " k=" + std::to_string(k);
          });
        }
      }
    }
  }
  return t;
}

inline std::vector<GoalSpec> sample_goals() {
  return {MakeWinner{"a"}, MakeUniqueWinner{"a"}, PrecludeWinner{"a"}, PrecludeUniqueWinner{"a"},
          ScoreOrder{{{"b", Relation::Less, "a"}}}, GroupDominance{{"a", "b"}, {"c"}}};
}

/// Both FPT solvers on in-bound instances (3-4 candidates, small multiplicities).
inline Tally fpt_grid(std::size_t count, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const auto goals = sample_goals();
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t n = 3 + rng() % 2;
    const auto a = fast_alphas()[rng() % fast_alphas().size()];
    const auto model = rng() & 1 ? WinnerModel::Unique : WinnerModel::NonUnique;
    const auto& goal = goals[rng() % goals.size()];

    std::vector<Ballot> lines, pool;
    for (std::size_t i = 0, m = 1 + rng() % 3; i < m; ++i) {
      const BigInt mult = 1 + rng() % 2;
      lines.push_back(rng() & 1 ? random_table(rng, n, mult) : random_linear(rng, n, mult));
    }
    for (std::size_t i = 0, m = 1 + rng() % 2; i < m; ++i) pool.push_back(random_linear(rng, n, 1 + rng() % 2));
    const Election e(letters(n), lines);
    for (const char* code : {"CCAV", "DCAV", "CCDV", "DCDV", "CCPV-TP", "DCPV-TP", "CCPV-TE", "DCPV-TE"}) {
      auto inst = make_instance(code, model, a);
      inst.election = e;
      if (inst.problem.needs_pool()) inst.voter_pool = pool;
      if (inst.problem.bounded()) inst.k = BigInt(rng() % 3);
      inst.goal = goal;
      BigInt voters = e.total_multiplicity();
      for (const auto& b : inst.voter_pool) voters += b.multiplicity();
      for (auto kind : {BoundParameter::Kind::BC, BoundParameter::Kind::BV}) {
        const BoundParameter bound{kind, kind == BoundParameter::Kind::BC ? n : static_cast<std::size_t>(voters)};
        const auto d = fpt_voter_control(inst, bound);
        t.record(agrees(inst, d),
                 [&] { return describe(inst) + (kind == BoundParameter::Kind::BC ? " BC" : " BV"); });
      }
    }

    const auto pat = random_pattern(rng, n, letters(n));
    for (const char* code : {"CCAC_u", "DCAC_u", "CCAC", "DCAC", "CCDC", "DCDC", "CCPC-TP", "DCPC-TP", "CCPC-TE",
                             "DCPC-TE", "CCRPC-TP", "DCRPC-TP", "CCRPC-TE", "DCRPC-TE"}) {
      auto inst = make_instance(code, model, a);
      inst.pattern = pat;
      if (inst.problem.needs_spoilers()) inst.spoiler_candidates = {letters(n).back()};
      if (inst.problem.bounded()) inst.k = BigInt(rng() % 3);
      inst.goal = goal;
      const auto d = fpt_candidate_control(inst, BoundParameter{BoundParameter::Kind::BC, n});
      t.record(agrees(inst, d), [&] { return describe(inst); });
    }
  }
  return t;
}

// ---- Reductions --------------------------------------------------------------

/// Small graphs every reduction is checked on.
inline std::vector<Graph> builtin_graphs() {
  return {Graph(2, {{1, 2}}),         Graph(3, {{1, 2}, {2, 3}}),         Graph(3, {{1, 2}, {2, 3}, {1, 3}}),
          Graph(4, {{1, 2}, {3, 4}}), Graph(4, {{1, 2}, {1, 3}, {1, 4}}), Graph(4, {{1, 2}, {2, 3}, {3, 4}})};
}

inline ControlInstance reduce_by_name(const std::string& to, const Graph& g, std::size_t k, const Alpha& a,
                                      WinnerModel model) {
  if (to == "CCACu") return reduce_vc_to_ccacu(g, k, a, model);
  if (to == "CCDC") return reduce_vc_to_ccdc(g, k, a, model);
  if (to == "CCRPC-TP") return reduce_vc_to_ccrpc(g, k, TieRule::TP, a, model);
  if (to == "CCRPC-TE") return reduce_vc_to_ccrpc(g, k, TieRule::TE, a, model);
  throw Error(Errc::WrongProblem, "no reduction to '" + to + "'");
}

/// verify_reduction agrees with vc_brute on every graph given, all k <= n,
/// both models; generator self-checks run inside every build.
inline Tally reduction_suite(const std::vector<Graph>& graphs, const std::vector<Alpha>& alphas) {
  Tally t;
  for (const auto& g : graphs) {
    for (const char* to : {"CCACu", "CCDC", "CCRPC-TP", "CCRPC-TE"}) {
      for (const auto& a : alphas) {
        const std::string target = to;
        if (target == "CCACu" && !a.strictly_between_zero_and_one()) continue;
        for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
          for (std::size_t k = 0; k <= g.vertex_count(); ++k) {
            bool ok = false;
            try {
              ok = verify_reduction(g, k, reduce_by_name(target, g, k, a, model)).equal;
            } catch (const Error&) {
            }
            t.record(ok, [&] {
              return target + " n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edges().size()) +
                     " k=" + std::to_string(k) + " alpha=" + a.str();
            });
          }
        }
      }
    }
  }
  return t;
}

// ---- Driver -------------------------------------------------------------------

struct Suite {
  std::string name;
  std::function<Tally()> run;
};

inline std::vector<Suite> suites(bool quick) {
  const std::size_t s = quick ? 1 : 0;
  return {
      {"realization", [=] { return realization_suite(quick ? 3 : 4, quick ? 50 : 500, 1); }},
      {"pad", [=] { return pad_suite(quick ? 12 : 50); }},
      {"construction-lemma", [=] { return construction_suite(quick ? 20 : 100, 2); }},
      {"greedy-equivalence", [=] { return destructive_candidate_grid(false, 5 - s, quick ? 20 : 200, 3); }},
      {"partition-equivalence", [=] { return destructive_candidate_grid(true, 5 - s, quick ? 20 : 200, 4); }},
      {"microbribery-equivalence", [=] { return microbribery_grid(quick ? 60 : 500, 5); }},
      {"fpt-equivalence", [=] { return fpt_grid(quick ? 40 : 500, 6); }},
      {"reductions", [=] {
         auto graphs = builtin_graphs();
         if (quick) graphs.resize(3);
         return reduction_suite(graphs, {Alpha(1, 3), Alpha(1, 2)});
       }},
  };
}

/// Prints one line per suite; true when every suite passes.
inline bool run_selftest(std::ostream& out, bool quick) {
  bool all = true;
  for (const auto& suite : suites(quick)) {
    Tally t;
    try {
      t = suite.run();
    } catch (const std::exception& ex) {
      t.record(false, [&] { return std::string("exception: ") + ex.what(); });
    }
    all = all && t.ok();
    out << (t.ok() ? "PASS " : "FAIL ") << suite.name << " (" << t.checked << " checks";
    if (!t.ok()) out << ", " << t.mismatches << " failed; first: " << t.first_failure;
    out << ")\n";
  }
  return all;
}

}  // namespace copeland::selftest
