#include <gtest/gtest.h>

#include "copeland/exact.hpp"
#include "test_support.hpp"

namespace copeland {
namespace {

using testing::letters;
using testing::order;

Ballot table(std::initializer_list<std::uint8_t> p, BigInt m = 1) {
  return Ballot::table(std::vector<std::uint8_t>(p), std::move(m));
}

ControlInstance instance(const std::string& problem, const Election& e, const std::string& p, WinnerModel model,
                         const Alpha& alpha, std::optional<BigInt> k = std::nullopt) {
  ControlInstance inst;
  inst.problem = Problem::parse(problem);
  inst.model = model;
  inst.alpha = alpha;
  inst.election = e;
  inst.p = p;
  inst.k = std::move(k);
  return inst;
}

// ---- Oracle: every action, judged only by the witness checker -------------

bool oracle(const ControlInstance& inst) {
  const auto& names = inst.candidates();
  const auto n = names.size();
  const auto type = inst.problem.type;
  if (inst.problem.is_candidate_control()) {
    if (type == ControlType::PC || type == ControlType::RPC) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        PartitionOfCandidates w;
        for (std::size_t i = 0; i < n; ++i) ((m >> i) & 1 ? w.second : w.first).push_back(names[i]);
        if (check_control_witness(inst, w)) return true;
      }
      return false;
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      std::vector<std::string> chosen;
      for (std::size_t i = 0; i < n; ++i)
        if ((m >> i) & 1) chosen.push_back(names[i]);
      const Witness w = type == ControlType::DC ? Witness(DeletedCandidates{chosen}) : Witness(AddedCandidates{chosen});
      try {
        if (check_control_witness(inst, w)) return true;
      } catch (const Error&) {
      }
    }
    return false;
  }
  const auto& lines = type == ControlType::AV ? inst.voter_pool : inst.election.ballots();
  std::vector<BigInt> u(lines.size(), 0);
  while (true) {
    Witness w = type == ControlType::AV   ? Witness(AddedVoters{u})
                : type == ControlType::DV ? Witness(DeletedVoters{u})
                                          : Witness(PartitionOfVoters{u});
    if (check_control_witness(inst, w)) return true;
    std::size_t i = 0;
    while (i < u.size() && u[i] == lines[i].multiplicity()) u[i++] = 0;
    if (i == u.size()) return false;
    ++u[i];
  }
}

void expect_consistent(const ControlInstance& inst, const Decision& d) {
  EXPECT_EQ(d.yes, oracle(inst)) << inst.problem.code();
  if (d.yes) {
    ASSERT_TRUE(d.witness.has_value());
    EXPECT_TRUE(check_control_witness(inst, *d.witness)) << inst.problem.code();
  }
}

// ---- Fixed examples ------------------------------------------------------

TEST(ExactVoters, DeletingOneVoterCreatesTie) {
  // ({a,b}; a>b x2, b>a x1), p = b, k = 1.
  const Election e(letters(2), {order({0, 1}, 2), order({1, 0}, 1)});
  const auto inst = instance("CCDV", e, "b", WinnerModel::NonUnique, Alpha(1, 2), BigInt(1));
  const auto d = solve_control_exact(inst);
  EXPECT_TRUE(d.yes);
  EXPECT_TRUE(check_control_witness(inst, *d.witness));
  auto u = inst;
  u.model = WinnerModel::Unique;
  EXPECT_FALSE(solve_control_exact(u).yes);
}

TEST(ExactCandidates, CycleDeletion) {
  const auto e = testing::e_cyc();
  // Deleting c leaves a > b.
  const auto inst = instance("CCDC", e, "a", WinnerModel::Unique, Alpha(1, 2), BigInt(1));
  const auto d = solve_control_exact(inst);
  ASSERT_TRUE(d.yes);
  EXPECT_EQ(std::get<DeletedCandidates>(*d.witness).names, (std::vector<std::string>{"c"}));
  EXPECT_FALSE(solve_control_exact(instance("CCDC", e, "a", WinnerModel::Unique, Alpha(1, 2), BigInt(0))).yes);
}

TEST(ExactCandidates, SpoilerAddition) {
  // a beats b; spoiler c beats a. Adding c makes b a co-winner at alpha = 1/2? c>a, a>b, b~c.
  const Election e(letters(3), {order({2, 0, 1}), order({0, 1, 2}), order({1, 2, 0})});
  auto inst = instance("CCACu", e, "b", WinnerModel::NonUnique, Alpha(1, 2));
  inst.spoiler_candidates = {"c"};
  expect_consistent(inst, solve_control_exact(inst));
}

TEST(ExactBribery, TwoBribesNeeded) {
  const Election e(letters(2), {order({1, 0}, 3)});
  const auto yes = solve_bribery_exact(e, Alpha(1, 2), "a", 2, true, WinnerModel::NonUnique);
  ASSERT_TRUE(yes.yes);
  EXPECT_TRUE(check_bribery_witness(e, Alpha(1, 2), default_goal("a", true, WinnerModel::NonUnique), 2, *yes.witness));
  EXPECT_FALSE(solve_bribery_exact(e, Alpha(1, 2), "a", 1, true, WinnerModel::NonUnique).yes);
}

TEST(ExactMicrobribery, DestructiveNeedsTwoFlips) {
  // Three tables with p > c: making p lose to c needs two flips.
  const Election e({"p", "c"}, {table({1}), table({1}), table({1})});
  const auto goal = default_goal("p", false, WinnerModel::NonUnique);
  const auto yes = solve_microbribery_exact(e, Alpha(1, 2), goal, 2);
  ASSERT_TRUE(yes.yes);
  EXPECT_TRUE(check_bribery_witness(e, Alpha(1, 2), goal, 2, *yes.witness));
  EXPECT_FALSE(solve_microbribery_exact(e, Alpha(1, 2), goal, 1).yes);
  const Election lin({"p", "c"}, {order({0, 1})});
  EXPECT_THROW(solve_microbribery_exact(lin, Alpha(1, 2), goal, 1), Error);
}

TEST(ExactLimits, BudgetExceededIsReported) {
  const auto e = testing::e_cyc();
  SizeLimits tiny;
  tiny.max_subsets = 1;
  EXPECT_THROW(solve_control_exact(instance("CCPC-TP", e, "a", WinnerModel::Unique, Alpha(1, 2)), tiny,
                                   SearchMode::Enumerate),
               Error);
}

// ---- Random instances against the oracle ----------------------------------

class ExactVsOracle : public ::testing::TestWithParam<int> {};

TEST_P(ExactVsOracle, CandidateControl) {
  std::mt19937_64 rng(100 + GetParam());
  const std::vector<std::string> problems{"CCDC", "DCDC", "CCACu", "DCACu", "CCAC", "DCAC",
                                          "CCPC-TP", "CCPC-TE", "DCPC-TP", "DCPC-TE", "CCRPC-TP", "CCRPC-TE",
                                          "DCRPC-TP", "DCRPC-TE"};
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 2 + rng() % 7;
    const auto e = testing::random_election(rng, n, 1 + rng() % 5, true);
    for (const auto& prob : problems) {
      const auto& a = testing::alpha_grid()[rng() % 5];
      const auto model = rng() & 1 ? WinnerModel::Unique : WinnerModel::NonUnique;
      auto inst = instance(prob, e, letters(n)[rng() % n], model, a);
      if (inst.problem.needs_spoilers()) {
        for (const auto& c : letters(n))
          if (c != inst.p && (rng() & 1)) inst.spoiler_candidates.push_back(c);
        if (inst.spoiler_candidates.empty()) continue;
      }
      if (inst.problem.bounded()) inst.k = BigInt(rng() % n);
      expect_consistent(inst, solve_control_exact(inst));
      expect_consistent(inst, solve_control_exact(inst, {}, SearchMode::Enumerate));
    }
  }
}

TEST_P(ExactVsOracle, VoterControl) {
  std::mt19937_64 rng(200 + GetParam());
  const std::vector<std::string> problems{"CCAV", "DCAV", "CCDV", "DCDV", "CCPV-TP", "CCPV-TE", "DCPV-TP", "DCPV-TE"};
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 2 + rng() % 3;
    auto e = testing::random_election(rng, n, 1 + rng() % 4, true);
    for (const auto& prob : problems) {
      auto inst = instance(prob, e, letters(n)[rng() % n], rng() & 1 ? WinnerModel::Unique : WinnerModel::NonUnique,
                           testing::alpha_grid()[rng() % 5]);
      if (inst.problem.needs_pool())
        for (int i = 0; i < 3; ++i) inst.voter_pool.push_back(testing::random_linear(rng, n, 1 + rng() % 2));
      if (inst.problem.bounded()) inst.k = BigInt(rng() % 3);
      expect_consistent(inst, solve_control_exact(inst));
    }
  }
}

// Unit-expanded brute force: every unit voter may receive any ballot of its kind.
bool bribery_oracle(const Election& e, const Alpha& a, const GoalSpec& goal, std::size_t k) {
  const auto units = e.unit_expanded();
  const auto n = e.size();
  std::vector<Ballot> lin, tab;
  std::vector<CandidateIndex> o(n);
  std::iota(o.begin(), o.end(), 0);
  do lin.push_back(Ballot::linear(o)); while (std::next_permutation(o.begin(), o.end()));
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pair_count(n)); ++m) {
    std::vector<std::uint8_t> p(pair_count(n));
    for (std::size_t q = 0; q < p.size(); ++q) p[q] = (m >> q) & 1;
    tab.push_back(Ballot::table(p));
  }
  const BoundGoal bound(goal, e.candidates());
  std::function<bool(std::size_t, std::size_t, std::vector<Ballot>&)> rec = [&](std::size_t i, std::size_t left,
                                                                                std::vector<Ballot>& cur) {
    if (i == cur.size()) {
      return detail::goal_on_subset(bound, outcome_table(e.with_ballots(cur)), std::vector<bool>(n, true), {}, false,
                                    a);
    }
    if (rec(i + 1, left, cur)) return true;
    if (left == 0) return false;
    const auto keep = cur[i];
    for (const auto& b : keep.is_linear() ? lin : tab) {
      cur[i] = b;
      if (rec(i + 1, left - 1, cur)) return true;
    }
    cur[i] = keep;
    return false;
  };
  auto cur = units.ballots();
  return rec(0, k, cur);
}

// Every sequence of at most k single flips.
bool microbribery_oracle(const Election& e, const Alpha& a, const GoalSpec& goal, std::size_t k) {
  const BoundGoal bound(goal, e.candidates());
  const auto n = e.size();
  std::function<bool(const Election&, std::size_t)> rec = [&](const Election& cur, std::size_t left) {
    if (detail::goal_on_subset(bound, outcome_table(cur), std::vector<bool>(n, true), {}, false, a)) return true;
    if (left == 0) return false;
    const auto units = cur.unit_expanded();
    for (std::size_t v = 0; v < units.ballots().size(); ++v) {
      for (std::size_t q = 0; q < pair_count(n); ++q) {
        auto bs = units.ballots();
        auto p = bs[v].prefs();
        p[q] ^= 1;
        bs[v] = Ballot::table(p);
        if (rec(cur.with_ballots(bs), left - 1)) return true;
      }
    }
    return false;
  };
  return rec(e, k);
}

TEST_P(ExactVsOracle, Bribery) {
  std::mt19937_64 rng(300 + GetParam());
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + rng() % 2;
    const auto e = testing::random_election(rng, n, 1 + rng() % 3, true);
    const auto goal = default_goal(letters(n)[rng() % n], rng() & 1,
                                   rng() & 1 ? WinnerModel::Unique : WinnerModel::NonUnique);
    const auto& a = testing::alpha_grid()[rng() % 5];
    const std::size_t k = rng() % 3;
    const auto d = solve_bribery_exact(e, a, goal, k);
    EXPECT_EQ(d.yes, bribery_oracle(e, a, goal, k));
    if (d.yes) EXPECT_TRUE(check_bribery_witness(e, a, goal, k, *d.witness));
  }
}

TEST_P(ExactVsOracle, Microbribery) {
  std::mt19937_64 rng(400 + GetParam());
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + rng() % 2;
    const auto e = testing::random_election(rng, n, 1 + rng() % 3, false, true);
    const auto goal = default_goal(letters(n)[rng() % n], rng() & 1,
                                   rng() & 1 ? WinnerModel::Unique : WinnerModel::NonUnique);
    const auto& a = testing::alpha_grid()[rng() % 5];
    const std::size_t k = rng() % 3;
    const auto d = solve_microbribery_exact(e, a, goal, k);
    EXPECT_EQ(d.yes, microbribery_oracle(e, a, goal, k));
    if (d.yes) EXPECT_TRUE(check_bribery_witness(e, a, goal, k, *d.witness));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExactVsOracle, ::testing::Values(1, 2, 3, 4));

}  // namespace
}  // namespace copeland
