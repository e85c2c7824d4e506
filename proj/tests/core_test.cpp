#include <gtest/gtest.h>

#include "copeland/goal.hpp"
#include "copeland/two_stage.hpp"
#include "test_support.hpp"

namespace copeland {
namespace {

using testing::e_cyc;
using testing::e_tie;
using testing::letters;
using testing::order;

TEST(Alpha, NormalizesAndValidates) {
  const Alpha a(2, 4);
  EXPECT_EQ(a.num(), 1);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(Alpha::parse("2/3"), Alpha(2, 3));
  EXPECT_EQ(Alpha::parse("0/1"), Alpha(0, 1));
  EXPECT_THROW(Alpha(3, 2), Error);
  EXPECT_THROW(Alpha(1, 0), Error);
  EXPECT_THROW(Alpha::parse("1/x"), Error);
}

TEST(PairwiseTally, CycleAndEdgeCases) {
  const auto e = e_cyc();
  EXPECT_EQ(pairwise_tally(e, "a", "b"), 2);
  EXPECT_EQ(pairwise_tally(e, "b", "a"), 1);

  const Election empty(letters(2), {});
  EXPECT_EQ(pairwise_tally(empty, 0, 1), 0);

  const Election weighted(letters(2), {order({0, 1}, 3)});
  EXPECT_EQ(pairwise_tally(weighted, 0, 1), 3);

  EXPECT_THROW(pairwise_tally(e, "a", "a"), Error);
  EXPECT_THROW(pairwise_tally(e, "a", "zz"), Error);
}

TEST(OutcomeTable, StrictMajorityResults) {
  const auto t = outcome_table(e_cyc());
  EXPECT_EQ(t.result(0, 1), Result::Win);
  EXPECT_EQ(t.result(1, 2), Result::Win);
  EXPECT_EQ(t.result(2, 0), Result::Win);
  EXPECT_EQ(t.tally(0, 1), 2);
  EXPECT_EQ(t.tally(1, 0), 1);

  const auto tie = outcome_table(e_tie());
  EXPECT_EQ(tie.result(0, 1), Result::Tie);
  EXPECT_EQ(tie.tally(0, 1), 1);
  EXPECT_EQ(tie.tally(1, 0), 1);

  const auto none = outcome_table(Election(letters(2), {}));
  EXPECT_EQ(none.result(0, 1), Result::Tie);
  EXPECT_EQ(none.tally(0, 1), 0);
}

TEST(OutcomeTable, HugeMultiplicitiesUseBigIntegers) {
  const BigInt big = BigInt(1) << 100;
  const Election e(letters(2), {order({0, 1}, big + 1), order({1, 0}, big)});
  const auto t = outcome_table(e);
  EXPECT_EQ(t.tally(0, 1), big + 1);
  EXPECT_EQ(t.result(0, 1), Result::Win);
  EXPECT_EQ(t.total(), 2 * big + 1);
}

TEST(Scores, ExamplesFromDefinition) {
  for (const auto& a : testing::alpha_grid()) {
    const auto s = copeland_scores(e_cyc(), a);
    for (auto v : s.scaled) EXPECT_EQ(v, a.den());
  }
  const auto tie = copeland_scores(e_tie(), Alpha(1, 2));
  EXPECT_EQ(tie.scaled, (std::vector<std::int64_t>{1, 1}));
}

TEST(Winners, Models) {
  const Alpha half(1, 2);
  EXPECT_EQ(winners(e_cyc(), half, WinnerModel::NonUnique), (CandidateSet{0, 1, 2}));
  EXPECT_TRUE(winners(e_cyc(), half, WinnerModel::Unique).empty());
  const Election single({"p"}, {});
  EXPECT_EQ(winners(single, half, WinnerModel::NonUnique), (CandidateSet{0}));
  EXPECT_EQ(winners(single, half, WinnerModel::Unique), (CandidateSet{0}));
  EXPECT_THROW(winners(Election({}, {}), half, WinnerModel::NonUnique), Error);
}

TEST(TwoStage, RunoffExamples) {
  const Alpha half(1, 2);
  const auto e = e_cyc();
  EXPECT_EQ(evaluate_two_stage(e, RunoffCandidatePartition{{0, 1}, {2}}, TieRule::TP, half, WinnerModel::NonUnique),
            (CandidateSet{2}));
  EXPECT_EQ(evaluate_two_stage(e, RunoffCandidatePartition{{0, 1, 2}, {}}, TieRule::TP, half, WinnerModel::NonUnique),
            winners(e, half, WinnerModel::NonUnique));
  EXPECT_EQ(evaluate_two_stage(e_tie(), RunoffCandidatePartition{{0}, {1}}, TieRule::TE, half, WinnerModel::NonUnique),
            (CandidateSet{0, 1}));
  // TE eliminates the three-way tie of the whole cycle: the final is empty.
  EXPECT_TRUE(
      evaluate_two_stage(e, RunoffCandidatePartition{{0, 1, 2}, {}}, TieRule::TE, half, WinnerModel::NonUnique).empty());
  EXPECT_THROW(evaluate_two_stage(e, RunoffCandidatePartition{{0, 1}, {1, 2}}, TieRule::TP, half, WinnerModel::NonUnique),
               Error);
  EXPECT_THROW(evaluate_two_stage(e, CandidatePartition{{0}, {1}}, TieRule::TP, half, WinnerModel::NonUnique), Error);
}

TEST(TwoStage, CandidatePartitionSendsSecondPartStraightToFinal) {
  const Alpha half(1, 2);
  // {b,c}: b beats c and survives; final {a,b}: a beats b.
  EXPECT_EQ(evaluate_two_stage(e_cyc(), CandidatePartition{{1, 2}, {0}}, TieRule::TP, half, WinnerModel::NonUnique),
            (CandidateSet{0}));
}

TEST(TwoStage, VoterPartition) {
  const Alpha half(1, 2);
  // V1 = {a>b>c}: a survives. V2 = {b>c>a, c>a>b}: b,c... tallies b-c 1:1, c-a 2:0, a-b 1:1 -> c wins.
  const auto e = e_cyc();
  const auto w = evaluate_two_stage(e, VoterPartition{{1, 0, 0}}, TieRule::TP, half, WinnerModel::NonUnique);
  EXPECT_EQ(w, (CandidateSet{2}));
  EXPECT_THROW(evaluate_two_stage(e, VoterPartition{{2, 0, 0}}, TieRule::TP, half, WinnerModel::NonUnique), Error);
}

TEST(Goal, StandardAndExtended) {
  const auto t = outcome_table(e_cyc());
  const Alpha half(1, 2);
  EXPECT_TRUE(evaluate_goal(t, half, MakeWinner{"a"}));
  EXPECT_FALSE(evaluate_goal(t, half, MakeUniqueWinner{"a"}));
  EXPECT_FALSE(evaluate_goal(t, half, PrecludeWinner{"a"}));
  EXPECT_TRUE(evaluate_goal(t, half, PrecludeUniqueWinner{"a"}));
  EXPECT_TRUE(evaluate_goal(t, half, ScoreOrder{}));
  EXPECT_TRUE(evaluate_goal(t, half, ScoreOrder{{{"a", Relation::Equal, "b"}, {"b", Relation::LessEqual, "c"}}}));
  EXPECT_FALSE(evaluate_goal(t, half, ScoreOrder{{{"a", Relation::Less, "b"}}}));
  EXPECT_TRUE(evaluate_goal(t, half, ExactScaledScores{{{"a", 2}}}));
  EXPECT_FALSE(evaluate_goal(t, half, GroupDominance{{"a"}, {"b"}}));
  EXPECT_TRUE(evaluate_goal(t, half, TablePredicate{[](const OutcomeTable& x, const Alpha&) {
                              return x.result(0, 1) == Result::Win;
                            }}));
  EXPECT_THROW(evaluate_goal(t, half, MakeWinner{"zz"}), Error);
  EXPECT_THROW(evaluate_goal(t, half, ScoreOrder{{{"a", Relation::Less, "b"}, {"b", Relation::LessEqual, "a"}}}), Error);
}

// ---- Invariants on random elections --------------------------------------

class CoreProperties : public ::testing::TestWithParam<int> {};

TEST_P(CoreProperties, IdentitiesHold) {
  std::mt19937_64 rng(GetParam());
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t v = rng() % 8;
    const auto e = testing::random_election(rng, n, v, true);
    const auto table = outcome_table(e);
    for (const auto& a : testing::alpha_grid()) {
      const auto s = copeland_scores(e, a);
      EXPECT_EQ(s.scaled, testing::naive_scaled_scores(e, a));
      // Score sum identity.
      std::int64_t decisive = 0, tied = 0, sum = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) (table.result(i, j) == Result::Tie ? tied : decisive) += 1;
      for (auto x : s.scaled) sum += x;
      EXPECT_EQ(sum, a.den() * decisive + 2 * a.num() * tied);
      // Decomposition over two-candidate sub-elections.
      for (std::size_t c = 0; c < n; ++c) {
        std::int64_t acc = 0;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == c) continue;
          std::vector<bool> keep(n, false);
          keep[c] = keep[d] = true;
          const auto sub = e.restricted_to(keep);
          acc += copeland_scores(sub, a).scaled[c < d ? 0 : 1];
        }
        EXPECT_EQ(acc, s.scaled[c]);
      }
      const auto nu = winners(e, a, WinnerModel::NonUnique);
      const auto u = winners(e, a, WinnerModel::Unique);
      EXPECT_FALSE(nu.empty());
      EXPECT_LE(u.size(), 1u);
      if (!u.empty()) EXPECT_EQ(nu, u);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CoreProperties, ::testing::Values(1, 2, 3));

}  // namespace
}  // namespace copeland
