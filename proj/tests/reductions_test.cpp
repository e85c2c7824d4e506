#include <gtest/gtest.h>

#include "copeland/reductions.hpp"
#include "test_support.hpp"

namespace copeland {
namespace {

Graph path3() { return Graph(3, {{1, 2}, {2, 3}}); }
Graph k3() { return Graph(3, {{1, 2}, {2, 3}, {1, 3}}); }

std::vector<std::int64_t> ballot_scores(const DesiredOutcomes& d, const Alpha& a) {
  // Tallied from realized ballots, not from the pattern.
  return copeland_scores(outcome_table(realize_outcomes(d)), a).scaled;
}

TEST(VertexCover, Examples) {
  EXPECT_TRUE(vc_brute(Graph(4), 0));
  EXPECT_FALSE(vc_brute(k3(), 1));
  EXPECT_TRUE(vc_brute(k3(), 2));
  EXPECT_TRUE(vc_brute(path3(), 1));
  EXPECT_FALSE(vc_brute(path3(), 0));
}

TEST(VertexCover, GraphValidation) {
  EXPECT_THROW(Graph(2, {{1, 3}}), Error);
  EXPECT_THROW(Graph(2, {{1, 1}}), Error);
  EXPECT_THROW(Graph(2, {{1, 2}, {2, 1}}), Error);
  EXPECT_EQ(all_labeled_graphs(3).size(), 8u);
}

// ---- CCAC_u ----------------------------------------------------------------

TEST(ReduceCcacu, Examples) {
  const Alpha half(1, 2);
  const auto yes = reduce_vc_to_ccacu(path3(), 1, half, WinnerModel::NonUnique);
  const auto r1 = verify_reduction(path3(), 1, yes);
  EXPECT_TRUE(r1.vc);
  EXPECT_TRUE(r1.equal);
  const auto r2 = verify_reduction(k3(), 1, reduce_vc_to_ccacu(k3(), 1, half, WinnerModel::NonUnique));
  EXPECT_FALSE(r2.solver);
  EXPECT_TRUE(r2.equal);
}

TEST(ReduceCcacu, Preconditions) {
  EXPECT_THROW(reduce_vc_to_ccacu(path3(), 1, Alpha(0, 1), WinnerModel::NonUnique), Error);
  EXPECT_THROW(reduce_vc_to_ccacu(path3(), 1, Alpha(1, 1), WinnerModel::NonUnique), Error);
  EXPECT_THROW(reduce_vc_to_ccacu(Graph(3), 1, Alpha(1, 2), WinnerModel::NonUnique), Error);
}

TEST(ReduceCcacu, ScoreClausesFromBallots) {
  const Graph g(2, {{1, 2}});
  for (const auto& a : {Alpha(1, 3), Alpha(1, 2), Alpha(2, 3)}) {
    for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
      for (std::size_t k = 0; k <= 2; ++k) {
        const auto inst = reduce_vc_to_ccacu(g, k, a, model);
        const auto& d = *inst.pattern;
        // Registered part only.
        CandidateSet reg;
        for (std::size_t i = 0; i < d.size(); ++i)
          if (d.names()[i][0] != 'v') reg.push_back(i);
        DesiredOutcomes r(names_of(d.names(), reg));
        for (std::size_t x = 0; x < reg.size(); ++x)
          for (std::size_t y = x + 1; y < reg.size(); ++y) r.set(x, y, d.result(reg[x], reg[y]));
        const auto s = ballot_scores(r, a);
        const std::int64_t ell = 2 * 2 + 2 * 1, L = 2 * ell * ell, t = a.den(), sp = a.num(), K = k;
        ASSERT_EQ(r.size(), static_cast<std::size_t>(L + ell));
        EXPECT_EQ(s[r.index_of("p")], t * (L - 2));
        if (model == WinnerModel::NonUnique) {
          EXPECT_EQ(s[r.index_of("r")], t * (L - 2 - K) + sp * K);
          EXPECT_EQ(s[r.index_of("e1")], t * (L - 2) + sp);
        } else {
          EXPECT_EQ(s[r.index_of("r")], t * (L - 3 - K) + sp * (K + 1));
          EXPECT_EQ(s[r.index_of("e1")], t * (L - 2));
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
          const auto& nm = r.names()[i];
          if (nm[0] == 'q' || nm[0] == 'd') EXPECT_LE(s[i], t * (L - 2 - 2));
        }
      }
    }
  }
}

TEST(ReduceCcacu, Deterministic) {
  const auto a = reduce_vc_to_ccacu(path3(), 1, Alpha(1, 2), WinnerModel::Unique);
  const auto b = reduce_vc_to_ccacu(path3(), 1, Alpha(1, 2), WinnerModel::Unique);
  EXPECT_EQ(a.pattern->names(), b.pattern->names());
  EXPECT_EQ(a.pattern->matrix(), b.pattern->matrix());
}

// ---- CCDC ------------------------------------------------------------------

TEST(ReduceCcdc, Examples) {
  const Alpha half(1, 2);
  const auto r1 = verify_reduction(path3(), 1, reduce_vc_to_ccdc(path3(), 1, half, WinnerModel::NonUnique));
  EXPECT_TRUE(r1.equal);
  EXPECT_TRUE(r1.solver);
  const auto r2 = verify_reduction(k3(), 1, reduce_vc_to_ccdc(k3(), 1, half, WinnerModel::NonUnique));
  EXPECT_TRUE(r2.equal);
  EXPECT_FALSE(r2.solver);
}

TEST(ReduceCcdc, ScoresAndWinnersFromBallots) {
  for (const auto& a : testing::alpha_grid()) {
    for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
      const auto g = path3();
      const auto d = ccdc_pattern(g, a, model);
      const auto s = ballot_scores(d, a);
      const std::int64_t n = 3, m = 2, ell = n + m, t = a.den(), sp = a.num();
      const std::int64_t u = model == WinnerModel::Unique ? 1 : 0;
      // score(p) = m·alpha + 1 + 2l + 1, plus the clone.
      EXPECT_EQ(s[d.index_of("p")], sp * m + t * (2 * ell + 2 + u));
      EXPECT_EQ(s[d.index_of("r")], t * m + sp * (n + u));
      EXPECT_EQ(s[d.index_of("e1")], sp * m + t * (2 * ell + 3));
      EXPECT_EQ(s[d.index_of("v2")], t * (1 + m - 2) + sp * (n + u));
      EXPECT_EQ(s[d.index_of("t0")], t * (ell + n + 1 + u));
      // The edge candidates win; with the clone, p draws level with them.
      const auto w = names_of(d.names(), winners_of_scores(s, WinnerModel::NonUnique));
      if (u == 0) EXPECT_EQ(w, (std::vector<std::string>{"e1", "e2"}));
      else EXPECT_EQ(w, (std::vector<std::string>{"p", "e1", "e2"}));
    }
  }
}

// ---- CCRPC -----------------------------------------------------------------

TEST(ReduceCcrpc, Examples) {
  const Alpha half(1, 2);
  const Graph edge(2, {{1, 2}});
  const auto r1 = verify_reduction(edge, 1, reduce_vc_to_ccrpc(edge, 1, TieRule::TP, half, WinnerModel::NonUnique));
  EXPECT_TRUE(r1.solver);
  EXPECT_TRUE(r1.equal);
  const auto r2 = verify_reduction(k3(), 1, reduce_vc_to_ccrpc(k3(), 1, TieRule::TE, half, WinnerModel::NonUnique));
  EXPECT_FALSE(r2.solver);
  EXPECT_TRUE(r2.equal);
  // Llull: ties eliminate still works.
  for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
    EXPECT_TRUE(verify_reduction(edge, 1, reduce_vc_to_ccrpc(edge, 1, TieRule::TE, Alpha(1, 1), model)).equal);
    EXPECT_TRUE(verify_reduction(k3(), 1, reduce_vc_to_ccrpc(k3(), 1, TieRule::TE, Alpha(1, 1), model)).equal);
  }
}

TEST(ReduceCcrpc, HTargetsFromBallots) {
  const Graph edge(2, {{1, 2}});
  for (const auto& a : testing::alpha_grid()) {
    for (auto rule : {TieRule::TP, TieRule::TE}) {
      if (rule == TieRule::TE && a.num() == a.den()) continue;
      for (std::size_t k = 0; k <= 2; ++k) {
        const auto inst = reduce_vc_to_ccrpc(edge, k, rule, a, WinnerModel::NonUnique);
        const auto& d = *inst.pattern;
        CandidateSet h;
        for (std::size_t i = 0; i < d.size(); ++i)
          if (d.names()[i][0] == 'R' || d.names()[i][0] == 'h') h.push_back(i);
        DesiredOutcomes hp(names_of(d.names(), h));
        for (std::size_t x = 0; x < h.size(); ++x)
          for (std::size_t y = x + 1; y < h.size(); ++y) {
            hp.set(x, y, d.result(h[x], h[y]));
            EXPECT_NE(hp.result(x, y), Result::Tie);
          }
        const auto s = ballot_scores(hp, a);
        const std::int64_t nb = rule == TieRule::TP ? std::max<std::int64_t>(3, k + 1) : std::max<std::int64_t>(2, k + 1);
        const std::int64_t L = 2 * nb * nb, t = a.den(), K = k;
        EXPECT_EQ(s[hp.index_of("R")], t * L);
        if (rule == TieRule::TP) {
          EXPECT_EQ(s[hp.index_of("h1")], t * (L - K - 1));
          EXPECT_EQ(s[hp.index_of("h2")], t * (L - K - 1));
          for (std::size_t i = 3; i < hp.size(); ++i) EXPECT_LE(s[i], t * (L - K - 1));
        } else {
          EXPECT_EQ(s[hp.index_of("h1")], t * (L - K));
          for (std::size_t i = 2; i < hp.size(); ++i) EXPECT_LT(s[i], t * (L - K));
        }
      }
    }
  }
}

// Every winning partition of the smallest instances puts H in C2 and at most
// k members of F there.
TEST(ReduceCcrpc, StructureOfWinningPartitions) {
  const Alpha half(1, 2);
  for (std::size_t k = 0; k <= 1; ++k) {
    const Graph g(1);
    const auto inst = reduce_vc_to_ccrpc(g, k, TieRule::TE, half, WinnerModel::NonUnique);
    const auto& names = inst.candidates();
    const auto n = names.size();
    ASSERT_LE(n, 20u);
    const PointTable pts(inst.full_table(), half);
    const auto p = std::find(names.begin(), names.end(), "p") - names.begin();
    std::size_t winning = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      if ((m >> p) & 1) continue;  // p in C1
      std::vector<bool> c1(n), c2(n);
      for (std::size_t i = 0; i < n; ++i) ((m >> i) & 1 ? c2 : c1)[i] = true;
      std::vector<bool> fin(n, false);
      for (auto c : survivors(pts, c1, TieRule::TE)) fin[c] = true;
      for (auto c : survivors(pts, c2, TieRule::TE)) fin[c] = true;
      if (!fin[p]) continue;
      const auto w = pts.winners_within(fin, WinnerModel::NonUnique);
      if (std::find(w.begin(), w.end(), static_cast<CandidateIndex>(p)) == w.end()) continue;
      ++winning;
      std::size_t from_f = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool in_h = names[i][0] == 'R' || names[i][0] == 'h';
        if (in_h) EXPECT_TRUE(c2[i]) << names[i];
        else if (c2[i]) ++from_f;
      }
      EXPECT_LE(from_f, k);
    }
    EXPECT_GT(winning, 0u);
  }
}

TEST(VerifyReduction, OversizedGraph) {
  Graph big(63, {{1, 2}});
  const auto inst = reduce_vc_to_ccdc(Graph(2, {{1, 2}}), 1, Alpha(1, 2), WinnerModel::NonUnique);
  EXPECT_THROW(verify_reduction(big, 1, inst), Error);
  SizeLimits tiny;
  tiny.max_candidates = 5;
  EXPECT_THROW(verify_reduction(Graph(2, {{1, 2}}), 1, inst, tiny), Error);
}

TEST(VerifyReduction, ReportsScores) {
  const auto inst = reduce_vc_to_ccdc(path3(), 1, Alpha(1, 2), WinnerModel::NonUnique);
  const auto rep = verify_reduction(path3(), 1, inst);
  EXPECT_EQ(rep.names, inst.candidates());
  EXPECT_EQ(rep.scaled, ballot_scores(*inst.pattern, Alpha(1, 2)));
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_TRUE(check_control_witness(inst, *rep.witness));
}

// Small sweep; the full sweep lives in the acceptance binary.
TEST(VerifyReduction, AllGraphsUpToThree) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& g : all_labeled_graphs(n))
      for (std::size_t k = 0; k <= n; ++k)
        for (auto model : {WinnerModel::NonUnique, WinnerModel::Unique}) {
          const Alpha a(1, 2);
          EXPECT_TRUE(verify_reduction(g, k, reduce_vc_to_ccdc(g, k, a, model)).equal);
          EXPECT_TRUE(verify_reduction(g, k, reduce_vc_to_ccrpc(g, k, TieRule::TP, a, model)).equal);
          EXPECT_TRUE(verify_reduction(g, k, reduce_vc_to_ccrpc(g, k, TieRule::TE, a, model)).equal);
          if (g.edge_count() > 0) EXPECT_TRUE(verify_reduction(g, k, reduce_vc_to_ccacu(g, k, a, model)).equal);
        }
}

}  // namespace
}  // namespace copeland
