#pragma once

#include <algorithm>
#include <optional>

#include "copeland/exact.hpp"
#include "copeland/graph.hpp"

namespace copeland {

namespace detail {

inline void expect_score(const DesiredOutcomes& d, const std::vector<std::int64_t>& s, CandidateIndex c,
                         std::int64_t want) {
  if (s[c] != want)
    throw Error(Errc::InfeasibleSpec, "self-check: score of " + d.names()[c] + " is " + std::to_string(s[c]) +
                                          ", expected " + std::to_string(want));
}

inline void expect_result(const DesiredOutcomes& d, CandidateIndex a, CandidateIndex b, Result r) {
  if (d.result(a, b) != r)
    throw Error(Errc::InfeasibleSpec, "self-check: contest " + d.names()[a] + " vs " + d.names()[b]);
}

inline std::string vertex_name(std::size_t v) { return "v" + std::to_string(v); }
inline std::string edge_name(std::size_t e) { return "e" + std::to_string(e + 1); }

inline std::int64_t i64(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace detail

// ---- Adding an unlimited number of candidates ------------------------------

/// CCAC_u instance that is a YES instance iff g has a vertex cover of size <= k.
/// Registered: p, r, e1..em, padding q*, dummies d*; spoilers: one per vertex.
inline ControlInstance reduce_vc_to_ccacu(const Graph& g, std::size_t k, const Alpha& alpha, WinnerModel model) {
  if (alpha.tie_points() == 0 || alpha.tie_points() == alpha.win_points())
    throw Error(Errc::AlphaOutOfRange, "adding candidates needs 0 < alpha < 1");
  if (g.edge_count() == 0) throw Error(Errc::EmptyGraph, "graph has no edges");
  const auto n = g.vertex_count(), m = g.edge_count();
  k = std::min(k, n);  // a cover never needs more than n vertices
  const bool unique = model == WinnerModel::Unique;
  const std::size_t ell = 2 * n + 2 * m;
  const std::size_t npad = ell - m - 2;

  // Base block: p, r, e's, padding. Decisive, lower index wins, except the ties below.
  std::vector<std::string> names{"p", "r"};
  for (std::size_t j = 0; j < m; ++j) names.push_back(detail::edge_name(j));
  for (std::size_t j = 0; j < npad; ++j) names.push_back("q" + std::to_string(j + 1));
  DesiredOutcomes base(names);
  for (std::size_t a = 0; a < ell; ++a)
    for (std::size_t b = a + 1; b < ell; ++b) base.beats(a, b);
  const CandidateIndex p = 0, r = 1, e0 = 2, q0 = 2 + m;
  const std::size_t r_ties = unique ? k + 1 : k;
  for (std::size_t j = 0; j < r_ties; ++j) base.ties(r, q0 + j);
  if (!unique)
    for (std::size_t j = 0; j < m; ++j) base.ties(e0 + j, q0);

  std::vector<std::size_t> kv(ell, ell);
  kv[p] = 2;
  kv[r] = unique ? k + 3 : k + 2;
  for (std::size_t j = 0; j < m; ++j) kv[e0 + j] = 2;
  for (std::size_t j = 0; j < npad; ++j) kv[q0 + j] = ell;
  auto reg = scored_pattern({base, kv}, alpha, "d");

  // Vertex candidates.
  const auto nreg = reg.size();
  for (std::size_t v = 1; v <= n; ++v) reg.add(detail::vertex_name(v));
  for (std::size_t v = 0; v < n; ++v) {
    const auto cv = nreg + v;
    for (std::size_t c = 0; c < nreg; ++c) {
      if (c == p) continue;
      if (c >= e0 && c < e0 + m) {
        if (g.incident(c - e0, v + 1)) reg.beats(cv, c);
      } else {
        reg.beats(c, cv);
      }
    }
  }

  // Self-checks on the registered election.
  {
    if (nreg != 2 * ell * ell + ell) throw Error(Errc::InfeasibleSpec, "self-check: registered size");
    std::vector<std::int64_t> s(reg.size(), 0);
    for (std::size_t a = 0; a < nreg; ++a)
      for (std::size_t b = 0; b < nreg; ++b)
        if (a != b) s[a] += reg.result(a, b) == Result::Win ? alpha.win_points()
                            : reg.result(a, b) == Result::Tie ? alpha.tie_points() : 0;
    const auto t = alpha.win_points(), sp = alpha.tie_points();
    const auto L = detail::i64(2 * ell * ell), K = detail::i64(k);
    detail::expect_score(reg, s, p, t * (L - 2));
    detail::expect_score(reg, s, r, unique ? t * (L - K - 3) + sp * (K + 1) : t * (L - 2 - K) + sp * K);
    for (std::size_t j = 0; j < m; ++j) detail::expect_score(reg, s, e0 + j, t * (L - 2) + (unique ? 0 : sp));
    for (std::size_t c = q0; c < nreg; ++c)
      if (s[c] > t * (L - detail::i64(n) - 2))
        throw Error(Errc::InfeasibleSpec, "self-check: " + reg.names()[c] + " too strong");
    for (std::size_t v = 0; v < n; ++v) {
      detail::expect_result(reg, p, nreg + v, Result::Tie);
      for (std::size_t j = 0; j < m; ++j)
        detail::expect_result(reg, nreg + v, e0 + j, g.incident(j, v + 1) ? Result::Win : Result::Tie);
      detail::expect_result(reg, r, nreg + v, Result::Win);
    }
  }

  ControlInstance inst;
  inst.problem = Problem::parse("CCACu");
  inst.model = model;
  inst.alpha = alpha;
  inst.p = "p";
  for (std::size_t v = 1; v <= n; ++v) inst.spoiler_candidates.push_back(detail::vertex_name(v));
  inst.pattern = std::move(reg);
  return inst;
}

// ---- Deleting candidates ---------------------------------------------------

/// The CCDC election as an outcome pattern: p, r, [rh], e's, v's, Pad_{n+m}.
inline DesiredOutcomes ccdc_pattern(const Graph& g, const Alpha& alpha, WinnerModel model) {
  const auto n = g.vertex_count(), m = g.edge_count();
  const bool unique = model == WinnerModel::Unique;
  const std::size_t ell = n + m;
  std::vector<std::string> names{"p", "r"};
  if (unique) names.push_back("rh");
  for (std::size_t j = 0; j < m; ++j) names.push_back(detail::edge_name(j));
  for (std::size_t v = 1; v <= n; ++v) names.push_back(detail::vertex_name(v));
  const auto pad = pad_pattern(ell, "t");
  for (const auto& x : pad.names()) names.push_back(x);
  DesiredOutcomes d(names);
  const CandidateIndex p = 0, r = 1;
  const CandidateIndex e0 = unique ? 3 : 2, v0 = e0 + m, t0 = v0 + n;
  std::vector<CandidateIndex> rs{r};
  if (unique) rs.push_back(2);

  for (auto x : rs) d.beats(p, x);
  for (std::size_t j = 0; j < m; ++j) {
    const auto [a, b] = g.edges()[j];
    d.beats(e0 + j, v0 + a - 1);
    d.beats(e0 + j, v0 + b - 1);
    for (auto x : rs) d.beats(x, e0 + j);
  }
  for (std::size_t v = 0; v < n; ++v) {
    d.beats(v0 + v, p);
    for (std::size_t j = 0; j < m; ++j)
      if (!g.incident(j, v + 1)) d.beats(v0 + v, e0 + j);
  }
  for (std::size_t i = 0; i < pad.size(); ++i) {
    d.beats(p, t0 + i);
    for (std::size_t j = 0; j < m; ++j) d.beats(e0 + j, t0 + i);
    for (auto x : rs) d.beats(t0 + i, x);
    for (std::size_t v = 0; v < n; ++v) d.beats(t0 + i, v0 + v);
    for (std::size_t i2 = i + 1; i2 < pad.size(); ++i2) d.set(t0 + i, t0 + i2, pad.result(i, i2));
  }

  const auto s = pattern_scores(d, alpha);
  const auto t = alpha.win_points(), sp = alpha.tie_points();
  const auto M = detail::i64(m), N = detail::i64(n), L = detail::i64(ell);
  const std::int64_t U = unique ? 1 : 0;
  detail::expect_score(d, s, p, sp * M + t * (2 * L + 2 + U));
  for (auto x : rs) detail::expect_score(d, s, x, t * M + sp * (N + U));
  for (std::size_t j = 0; j < m; ++j) detail::expect_score(d, s, e0 + j, sp * M + t * (2 * L + 3));
  for (std::size_t v = 0; v < n; ++v)
    detail::expect_score(d, s, v0 + v, t * (1 + M - detail::i64(g.degree(v + 1))) + sp * (N + U));
  for (std::size_t i = 0; i < pad.size(); ++i) detail::expect_score(d, s, t0 + i, t * (L + N + 1 + U));
  return d;
}

/// CCDC instance that is a YES instance iff g has a vertex cover of size <= k.
inline ControlInstance reduce_vc_to_ccdc(const Graph& g, std::size_t k, const Alpha& alpha, WinnerModel model) {
  ControlInstance inst;
  inst.problem = Problem::parse("CCDC");
  inst.model = model;
  inst.alpha = alpha;
  inst.p = "p";
  inst.k = BigInt(k);
  inst.pattern = ccdc_pattern(g, alpha, model);
  return inst;
}

// ---- Runoff partition of candidates ----------------------------------------

/// CCRPC instance (F from the CCDC construction, H with scored targets,
/// joined through H's top candidate R).
inline ControlInstance reduce_vc_to_ccrpc(const Graph& g, std::size_t k, TieRule rule, const Alpha& alpha,
                                          WinnerModel model) {
  k = std::min(k, g.vertex_count());
  const bool te = rule == TieRule::TE;
  const auto f_model = !te && model == WinnerModel::NonUnique ? WinnerModel::NonUnique : WinnerModel::Unique;
  const auto f = ccdc_pattern(g, alpha, f_model);

  const std::size_t nb = te ? std::max<std::size_t>(2, k + 1) : std::max<std::size_t>(3, k + 1);
  std::vector<std::string> hn{"R"};
  for (std::size_t i = 1; i < nb; ++i) hn.push_back("h" + std::to_string(i));
  DesiredOutcomes hb(hn);
  for (std::size_t a = 0; a < nb; ++a)
    for (std::size_t b = a + 1; b < nb; ++b) hb.beats(a, b);
  std::vector<std::size_t> kv(nb, nb);
  kv[0] = 0;
  kv[1] = te ? k : k + 1;
  if (!te) kv[2] = k + 1;
  const auto h = scored_pattern({hb, kv}, alpha, "hd");
  {
    const auto s = pattern_scores(h, alpha);
    const auto t = alpha.win_points();
    const auto L = detail::i64(2 * nb * nb), K = detail::i64(k);
    detail::expect_score(h, s, 0, t * L);
    const auto top = te ? t * (L - K) : t * (L - K - 1);
    detail::expect_score(h, s, 1, top);
    if (!te) detail::expect_score(h, s, 2, top);
    for (std::size_t c = te ? 2 : 3; c < h.size(); ++c)
      if (te ? s[c] >= top : s[c] > top) throw Error(Errc::InfeasibleSpec, "self-check: " + h.names()[c] + " too strong");
  }

  ControlInstance inst;
  inst.problem = Problem::parse(te ? "CCRPC-TE" : "CCRPC-TP");
  inst.model = model;
  inst.alpha = alpha;
  inst.p = "p";
  inst.pattern = combine_ghr(f, h, "R", true);
  return inst;
}

// ---- Checking a reduction --------------------------------------------------

struct ReductionReport {
  bool vc = false;
  bool solver = false;
  bool equal = false;
  std::vector<std::string> names;
  std::vector<std::int64_t> scaled;  // full election, t = alpha.den()
  std::optional<Witness> witness;
};

/// Compares vc_brute(g, k) with the exact solver on a generated instance.
inline ReductionReport verify_reduction(const Graph& g, std::size_t k, const ControlInstance& inst,
                                        const SizeLimits& limits = {}) {
  if (g.vertex_count() > 62) throw Error(Errc::BudgetExceeded, "graph too large for exhaustive vertex cover");
  if (inst.candidates().size() > limits.max_candidates)
    throw Error(Errc::BudgetExceeded, std::to_string(inst.candidates().size()) + " candidates exceed the limit");
  ReductionReport rep;
  rep.vc = vc_brute(g, k);
  const auto d = solve_control_exact(inst, limits);
  rep.solver = d.yes;
  rep.equal = rep.vc == rep.solver;
  rep.witness = d.witness;
  rep.names = inst.candidates();
  rep.scaled = inst.pattern ? pattern_scores(*inst.pattern, inst.alpha) : copeland_scores(inst.election, inst.alpha).scaled;
  return rep;
}

}  // namespace copeland
