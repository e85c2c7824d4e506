#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "copeland/outcome.hpp"

namespace copeland {

/// A complete win/tie/loss pattern over an ordered candidate list.
class DesiredOutcomes {
 public:
  DesiredOutcomes() = default;
  explicit DesiredOutcomes(std::vector<std::string> candidates)
      : names_(std::move(candidates)), res_(names_.size() * names_.size(), 0) {}

  static DesiredOutcomes of(const OutcomeTable& t) {
    DesiredOutcomes d(t.names());
    d.res_ = t.result_matrix();
    return d;
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::int8_t>& matrix() const noexcept { return res_; }

  Result result(CandidateIndex a, CandidateIndex b) const noexcept {
    return static_cast<Result>(res_[a * size() + b]);
  }
  /// Sets a's result against b (and the mirrored entry).
  void set(CandidateIndex a, CandidateIndex b, Result r) {
    res_[a * size() + b] = static_cast<std::int8_t>(r);
    res_[b * size() + a] = static_cast<std::int8_t>(flip(r));
  }
  void beats(CandidateIndex a, CandidateIndex b) { set(a, b, Result::Win); }
  void ties(CandidateIndex a, CandidateIndex b) { set(a, b, Result::Tie); }

  std::optional<CandidateIndex> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }
  CandidateIndex index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::UnknownCandidate, "'" + std::string(name) + "'");
  }

  /// Appends a candidate that ties everyone; returns its index.
  CandidateIndex add(std::string name) {
    const auto n = size();
    std::vector<std::int8_t> r((n + 1) * (n + 1), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i * (n + 1) + j] = res_[i * n + j];
    res_ = std::move(r);
    names_.push_back(std::move(name));
    return n;
  }

  std::size_t wins(CandidateIndex a) const {
    std::size_t w = 0;
    for (std::size_t b = 0; b < size(); ++b) w += res_[a * size() + b] > 0;
    return w;
  }
  std::size_t ties_of(CandidateIndex a) const {
    std::size_t t = 0;
    for (std::size_t b = 0; b < size(); ++b) t += (b != a && res_[a * size() + b] == 0);
    return t;
  }

  std::size_t decisive_pairs() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) d += res_[i * size() + j] != 0;
    return d;
  }

  friend bool operator==(const DesiredOutcomes&, const DesiredOutcomes&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::int8_t> res_;
};

/// Scaled scores read directly off a pattern.
inline std::vector<std::int64_t> pattern_scores(const DesiredOutcomes& d, const Alpha& alpha) {
  std::vector<std::int64_t> s(d.size());
  for (std::size_t a = 0; a < d.size(); ++a)
    s[a] = alpha.win_points() * static_cast<std::int64_t>(d.wins(a)) +
           alpha.tie_points() * static_cast<std::int64_t>(d.ties_of(a));
  return s;
}

/// McGarvey realization: one canceling ballot pair per decisive pair.
///
/// For a decisive pair with winner a and loser b (pairs visited in index
/// order) the ballots are `a > b > rest` and `reverse(rest) > a > b`, where
/// rest lists the other candidates by index. Every enforced win therefore has
/// margin exactly 2 and undecided pairs tie.
inline Election realize_outcomes(const DesiredOutcomes& spec) {
  if (spec.size() == 0) throw Error(Errc::EmptyCandidateSet, "no candidates");
  const auto n = spec.size();
  std::vector<Ballot> ballots;
  ballots.reserve(2 * spec.decisive_pairs());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto r = spec.result(i, j);
      if (r == Result::Tie) continue;
      const auto a = r == Result::Win ? i : j;
      const auto b = r == Result::Win ? j : i;
      std::vector<CandidateIndex> rest;
      rest.reserve(n - 2);
      for (std::size_t c = 0; c < n; ++c)
        if (c != a && c != b) rest.push_back(c);
      std::vector<CandidateIndex> first{a, b};
      first.insert(first.end(), rest.begin(), rest.end());
      std::vector<CandidateIndex> second(rest.rbegin(), rest.rend());
      second.push_back(a);
      second.push_back(b);
      ballots.push_back(Ballot::linear(std::move(first)));
      ballots.push_back(Ballot::linear(std::move(second)));
    }
  }
  return Election(spec.names(), std::move(ballots));
}

/// Outcome table of realize_outcomes(spec), computed without materializing
/// ballots: with D decisive pairs there are 2D ballots and N(a,b) = D + 1,
/// D or D - 1 for a win, tie or loss of a.
inline OutcomeTable mcgarvey_table(const DesiredOutcomes& spec) {
  const auto n = spec.size();
  const std::uint64_t d = spec.decisive_pairs();
  std::vector<std::uint64_t> up(pair_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      up[pair_index(n, i, j)] = d + static_cast<std::int64_t>(spec.result(i, j));
  return OutcomeTable(spec.names(), 2 * d, std::move(up));
}

/// Circulant tournament on 2n+1 candidates: candidate i beats i+1, ..., i+n
/// (mod 2n+1), so every candidate wins exactly n contests.
inline DesiredOutcomes pad_pattern(std::size_t n, const std::string& prefix = "t") {
  const auto size = 2 * n + 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back(prefix + std::to_string(i));
  DesiredOutcomes d(std::move(names));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t step = 1; step <= n; ++step) d.beats(i, (i + step) % size);
  return d;
}

inline Election build_pad(std::size_t n) { return realize_outcomes(pad_pattern(n)); }

/// Landau's condition: a non-decreasing out-degree sequence is realizable by
/// a tournament iff every prefix of length k sums to at least C(k,2), with
/// equality for the whole sequence.
inline bool landau_feasible(std::vector<std::size_t> seq) {
  std::sort(seq.begin(), seq.end());
  std::size_t sum = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    sum += seq[k];
    if (sum < (k + 1) * k / 2) return false;
  }
  return sum == seq.size() * (seq.size() - 1) / 2;
}

struct ScoredSpec {
  DesiredOutcomes base;
  std::vector<std::size_t> k;
};

/// Score-targeting construction: appends 2n^2 dummies d1..d_{2n^2} to a base
/// of n candidates so that c_i ends with 2n^2 - k_i + alpha*t_i points (t_i =
/// ties of c_i inside the base) and every dummy with at most n^2 + 1.
///
/// c_i beats exactly 2n^2 - k_i - w_i dummies (w_i = wins inside the base).
/// The L = sum(k_i + w_i) < 2n^2 dummy victories over base candidates go to
/// distinct dummies, and those dummies take the low out-degrees (n^2 - 1) of
/// a near-regular dummy tournament. All new contests are decisive.
inline DesiredOutcomes scored_pattern(const ScoredSpec& spec, const Alpha& alpha,
                                      const std::string& dummy_prefix = "d") {
  const auto n = spec.base.size();
  if (spec.k.size() != n) throw Error(Errc::InfeasibleSpec, "k has wrong length");
  for (auto ki : spec.k)
    if (ki > n) throw Error(Errc::InfeasibleSpec, "k_i exceeds n");
  if (n == 0) return spec.base;
  const std::size_t big = 2 * n * n;
  const std::size_t half = big / 2;

  std::vector<std::size_t> losses(n);
  std::size_t total_losses = 0;
  for (std::size_t i = 0; i < n; ++i) {
    losses[i] = spec.k[i] + spec.base.wins(i);
    total_losses += losses[i];
  }
  if (total_losses > big) throw Error(Errc::InfeasibleSpec, "too many dummy victories");

  // Dummy j beats base candidates assigned to it; first total_losses dummies get one each.
  std::vector<std::size_t> dummy_beats(big, 0);
  std::vector<std::size_t> beaten_by(total_losses);
  {
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < losses[i]; ++l) beaten_by[j++] = i;
    for (std::size_t j2 = 0; j2 < total_losses; ++j2) dummy_beats[j2] = 1;
  }

  // Near-regular tournament on positions 0..big-1: u beats u+1..u+half-1 and
  // u < half also beats its antipode u+half. Positions >= half have out-degree
  // half-1; dummies holding a victory over a base candidate take those first.
  std::vector<std::size_t> position(big);
  for (std::size_t j = 0; j < big; ++j) position[j] = (j < half) ? half + j : j - half;
  std::vector<std::size_t> desired(big);
  for (std::size_t j = 0; j < big; ++j) desired[j] = position[j] >= half ? half - 1 : half;
  if (!landau_feasible(desired)) throw Error(Errc::InfeasibleSpec, "dummy degree sequence is not a tournament");
  for (std::size_t j = 0; j < big; ++j) {
    if (dummy_beats[j] + desired[j] > n * n + 1) throw Error(Errc::InfeasibleSpec, "dummy score bound violated");
  }

  std::vector<std::string> names = spec.base.names();
  std::set<std::string> taken(names.begin(), names.end());
  for (std::size_t j = 0; j < big; ++j) {
    auto name = dummy_prefix + std::to_string(j + 1);
    if (!taken.insert(name).second) throw Error(Errc::NameClash, name);
    names.push_back(std::move(name));
  }
  DesiredOutcomes out(std::move(names));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) out.set(a, b, spec.base.result(a, b));
  std::vector<std::size_t> dummy_at(big);
  for (std::size_t j = 0; j < big; ++j) dummy_at[position[j]] = j;
  for (std::size_t u = 0; u < big; ++u) {
    for (std::size_t step = 1; step < half; ++step) out.beats(n + dummy_at[u], n + dummy_at[(u + step) % big]);
    if (u < half) out.beats(n + dummy_at[u], n + dummy_at[u + half]);
  }
  // Base candidates beat every dummy except the one holding their loss.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < big; ++j) out.beats(i, n + j);
  for (std::size_t j = 0; j < total_losses; ++j) out.beats(n + j, beaten_by[j]);

  const auto s = pattern_scores(out, alpha);
  const auto t = alpha.win_points();
  for (std::size_t i = 0; i < n; ++i) {
    const auto want = t * static_cast<std::int64_t>(big - spec.k[i]) +
                      alpha.tie_points() * static_cast<std::int64_t>(spec.base.ties_of(i));
    if (s[i] != want) throw Error(Errc::InfeasibleSpec, "score of " + out.names()[i] + " missed its target");
  }
  for (std::size_t j = 0; j < big; ++j) {
    if (s[n + j] > t * static_cast<std::int64_t>(n * n + 1))
      throw Error(Errc::InfeasibleSpec, "dummy above n^2+1");
  }
  return out;
}

inline Election build_scored(const ScoredSpec& spec, const Alpha& alpha) {
  return realize_outcomes(scored_pattern(spec, alpha));
}

/// Joins F and H with a connector r: every f beats r, r beats every h, every
/// h beats every f; contests inside F and inside H keep their results.
///
/// With `r_in_h` the connector is the existing H candidate named `r` and its
/// results against the rest of H are kept; otherwise r is a fresh candidate.
inline DesiredOutcomes combine_ghr(const DesiredOutcomes& f, const DesiredOutcomes& h, const std::string& r = "r",
                                   bool r_in_h = false) {
  if (h.size() < (r_in_h ? 3u : 2u)) throw Error(Errc::InvalidElection, "H needs at least two candidates");
  std::set<std::string> seen;
  for (const auto& x : f.names())
    if (!seen.insert(x).second) throw Error(Errc::NameClash, x);
  for (const auto& x : h.names())
    if (!seen.insert(x).second) throw Error(Errc::NameClash, x);
  std::optional<CandidateIndex> r_h;
  if (r_in_h) {
    r_h = h.find(r);
    if (!r_h) throw Error(Errc::UnknownCandidate, r);
  } else if (seen.count(r)) {
    throw Error(Errc::NameClash, r);
  }
  // Layout: r, F..., H... (H without r when r is taken from H).
  std::vector<std::string> names{r};
  names.insert(names.end(), f.names().begin(), f.names().end());
  std::vector<CandidateIndex> h_src;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (r_h && *r_h == i) continue;
    h_src.push_back(i);
    names.push_back(h.names()[i]);
  }
  DesiredOutcomes out(std::move(names));
  const auto nf = f.size();
  for (std::size_t a = 0; a < nf; ++a) {
    out.beats(1 + a, 0);
    for (std::size_t b = a + 1; b < nf; ++b) out.set(1 + a, 1 + b, f.result(a, b));
  }
  for (std::size_t x = 0; x < h_src.size(); ++x) {
    const auto hx = 1 + nf + x;
    out.set(0, hx, r_h ? h.result(*r_h, h_src[x]) : Result::Win);
    for (std::size_t y = x + 1; y < h_src.size(); ++y) out.set(hx, 1 + nf + y, h.result(h_src[x], h_src[y]));
    for (std::size_t a = 0; a < nf; ++a) out.beats(hx, 1 + a);
  }
  return out;
}

inline Election combine_ghr(const Election& f, const Election& h, const std::string& r = "r") {
  return realize_outcomes(
      combine_ghr(DesiredOutcomes::of(outcome_table(f)), DesiredOutcomes::of(outcome_table(h)), r));
}

}  // namespace copeland
