#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "copeland/alpha.hpp"
#include "copeland/election.hpp"

namespace copeland {

/// Result of a head-to-head contest from the row candidate's perspective.
enum class Result : std::int8_t { Loss = -1, Tie = 0, Win = 1 };

constexpr Result flip(Result r) noexcept { return static_cast<Result>(-static_cast<int>(r)); }

enum class WinnerModel { NonUnique, Unique };

using CandidateSet = std::vector<CandidateIndex>;

/// Pairwise tallies N(a,b) and strict-majority results for every pair.
///
/// Tallies are kept for the packed upper triangle only (N(b,a) = total -
/// N(a,b)); they are stored as machine words whenever the total multiplicity
/// fits, and as big integers otherwise.
class OutcomeTable {
 public:
  OutcomeTable() = default;

  /// `upper[pair_index(n,i,j)]` = N(i,j) for i < j.
  OutcomeTable(std::vector<std::string> names, BigInt total, std::vector<BigInt> upper)
      : names_(std::move(names)), total_(std::move(total)) {
    const auto n = names_.size();
    if (total_ <= BigInt(std::numeric_limits<std::int64_t>::max())) {
      narrow_.resize(upper.size());
      for (std::size_t q = 0; q < upper.size(); ++q) narrow_[q] = static_cast<std::uint64_t>(upper[q]);
    } else {
      wide_ = std::move(upper);
    }
    build_results(n);
  }

  OutcomeTable(std::vector<std::string> names, std::uint64_t total, std::vector<std::uint64_t> upper)
      : names_(std::move(names)), total_(total), narrow_(std::move(upper)) {
    build_results(names_.size());
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const BigInt& total() const noexcept { return total_; }

  std::optional<CandidateIndex> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }
  CandidateIndex index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::UnknownCandidate, "'" + std::string(name) + "'");
  }

  /// N(a,b): multiplicity of ballots preferring a to b.
  BigInt tally(CandidateIndex a, CandidateIndex b) const {
    check_pair(a, b);
    const auto n = size();
    const auto q = a < b ? pair_index(n, a, b) : pair_index(n, b, a);
    BigInt up = narrow_.empty() ? wide_[q] : BigInt(narrow_[q]);
    return a < b ? up : BigInt(total_ - up);
  }

  Result result(CandidateIndex a, CandidateIndex b) const noexcept {
    return static_cast<Result>(results_[a * size() + b]);
  }

  const std::vector<std::int8_t>& result_matrix() const noexcept { return results_; }

  /// Table of the sub-election on `subset` (in the given order); voters are
  /// unchanged, so tallies and results carry over pair by pair.
  OutcomeTable restricted(const CandidateSet& subset) const {
    const auto n = size();
    const auto m = subset.size();
    std::vector<std::string> names;
    names.reserve(m);
    for (auto c : subset) names.push_back(names_[c]);
    OutcomeTable out;
    out.names_ = std::move(names);
    out.total_ = total_;
    if (narrow_.empty()) out.wide_.resize(pair_count(m));
    else out.narrow_.resize(pair_count(m));
    out.results_.assign(m * m, 0);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) {
        const auto a = subset[x];
        const auto b = subset[y];
        const auto q = pair_index(m, x, y);
        const auto src = a < b ? pair_index(n, a, b) : pair_index(n, b, a);
        if (narrow_.empty()) out.wide_[q] = a < b ? wide_[src] : BigInt(total_ - wide_[src]);
        else out.narrow_[q] = a < b ? narrow_[src] : static_cast<std::uint64_t>(total_) - narrow_[src];
        out.results_[x * m + y] = results_[a * n + b];
        out.results_[y * m + x] = results_[b * n + a];
      }
    }
    return out;
  }

  friend bool operator==(const OutcomeTable& l, const OutcomeTable& r) {
    if (l.names_ != r.names_ || l.total_ != r.total_ || l.results_ != r.results_) return false;
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = i + 1; j < l.size(); ++j)
        if (l.tally(i, j) != r.tally(i, j)) return false;
    return true;
  }

 private:
  void check_pair(CandidateIndex a, CandidateIndex b) const {
    if (a >= size() || b >= size()) throw Error(Errc::UnknownCandidate, "index out of range");
    if (a == b) throw Error(Errc::SameCandidate, names_[a]);
  }

  void build_results(std::size_t n) {
    results_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto q = pair_index(n, i, j);
        int cmp = 0;
        if (narrow_.empty()) {
          const BigInt twice = 2 * wide_[q];
          cmp = twice > total_ ? 1 : (twice == total_ ? 0 : -1);
        } else {
          // total < 2^63, so 2*N fits in 64 bits.
          const auto twice = 2 * narrow_[q];
          const auto tot = static_cast<std::uint64_t>(total_);
          cmp = twice > tot ? 1 : (twice == tot ? 0 : -1);
        }
        results_[i * n + j] = static_cast<std::int8_t>(cmp);
        results_[j * n + i] = static_cast<std::int8_t>(-cmp);
      }
    }
  }

  std::vector<std::string> names_;
  BigInt total_ = 0;
  std::vector<std::uint64_t> narrow_;
  std::vector<BigInt> wide_;
  std::vector<std::int8_t> results_;
};

/// Scaled Copeland^alpha points: pts(a,b) = den for a win, num for a tie.
class PointTable {
 public:
  PointTable() = default;
  PointTable(const OutcomeTable& table, const Alpha& alpha) : n_(table.size()), alpha_(alpha) {
    pts_.resize(n_ * n_);
    const auto& r = table.result_matrix();
    for (std::size_t i = 0; i < n_ * n_; ++i) {
      pts_[i] = r[i] > 0 ? alpha.win_points() : (r[i] == 0 ? alpha.tie_points() : 0);
    }
    for (std::size_t i = 0; i < n_; ++i) pts_[i * n_ + i] = 0;
  }

  std::size_t size() const noexcept { return n_; }
  const Alpha& alpha() const noexcept { return alpha_; }
  std::int64_t operator()(CandidateIndex a, CandidateIndex b) const noexcept { return pts_[a * n_ + b]; }
  const std::int64_t* row(CandidateIndex a) const noexcept { return pts_.data() + a * n_; }

  /// Scaled score of every candidate within the sub-election `mask`
  /// (entries of non-members are left at 0).
  std::vector<std::int64_t> scores_within(const std::vector<bool>& mask) const {
    std::vector<std::int64_t> s(n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      if (!mask[a]) continue;
      const auto* r = row(a);
      std::int64_t acc = 0;
      for (std::size_t b = 0; b < n_; ++b)
        if (mask[b]) acc += r[b];
      s[a] = acc;
    }
    return s;
  }

  /// Winners of the sub-election `mask` (ascending index order).
  CandidateSet winners_within(const std::vector<bool>& mask, WinnerModel model) const {
    return argmax(scores_within(mask), mask, model);
  }

  static CandidateSet argmax(const std::vector<std::int64_t>& s, const std::vector<bool>& mask,
                             WinnerModel model) {
    CandidateSet out;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (!mask[a]) continue;
      if (s[a] > best) {
        best = s[a];
        out.clear();
      }
      if (s[a] == best) out.push_back(a);
    }
    if (model == WinnerModel::Unique && out.size() != 1) out.clear();
    return out;
  }

 private:
  std::size_t n_ = 0;
  Alpha alpha_;
  std::vector<std::int64_t> pts_;
};

/// scaled[c] = den * wins(c) + num * ties(c), indexed like the election.
struct ScoreVector {
  Alpha alpha;
  std::vector<std::int64_t> scaled;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

namespace detail {

inline std::vector<BigInt> tally_upper_big(const Election& e) {
  const auto n = e.size();
  std::vector<BigInt> up(pair_count(n), 0);
  std::vector<std::size_t> pos(n);
  for (const auto& b : e.ballots()) {
    if (b.is_linear()) {
      for (std::size_t r = 0; r < n; ++r) pos[b.order()[r]] = r;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (pos[i] < pos[j]) up[pair_index(n, i, j)] += b.multiplicity();
    } else {
      const auto& p = b.prefs();
      for (std::size_t q = 0; q < p.size(); ++q)
        if (p[q]) up[q] += b.multiplicity();
    }
  }
  return up;
}

/// Word-sized tallying. Linear orders are processed candidate-major: for each
/// pair (i, j) the inner loop runs over contiguous 32-bit rank and weight
/// arrays, which the compiler vectorizes. Ballot columns are cut into chunks
/// whose weights sum below 2^32, so each chunk accumulates in 32 bits.
inline std::vector<std::uint64_t> tally_upper_narrow(const Election& e) {
  const auto n = e.size();
  std::vector<std::uint64_t> up(pair_count(n), 0);
  std::size_t lin = 0;
  for (const auto& b : e.ballots()) lin += b.is_linear() ? 1 : 0;
  std::vector<std::int32_t> lin_ranks(n * lin);  // n rows x lin columns
  std::vector<std::uint32_t> lin_weights;
  std::vector<std::size_t> cuts{0};
  std::vector<std::uint64_t> heavy;  // weights >= 2^32 get a column of their own
  lin_weights.reserve(lin);
  std::uint64_t chunk_sum = 0;
  std::size_t col = 0;
  for (const auto& b : e.ballots()) {
    const auto w = static_cast<std::uint64_t>(b.multiplicity());
    if (!b.is_linear()) {
      const auto& p = b.prefs();
      for (std::size_t q = 0; q < p.size(); ++q) up[q] += p[q] * w;
      continue;
    }
    for (std::size_t r = 0; r < n; ++r) lin_ranks[b.order()[r] * lin + col] = static_cast<std::int32_t>(r);
    const bool big = w > std::numeric_limits<std::uint32_t>::max();
    if (big || chunk_sum + w > std::numeric_limits<std::uint32_t>::max()) {
      if (cuts.back() != col) cuts.push_back(col);
      chunk_sum = 0;
    }
    if (big) {
      heavy.resize(lin_weights.size() + 1, 0);
      heavy.back() = w;
      lin_weights.push_back(0);
      cuts.push_back(col + 1);
    } else {
      lin_weights.push_back(static_cast<std::uint32_t>(w));
      chunk_sum += w;
    }
    ++col;
  }
  if (lin == 0) return up;
  if (cuts.back() != lin) cuts.push_back(lin);
  heavy.resize(lin, 0);
  const auto* w = lin_weights.data();
  constexpr std::size_t tile = 8;  // rows i sharing one pass over row j
  for (std::size_t i0 = 0; i0 < n; i0 += tile) {
    for (std::size_t j = i0 + 1; j < n; ++j) {
      const auto* rj = lin_ranks.data() + j * lin;
      for (std::size_t i = i0; i < std::min({n, i0 + tile, j}); ++i) {
        const auto* ri = lin_ranks.data() + i * lin;
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
          std::uint32_t part = 0;
          // Sign mask of ri - rj (ranks are small, no overflow): plain SSE2 vectorizes this, a select does not.
          for (std::size_t v = cuts[c]; v < cuts[c + 1]; ++v)
            part += w[v] & static_cast<std::uint32_t>((ri[v] - rj[v]) >> 31);
          acc += part;
        }
        up[pair_index(n, i, j)] += acc;
      }
    }
  }
  for (std::size_t v = 0; v < lin; ++v) {
    if (!heavy[v]) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (lin_ranks[i * lin + v] < lin_ranks[j * lin + v]) up[pair_index(n, i, j)] += heavy[v];
  }
  return up;
}

}  // namespace detail

/// N(a,b) for one ordered pair.
inline BigInt pairwise_tally(const Election& e, CandidateIndex a, CandidateIndex b) {
  if (a >= e.size() || b >= e.size()) throw Error(Errc::UnknownCandidate, "index out of range");
  if (a == b) throw Error(Errc::SameCandidate, e.candidates()[a]);
  BigInt s = 0;
  for (const auto& bal : e.ballots())
    if (bal.prefers(e.size(), a, b)) s += bal.multiplicity();
  return s;
}

inline BigInt pairwise_tally(const Election& e, std::string_view a, std::string_view b) {
  return pairwise_tally(e, e.index_of(a), e.index_of(b));
}

inline OutcomeTable outcome_table(const Election& e) {
  const BigInt total = e.total_multiplicity();
  if (total <= BigInt(std::numeric_limits<std::int64_t>::max())) {
    return OutcomeTable(e.candidates(), static_cast<std::uint64_t>(total), detail::tally_upper_narrow(e));
  }
  return OutcomeTable(e.candidates(), total, detail::tally_upper_big(e));
}

inline ScoreVector copeland_scores(const OutcomeTable& table, const Alpha& alpha) {
  const auto n = table.size();
  ScoreVector sv{alpha, std::vector<std::int64_t>(n, 0)};
  const auto& r = table.result_matrix();
  for (std::size_t a = 0; a < n; ++a) {
    std::int64_t wins = 0, ties = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      wins += r[a * n + b] > 0;
      ties += r[a * n + b] == 0;
    }
    sv.scaled[a] = alpha.win_points() * wins + alpha.tie_points() * ties;
  }
  return sv;
}

inline ScoreVector copeland_scores(const Election& e, const Alpha& alpha) {
  return copeland_scores(outcome_table(e), alpha);
}

inline CandidateSet winners_of_scores(const std::vector<std::int64_t>& scaled, WinnerModel model) {
  return PointTable::argmax(scaled, std::vector<bool>(scaled.size(), true), model);
}

inline CandidateSet winners(const OutcomeTable& table, const Alpha& alpha, WinnerModel model) {
  if (table.size() == 0) throw Error(Errc::EmptyCandidateSet, "no candidates");
  return winners_of_scores(copeland_scores(table, alpha).scaled, model);
}

inline CandidateSet winners(const Election& e, const Alpha& alpha, WinnerModel model) {
  if (e.size() == 0) throw Error(Errc::EmptyCandidateSet, "no candidates");
  return winners(outcome_table(e), alpha, model);
}

inline std::vector<std::string> names_of(const std::vector<std::string>& names, const CandidateSet& set) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (auto c : set) out.push_back(names[c]);
  return out;
}

}  // namespace copeland
