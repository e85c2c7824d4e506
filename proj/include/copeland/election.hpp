#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "copeland/error.hpp"

namespace copeland {

using BigInt = boost::multiprecision::cpp_int;

/// Index of a candidate inside an Election (or OutcomeTable) candidate list.
using CandidateIndex = std::size_t;

/// Position of the unordered pair {i, j}, i < j, in the packed upper triangle.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

inline bool valid_candidate_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

enum class BallotKind { LinearOrder, PreferenceTable };

/// One ballot line: a linear order or an (irrational) pairwise preference
/// table, repeated `multiplicity` times.
///
/// Tables store one byte per unordered pair {i, j} (i < j) in pair_index
/// order: 1 means i is preferred to j, 0 means j is preferred to i.
class Ballot {
 public:
  static Ballot linear(std::vector<CandidateIndex> order, BigInt multiplicity = 1) {
    Ballot b;
    b.kind_ = BallotKind::LinearOrder;
    b.order_ = std::move(order);
    b.multiplicity_ = std::move(multiplicity);
    return b;
  }

  static Ballot table(std::vector<std::uint8_t> prefs, BigInt multiplicity = 1) {
    Ballot b;
    b.kind_ = BallotKind::PreferenceTable;
    b.prefs_ = std::move(prefs);
    b.multiplicity_ = std::move(multiplicity);
    return b;
  }

  /// The preference table induced by a linear order over n candidates.
  static std::vector<std::uint8_t> table_of_order(const std::vector<CandidateIndex>& order,
                                                  std::size_t n) {
    std::vector<std::size_t> pos(n);
    for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = r;
    std::vector<std::uint8_t> prefs(pair_count(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) prefs[pair_index(n, i, j)] = pos[i] < pos[j] ? 1 : 0;
    return prefs;
  }

  BallotKind kind() const noexcept { return kind_; }
  bool is_linear() const noexcept { return kind_ == BallotKind::LinearOrder; }
  const std::vector<CandidateIndex>& order() const noexcept { return order_; }
  const std::vector<std::uint8_t>& prefs() const noexcept { return prefs_; }
  const BigInt& multiplicity() const noexcept { return multiplicity_; }

  Ballot with_multiplicity(BigInt m) const {
    Ballot b = *this;
    b.multiplicity_ = std::move(m);
    return b;
  }

  /// True iff this ballot ranks a above b (n = candidate count).
  bool prefers(std::size_t n, CandidateIndex a, CandidateIndex b) const {
    if (kind_ == BallotKind::PreferenceTable) {
      return a < b ? prefs_[pair_index(n, a, b)] == 1 : prefs_[pair_index(n, b, a)] == 0;
    }
    for (auto c : order_) {
      if (c == a) return true;
      if (c == b) return false;
    }
    return false;
  }

  /// Same ballot over a sub-list of candidates; `keep[i]` is the new index of
  /// old candidate i, or nullopt when it is dropped.
  Ballot restricted(std::size_t n, const std::vector<std::optional<CandidateIndex>>& keep,
                    std::size_t new_n) const {
    if (kind_ == BallotKind::LinearOrder) {
      std::vector<CandidateIndex> o;
      o.reserve(new_n);
      for (auto c : order_)
        if (keep[c]) o.push_back(*keep[c]);
      return linear(std::move(o), multiplicity_);
    }
    std::vector<std::uint8_t> p(pair_count(new_n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!keep[j]) continue;
        const auto a = *keep[i];
        const auto b = *keep[j];
        const bool i_over_j = prefs_[pair_index(n, i, j)] == 1;
        if (a < b)
          p[pair_index(new_n, a, b)] = i_over_j ? 1 : 0;
        else
          p[pair_index(new_n, b, a)] = i_over_j ? 0 : 1;
      }
    }
    return table(std::move(p), multiplicity_);
  }

  friend bool operator==(const Ballot&, const Ballot&) = default;

 private:
  BallotKind kind_ = BallotKind::LinearOrder;
  std::vector<CandidateIndex> order_;
  std::vector<std::uint8_t> prefs_;
  BigInt multiplicity_ = 1;
};

/// Candidate list plus ballot lines. Immutable after construction; all
/// invariants (distinct ids, ballots ranging over exactly the candidates,
/// positive multiplicities) are checked by the constructor.
class Election {
 public:
  Election() = default;

  Election(std::vector<std::string> candidates, std::vector<Ballot> ballots)
      : candidates_(std::move(candidates)), ballots_(std::move(ballots)) {
    validate();
  }

  const std::vector<std::string>& candidates() const noexcept { return candidates_; }
  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }
  std::size_t size() const noexcept { return candidates_.size(); }

  std::optional<CandidateIndex> find(std::string_view name) const {
    for (std::size_t i = 0; i < candidates_.size(); ++i)
      if (candidates_[i] == name) return i;
    return std::nullopt;
  }

  CandidateIndex index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::UnknownCandidate, "'" + std::string(name) + "'");
  }

  BigInt total_multiplicity() const {
    BigInt s = 0;
    for (const auto& b : ballots_) s += b.multiplicity();
    return s;
  }

  bool all_tables() const {
    return std::all_of(ballots_.begin(), ballots_.end(), [](const Ballot& b) { return !b.is_linear(); });
  }
  bool all_linear() const {
    return std::all_of(ballots_.begin(), ballots_.end(), [](const Ballot& b) { return b.is_linear(); });
  }

  /// Sub-election over the candidates flagged in `keep_mask` (voters unchanged).
  Election restricted_to(const std::vector<bool>& keep_mask) const {
    std::vector<std::optional<CandidateIndex>> keep(size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size(); ++i) {
      if (keep_mask[i]) {
        keep[i] = names.size();
        names.push_back(candidates_[i]);
      }
    }
    std::vector<Ballot> bs;
    bs.reserve(ballots_.size());
    for (const auto& b : ballots_) bs.push_back(b.restricted(size(), keep, names.size()));
    return Election(std::move(names), std::move(bs));
  }

  /// Same candidates, different ballots.
  Election with_ballots(std::vector<Ballot> ballots) const { return Election(candidates_, std::move(ballots)); }

  /// Every ballot line of multiplicity m replaced by m unit lines.
  Election unit_expanded() const {
    std::vector<Ballot> out;
    for (const auto& b : ballots_) {
      for (BigInt i = 0; i < b.multiplicity(); ++i) out.push_back(b.with_multiplicity(1));
    }
    return with_ballots(std::move(out));
  }

  friend bool operator==(const Election&, const Election&) = default;

 private:
  void validate() const {
    std::unordered_map<std::string, int> seen;
    for (const auto& c : candidates_) {
      if (!valid_candidate_id(c)) throw Error(Errc::InvalidElection, "bad candidate id '" + c + "'");
      if (seen[c]++) throw Error(Errc::DuplicateCandidate, "'" + c + "'");
    }
    const auto n = candidates_.size();
    for (const auto& b : ballots_) {
      if (b.multiplicity() < 1) throw Error(Errc::BadMultiplicity, "multiplicity must be positive");
      if (b.is_linear()) {
        if (b.order().size() != n) throw Error(Errc::InvalidElection, "order does not cover all candidates");
        std::vector<bool> hit(n, false);
        for (auto c : b.order()) {
          if (c >= n || hit[c]) throw Error(Errc::InvalidElection, "order is not a permutation");
          hit[c] = true;
        }
      } else {
        if (b.prefs().size() != pair_count(n)) throw Error(Errc::IncompleteTable, "table size mismatch");
        for (auto v : b.prefs())
          if (v > 1) throw Error(Errc::InvalidElection, "table entry out of range");
      }
    }
  }

  std::vector<std::string> candidates_;
  std::vector<Ballot> ballots_;
};

}  // namespace copeland
