#pragma once

// Shared fixtures and naive oracles for the test suites.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "copeland/selftest.hpp"

namespace copeland::testing {

using selftest::alpha_grid;
using selftest::letters;
using selftest::random_election;
using selftest::random_linear;
using selftest::random_pattern;
using selftest::random_table;

inline Ballot order(std::initializer_list<CandidateIndex> o, BigInt m = 1) {
  return Ballot::linear(std::vector<CandidateIndex>(o), std::move(m));
}

/// ({a,b,c}; a>b>c, b>c>a, c>a>b)
inline Election e_cyc() {
  return Election(letters(3), {order({0, 1, 2}), order({1, 2, 0}), order({2, 0, 1})});
}

/// ({a,b}; a>b, b>a)
inline Election e_tie() { return Election(letters(2), {order({0, 1}), order({1, 0})}); }

/// Scores straight from the definition: one pairwise_tally per ordered pair,
/// no shared code with the table/score pipeline beyond pairwise_tally.
inline std::vector<std::int64_t> naive_scaled_scores(const Election& e, const Alpha& alpha) {
  const auto n = e.size();
  std::vector<std::int64_t> s(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto ab = pairwise_tally(e, a, b);
      const auto ba = pairwise_tally(e, b, a);
      if (ab > ba) s[a] += alpha.den();
      else if (ab == ba) s[a] += alpha.num();
    }
  return s;
}

}  // namespace copeland::testing
