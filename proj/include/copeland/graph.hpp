#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "copeland/error.hpp"

namespace copeland {

/// Undirected simple graph on vertices 1..n.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n) {}

  Graph(std::size_t n, const std::vector<Edge>& edges) : n_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u < 1 || v < 1 || u > n_ || v > n_ || u == v)
      throw Error(Errc::BadVertex, "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    Edge e{std::min(u, v), std::max(u, v)};
    for (const auto& x : edges_)
      if (x == e) throw Error(Errc::DuplicateEdge, "{" + std::to_string(u) + "," + std::to_string(v) + "}");
    edges_.push_back(e);
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool incident(std::size_t edge, std::size_t vertex) const {
    return edges_[edge].first == vertex || edges_[edge].second == vertex;
  }

  std::size_t degree(std::size_t vertex) const {
    std::size_t d = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) d += incident(e, vertex);
    return d;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Exhaustive vertex cover test: does some W with |W| <= k touch every edge?
inline bool vc_brute(const Graph& g, std::size_t k) {
  const auto n = g.vertex_count();
  if (n >= 63) throw Error(Errc::BudgetExceeded, "vc_brute supports at most 62 vertices");
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    if (static_cast<std::size_t>(__builtin_popcountll(w)) > k) continue;
    bool covers = true;
    for (auto [u, v] : g.edges()) {
      if (!((w >> (u - 1)) & 1) && !((w >> (v - 1)) & 1)) {
        covers = false;
        break;
      }
    }
    if (covers) return true;
  }
  return false;
}

/// All labeled simple graphs on n vertices (2^(n(n-1)/2) of them).
inline std::vector<Graph> all_labeled_graphs(std::size_t n) {
  std::vector<Graph::Edge> slots;
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Graph g(n);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1) g.add_edge(slots[s].first, slots[s].second);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace copeland
