// Test-side oracles: independent mask-based implementations used to check the
// library's solvers and predicates. Deliberately no reuse of the search code.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "gnplab/edge_budget.hpp"
#include "gnplab/graph.hpp"

namespace oracle {

inline std::vector<std::uint32_t> adjacency_masks(const gnplab::Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && g.has_edge(u, v)) adj[u] |= std::uint32_t{1} << v;
  return adj;
}

inline int edge_count(const std::vector<std::uint32_t>& adj,
                      std::uint32_t mask) {
  int twice = 0;
  std::uint32_t bits = mask;
  while (bits != 0) {
    int v = std::countr_zero(bits);
    bits &= bits - 1;
    twice += std::popcount(adj[v] & mask);
  }
  return twice / 2;
}

inline bool connected(const std::vector<std::uint32_t>& adj,
                      std::uint32_t mask) {
  if (mask == 0) return false;
  std::uint32_t seen = mask & (~mask + 1);
  while (true) {
    std::uint32_t next = seen;
    std::uint32_t bits = seen;
    while (bits != 0) {
      int v = std::countr_zero(bits);
      bits &= bits - 1;
      next |= adj[v] & mask;
    }
    if (next == seen) break;
    seen = next;
  }
  return seen == mask;
}

inline bool is_tree(const std::vector<std::uint32_t>& adj,
                    std::uint32_t mask) {
  int k = std::popcount(mask);
  if (k == 0) return false;
  if (k == 1) return true;
  return edge_count(adj, mask) == k - 1 && connected(adj, mask);
}

inline bool is_path(const std::vector<std::uint32_t>& adj,
                    std::uint32_t mask) {
  if (!is_tree(adj, mask)) return false;
  std::uint32_t bits = mask;
  while (bits != 0) {
    int v = std::countr_zero(bits);
    bits &= bits - 1;
    if (std::popcount(adj[v] & mask) > 2) return false;
  }
  return true;
}

inline bool is_cycle(const std::vector<std::uint32_t>& adj,
                     std::uint32_t mask) {
  if (std::popcount(mask) < 3) return false;
  std::uint32_t bits = mask;
  while (bits != 0) {
    int v = std::countr_zero(bits);
    bits &= bits - 1;
    if (std::popcount(adj[v] & mask) != 2) return false;
  }
  return connected(adj, mask);
}

struct Maxima {
  int tree = 0;
  int path = 0;
  int cycle = 0;
  int independent = 0;
  int exact_edges = 0;
};

inline Maxima exhaustive_maxima(const gnplab::Graph& g,
                                const gnplab::EdgeBudgetFn& tfn) {
  auto adj = adjacency_masks(g);
  const int n = g.vertex_count();
  Maxima m;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const int k = std::popcount(mask);
    const int e = edge_count(adj, mask);
    if (k > m.tree && is_tree(adj, mask)) m.tree = k;
    if (k > m.path && is_path(adj, mask)) m.path = k;
    if (k > m.cycle && is_cycle(adj, mask)) m.cycle = k;
    if (k > m.independent && e == 0) m.independent = k;
    if (k > m.exact_edges && e == tfn(k)) m.exact_edges = k;
  }
  return m;
}

inline std::int64_t count_trees(const gnplab::Graph& g, int k) {
  auto adj = adjacency_masks(g);
  const int n = g.vertex_count();
  std::int64_t count = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask)
    if (std::popcount(mask) == k && is_tree(adj, mask)) ++count;
  return count;
}

// Small deterministic generator for test parameters.
struct Rand {
  std::uint64_t state;
  explicit Rand(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % (hi - lo + 1));
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }
};

}  // namespace oracle
