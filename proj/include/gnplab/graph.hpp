#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gnplab/errors.hpp"
#include "gnplab/rng.hpp"

namespace gnplab {

inline constexpr int kDefaultMaxVertices = 4096;

namespace detail {

inline int word_count(int n) { return (n + 63) / 64; }

template <class F>
inline void for_each_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      int b = std::countr_zero(bits);
      f(static_cast<int>(w * 64 + b));
      bits &= bits - 1;
    }
  }
}

}  // namespace detail

// Subset of {0, ..., universe-1} backed by 64-bit words.
// size() is maintained incrementally and always equals the population count.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe)
      : n_(universe), words_(detail::word_count(universe), 0) {}

  static VertexSet of(int universe, std::initializer_list<int> vs) {
    VertexSet s(universe);
    for (int v : vs) s.add(v);
    return s;
  }
  static VertexSet full(int universe) {
    VertexSet s(universe);
    for (int w = 0; w < detail::word_count(universe); ++w)
      s.words_[w] = ~std::uint64_t{0};
    s.trim();
    s.count_ = universe;
    return s;
  }
  static VertexSet from_words(int universe, std::span<const std::uint64_t> words) {
    VertexSet s(universe);
    for (std::size_t w = 0; w < s.words_.size() && w < words.size(); ++w)
      s.words_[w] = words[w];
    s.trim();
    s.count_ = 0;
    for (auto w : s.words_) s.count_ += std::popcount(w);
    return s;
  }

  int universe() const { return n_; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(int v) const {
    if (v < 0 || v >= n_) return false;
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void add(int v) {
    check(v);
    std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (!(words_[v >> 6] & bit)) {
      words_[v >> 6] |= bit;
      ++count_;
    }
  }
  void remove(int v) {
    check(v);
    std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (words_[v >> 6] & bit) {
      words_[v >> 6] &= ~bit;
      --count_;
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count_);
    detail::for_each_bit(words(), [&](int v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check(int v) const {
    if (v < 0 || v >= n_)
      throw std::domain_error("vertex " + std::to_string(v) +
                              " outside universe of size " + std::to_string(n_));
  }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  int count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Undirected simple graph with fixed-stride adjacency bitsets.
// Immutable in practice once built; all queries are const and thread-safe.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, int max_vertices = kDefaultMaxVertices)
      : n_(n), stride_(detail::word_count(n)), adj_(std::size_t(n) * stride_, 0) {
    if (n < 0) throw std::domain_error("negative vertex count");
    if (n > max_vertices)
      throw CapacityError("vertex count " + std::to_string(n) +
                          " exceeds capacity " + std::to_string(max_vertices));
  }

  int vertex_count() const { return n_; }
  long long edge_count() const { return m_; }
  int stride() const { return stride_; }

  bool has_edge(int u, int v) const {
    check(u);
    check(v);
    if (u == v) return false;
    return (adj_[std::size_t(u) * stride_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  void add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw std::domain_error("self-loops are not allowed");
    if (has_edge(u, v)) return;
    adj_[std::size_t(u) * stride_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    adj_[std::size_t(v) * stride_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    ++m_;
  }

  std::span<const std::uint64_t> neighbors(int v) const {
    check(v);
    return {adj_.data() + std::size_t(v) * stride_, std::size_t(stride_)};
  }
  const std::uint64_t* row(int v) const { return adj_.data() + std::size_t(v) * stride_; }

  int degree(int v) const {
    int d = 0;
    for (auto w : neighbors(v)) d += std::popcount(w);
    return d;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(int v) const {
    if (v < 0 || v >= n_)
      throw std::domain_error("vertex " + std::to_string(v) +
                              " outside graph of size " + std::to_string(n_));
  }

  int n_ = 0;
  int stride_ = 0;
  long long m_ = 0;
  std::vector<std::uint64_t> adj_;
};

// G(n,p) sample. Each unordered pair {u,v} is an edge independently with
// probability p, decided by hash(master_seed, stream_id, pair rank).
inline Graph gen_gnp(int n, double p, const RngSpec& rng,
                     int max_vertices = kDefaultMaxVertices) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0,1]");
  Graph g(n, max_vertices);
  for (int v = 1; v < n; ++v) {
    std::uint64_t base = std::uint64_t(v) * (std::uint64_t(v) - 1) / 2;
    for (int u = 0; u < v; ++u) {
      std::uint64_t h = hash3(rng.master_seed, rng.stream_id, base + u);
      if (uniform01(h) < p) g.add_edge(u, v);
    }
  }
  return g;
}

namespace detail {

inline void require_same_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count())
    throw std::domain_error("vertex set universe does not match graph");
}

}  // namespace detail

// Number of graph edges with both endpoints in s.
inline long long induced_edge_count(const Graph& g, const VertexSet& s) {
  detail::require_same_universe(g, s);
  long long twice = 0;
  auto words = s.words();
  detail::for_each_bit(words, [&](int v) {
    const std::uint64_t* row = g.row(v);
    for (std::size_t w = 0; w < words.size(); ++w)
      twice += std::popcount(row[w] & words[w]);
  });
  return twice / 2;
}

namespace detail {

// Connectivity of the induced subgraph on s (false for the empty set).
inline bool induced_connected(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  const int W = g.stride();
  std::vector<std::uint64_t> seen(W, 0), frontier(W, 0);
  auto sw = s.words();
  int start = -1;
  for (int w = 0; w < W && start < 0; ++w)
    if (sw[w] != 0) start = w * 64 + std::countr_zero(sw[w]);
  seen[start >> 6] |= std::uint64_t{1} << (start & 63);
  frontier = seen;
  int reached = 1;
  while (true) {
    std::vector<std::uint64_t> next(W, 0);
    detail::for_each_bit(std::span<const std::uint64_t>(frontier), [&](int v) {
      const std::uint64_t* row = g.row(v);
      for (int w = 0; w < W; ++w) next[w] |= row[w] & sw[w];
    });
    bool grew = false;
    for (int w = 0; w < W; ++w) {
      std::uint64_t fresh = next[w] & ~seen[w];
      if (fresh != 0) {
        grew = true;
        seen[w] |= fresh;
        reached += std::popcount(fresh);
      }
      next[w] = fresh;
    }
    if (!grew) break;
    frontier = std::move(next);
  }
  return reached == s.size();
}

}  // namespace detail

// True iff the induced subgraph on s is a tree.
// Convention: true for |s| = 1, false for |s| = 0.
inline bool is_induced_tree(const Graph& g, const VertexSet& s) {
  detail::require_same_universe(g, s);
  if (s.empty()) return false;
  if (s.size() == 1) return true;
  return induced_edge_count(g, s) == s.size() - 1 &&
         detail::induced_connected(g, s);
}

// True iff the induced subgraph on s is a simple path (single vertex counts).
inline bool is_induced_path(const Graph& g, const VertexSet& s) {
  detail::require_same_universe(g, s);
  if (s.empty()) return false;
  if (s.size() == 1) return true;
  if (induced_edge_count(g, s) != s.size() - 1) return false;
  auto words = s.words();
  bool ok = true;
  detail::for_each_bit(words, [&](int v) {
    int d = 0;
    const std::uint64_t* row = g.row(v);
    for (std::size_t w = 0; w < words.size(); ++w)
      d += std::popcount(row[w] & words[w]);
    if (d > 2) ok = false;
  });
  return ok && detail::induced_connected(g, s);
}

// True iff the induced subgraph on s is a cycle (|s| >= 3, all degrees 2).
inline bool is_induced_cycle(const Graph& g, const VertexSet& s) {
  detail::require_same_universe(g, s);
  if (s.size() < 3) return false;
  auto words = s.words();
  bool ok = true;
  detail::for_each_bit(words, [&](int v) {
    int d = 0;
    const std::uint64_t* row = g.row(v);
    for (std::size_t w = 0; w < words.size(); ++w)
      d += std::popcount(row[w] & words[w]);
    if (d != 2) ok = false;
  });
  return ok && detail::induced_connected(g, s);
}

inline bool is_independent_set(const Graph& g, const VertexSet& s) {
  detail::require_same_universe(g, s);
  return induced_edge_count(g, s) == 0;
}

inline Graph complement(const Graph& g) {
  const int n = g.vertex_count();
  Graph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

// Plain-text edge list: header "n m", one "u v" edge per line, 0-indexed.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.has_edge(u, v)) out << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& in,
                            int max_vertices = kDefaultMaxVertices) {
  int n = -1;
  long long m = -1;
  if (!(in >> n >> m)) throw std::domain_error("bad edge-list header");
  if (n < 0 || m < 0) throw std::domain_error("bad edge-list header");
  Graph g(n, max_vertices);
  for (long long i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw std::domain_error("truncated edge list");
    if (u == v) throw std::domain_error("self-loop in edge list");
    if (g.has_edge(u, v)) throw std::domain_error("duplicate edge in edge list");
    g.add_edge(u, v);
  }
  if (g.edge_count() != m) throw std::domain_error("edge count mismatch");
  return g;
}

}  // namespace gnplab
