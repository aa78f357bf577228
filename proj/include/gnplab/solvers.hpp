#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gnplab/edge_budget.hpp"
#include "gnplab/errors.hpp"
#include "gnplab/graph.hpp"

namespace gnplab {

// Search budget. Unset fields are unlimited.
struct Budget {
  std::optional<std::int64_t> max_nodes;
  std::optional<std::int64_t> max_time_ms;

  static Budget unlimited() { return {}; }
  static Budget nodes(std::int64_t n) { return Budget{n, std::nullopt}; }
  static Budget time_ms(std::int64_t ms) { return Budget{std::nullopt, ms}; }
};

struct SolveResult {
  int value = 0;
  VertexSet witness;
  bool exact = true;
  std::int64_t nodes_explored = 0;
  std::chrono::microseconds elapsed{0};
};

enum class PathMode { path, cycle };

namespace detail {

class BudgetClock {
 public:
  explicit BudgetClock(const Budget& b)
      : max_nodes_(b.max_nodes.value_or(std::numeric_limits<std::int64_t>::max())) {
    if (b.max_time_ms) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(*b.max_time_ms);
      has_deadline_ = true;
    }
  }

  // Counts one search node; returns false once the budget is exhausted.
  bool keep_going() {
    if (hit_) return false;
    ++nodes_;
    if (nodes_ > max_nodes_) {
      hit_ = true;
    } else if (has_deadline_ && (nodes_ & 0x3ff) == 0 &&
               std::chrono::steady_clock::now() > deadline_) {
      hit_ = true;
    }
    return !hit_;
  }

  bool exhausted() const { return hit_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  std::int64_t max_nodes_;
  std::chrono::steady_clock::time_point deadline_{};
  bool has_deadline_ = false;
  std::int64_t nodes_ = 0;
  bool hit_ = false;
};

inline int popcount_and(const std::uint64_t* a, const std::uint64_t* b, int W) {
  int c = 0;
  for (int w = 0; w < W; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

// Branch-and-bound growth of connected acyclic induced subgraphs. Each tree
// is enumerated once, rooted at its minimum vertex; extension candidates are
// the vertices with exactly one neighbor in the current set.
class TreeSearch {
 public:
  TreeSearch(const Graph& g, BudgetClock& clock)
      : g_(g), n_(g.vertex_count()), W_(g.stride()), clock_(clock) {
    const int depth = n_ + 2;
    cnt0_.assign(std::size_t(depth) * W_, 0);
    cnt1_.assign(std::size_t(depth) * W_, 0);
    elig_.assign(std::size_t(depth) * W_, 0);
    universe_.assign(W_, 0);
    for (int v = 0; v < n_; ++v)
      universe_[v >> 6] |= std::uint64_t{1} << (v & 63);
    cand_buf_.resize(depth);
  }

  void run(int& best, std::vector<int>& best_set) {
    best_ = best;
    for (int r = 0; r < n_ && !clock_.exhausted(); ++r) {
      if (n_ - r <= best_) break;  // trees rooted at r use vertices >= r only
      std::uint64_t* c0 = frame(cnt0_, 0);
      std::uint64_t* c1 = frame(cnt1_, 0);
      std::uint64_t* el = frame(elig_, 0);
      const std::uint64_t* nb = g_.row(r);
      for (int w = 0; w < W_; ++w) {
        c1[w] = nb[w];
        c0[w] = universe_[w] & ~nb[w];
        el[w] = 0;
      }
      c0[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
      // eligible: strictly above the root
      for (int v = r + 1; v < n_; ++v)
        el[v >> 6] |= std::uint64_t{1} << (v & 63);
      cur_.assign(1, r);
      if (1 > best_) {
        best_ = 1;
        best_set_ = cur_;
      }
      dfs(0);
    }
    if (best_ > best) {
      best = best_;
      best_set = best_set_;
    }
  }

 private:
  std::uint64_t* frame(std::vector<std::uint64_t>& a, int depth) {
    return a.data() + std::size_t(depth) * W_;
  }

  void dfs(int depth) {
    if (!clock_.keep_going()) return;
    std::uint64_t* c0 = frame(cnt0_, depth);
    std::uint64_t* c1 = frame(cnt1_, depth);
    std::uint64_t* el = frame(elig_, depth);
    const int s = static_cast<int>(cur_.size());
    if (s > best_) {
      best_ = s;
      best_set_ = cur_;
    }
    int cand = popcount_and(c1, el, W_);
    if (cand == 0) return;
    int open = cand + popcount_and(c0, el, W_);
    if (s + open <= best_) return;

    auto& cands = cand_buf_[depth];
    cands.clear();
    for (int w = 0; w < W_; ++w) {
      std::uint64_t bits = c1[w] & el[w];
      while (bits != 0) {
        cands.push_back(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
    std::uint64_t* k0 = frame(cnt0_, depth + 1);
    std::uint64_t* k1 = frame(cnt1_, depth + 1);
    std::uint64_t* kl = frame(elig_, depth + 1);
    for (int v : cands) {
      if (clock_.exhausted()) return;
      el[v >> 6] &= ~(std::uint64_t{1} << (v & 63));  // tried: gone for siblings
      const std::uint64_t* nb = g_.row(v);
      for (int w = 0; w < W_; ++w) {
        k1[w] = (c1[w] & ~nb[w]) | (c0[w] & nb[w]);
        k0[w] = c0[w] & ~nb[w];
        kl[w] = el[w];
      }
      cur_.push_back(v);
      dfs(depth + 1);
      cur_.pop_back();
      // remaining siblings work with a smaller eligible pool
      if (s + popcount_and(c1, el, W_) + popcount_and(c0, el, W_) <= best_)
        return;
    }
  }

  const Graph& g_;
  int n_, W_;
  BudgetClock& clock_;
  std::vector<std::uint64_t> cnt0_, cnt1_, elig_, universe_;
  std::vector<std::vector<int>> cand_buf_;
  std::vector<int> cur_, best_set_;
  int best_ = 0;
};

// Depth-first extension of induced paths from every start vertex. A new
// endpoint must be adjacent to the previous endpoint and nothing else in the
// chosen set; cycle mode closes through an edge back to the start vertex.
class PathSearch {
 public:
  PathSearch(const Graph& g, PathMode mode, BudgetClock& clock)
      : g_(g), mode_(mode), n_(g.vertex_count()), W_(g.stride()),
        clock_(clock) {
    const int depth = n_ + 2;
    inpath_.assign(std::size_t(depth) * W_, 0);
    blocked_.assign(std::size_t(depth) * W_, 0);
  }

  void run(int& best, std::vector<int>& best_set) {
    best_ = best;
    for (int start = 0; start < n_ && !clock_.exhausted(); ++start) {
      std::uint64_t* in = frame(inpath_, 0);
      std::uint64_t* bl = frame(blocked_, 0);
      std::fill(in, in + W_, 0);
      std::fill(bl, bl + W_, 0);
      in[start >> 6] |= std::uint64_t{1} << (start & 63);
      cur_.assign(1, start);
      if (mode_ == PathMode::path && 1 > best_) {
        best_ = 1;
        best_set_ = cur_;
      }
      dfs(0, start, start);
    }
    if (best_ > best) {
      best = best_;
      best_set = best_set_;
    }
  }

 private:
  std::uint64_t* frame(std::vector<std::uint64_t>& a, int depth) {
    return a.data() + std::size_t(depth) * W_;
  }

  void dfs(int depth, int start, int endpoint) {
    if (!clock_.keep_going()) return;
    std::uint64_t* in = frame(inpath_, depth);
    std::uint64_t* bl = frame(blocked_, depth);
    const int len = static_cast<int>(cur_.size());
    // every future vertex (including a cycle closer) avoids in-path and
    // blocked vertices
    int potential = 0;
    for (int w = 0; w < W_; ++w)
      potential += std::popcount(universe_bit(w) & ~in[w] & ~bl[w]);
    if (len + potential <= best_) return;

    const std::uint64_t* enb = g_.row(endpoint);
    std::uint64_t* kin = frame(inpath_, depth + 1);
    std::uint64_t* kbl = frame(blocked_, depth + 1);
    for (int w = 0; w < W_; ++w) {
      std::uint64_t bits = enb[w] & ~in[w] & ~bl[w];
      while (bits != 0) {
        int v = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        if (clock_.exhausted()) return;
        // neighbors of v inside the current path, other than the endpoint
        int inside = popcount_and(g_.row(v), in, W_);
        const bool touches_start =
            g_.has_edge(v, start) && start != endpoint;
        if (mode_ == PathMode::cycle && inside == 2 && touches_start) {
          if (len + 1 >= 3 && len + 1 > best_) {
            best_ = len + 1;
            best_set_ = cur_;
            best_set_.push_back(v);
          }
          continue;
        }
        if (inside != 1) continue;  // chord somewhere: not an induced extension
        for (int u = 0; u < W_; ++u) {
          kin[u] = in[u];
          kbl[u] = bl[u];
        }
        kin[v >> 6] |= std::uint64_t{1} << (v & 63);
        // the old endpoint becomes interior; in cycle mode the start vertex
        // stays open for the closing edge
        if (mode_ == PathMode::path || endpoint != start) {
          for (int u = 0; u < W_; ++u) kbl[u] |= enb[u];
        }
        cur_.push_back(v);
        if (mode_ == PathMode::path && len + 1 > best_) {
          best_ = len + 1;
          best_set_ = cur_;
        }
        dfs(depth + 1, start, v);
        cur_.pop_back();
      }
    }
  }

  std::uint64_t universe_bit(int w) const {
    const int full = n_ / 64;
    if (w < full) return ~std::uint64_t{0};
    if (w == full && n_ % 64 != 0)
      return (std::uint64_t{1} << (n_ % 64)) - 1;
    return 0;
  }

  const Graph& g_;
  PathMode mode_;
  int n_, W_;
  BudgetClock& clock_;
  std::vector<std::uint64_t> inpath_, blocked_;
  std::vector<int> cur_, best_set_;
  int best_ = 0;
};

// Max clique with greedy-coloring bound (run on the complement graph for
// independent sets).
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, BudgetClock& clock)
      : g_(g), n_(g.vertex_count()), W_(g.stride()), clock_(clock) {
    const int depth = n_ + 2;
    pool_.assign(std::size_t(depth) * W_, 0);
    scratch_.assign(2 * W_, 0);
    order_.resize(depth);
    color_.resize(depth);
  }

  void run(int& best, std::vector<int>& best_set) {
    best_ = best;
    if (n_ > 0) {
      std::uint64_t* P = frame(pool_, 0);
      for (int v = 0; v < n_; ++v) P[v >> 6] |= std::uint64_t{1} << (v & 63);
      cur_.clear();
      expand(0);
    }
    if (best_ > best) {
      best = best_;
      best_set = best_set_;
    }
  }

 private:
  std::uint64_t* frame(std::vector<std::uint64_t>& a, int depth) {
    return a.data() + std::size_t(depth) * W_;
  }

  void expand(int depth) {
    if (!clock_.keep_going()) return;
    std::uint64_t* P = frame(pool_, depth);
    const int in_pool = [&] {
      int c = 0;
      for (int w = 0; w < W_; ++w) c += std::popcount(P[w]);
      return c;
    }();
    if (in_pool == 0) {
      if (static_cast<int>(cur_.size()) > best_) {
        best_ = static_cast<int>(cur_.size());
        best_set_ = cur_;
      }
      return;
    }
    // sequential greedy coloring; color classes are independent in g_
    auto& order = order_[depth];
    auto& color = color_[depth];
    order.clear();
    color.clear();
    std::uint64_t* Q = scratch_.data();
    std::uint64_t* Qc = scratch_.data() + W_;
    std::vector<std::uint64_t> rest(P, P + W_);
    int cls = 0;
    while (true) {
      bool any = false;
      for (int w = 0; w < W_; ++w) {
        Q[w] = rest[w];
        if (Q[w] != 0) any = true;
      }
      if (!any) break;
      ++cls;
      for (int w = 0; w < W_; ++w) Qc[w] = Q[w];
      while (true) {
        int v = -1;
        for (int w = 0; w < W_ && v < 0; ++w)
          if (Qc[w] != 0) v = w * 64 + std::countr_zero(Qc[w]);
        if (v < 0) break;
        order.push_back(v);
        color.push_back(cls);
        rest[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        Qc[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        const std::uint64_t* nb = g_.row(v);
        for (int w = 0; w < W_; ++w) Qc[w] &= ~nb[w];
      }
    }
    std::uint64_t* child = frame(pool_, depth + 1);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (clock_.exhausted()) return;
      if (static_cast<int>(cur_.size()) + color[i] <= best_) return;
      int v = order[i];
      const std::uint64_t* nb = g_.row(v);
      for (int w = 0; w < W_; ++w) child[w] = P[w] & nb[w];
      cur_.push_back(v);
      expand(depth + 1);
      cur_.pop_back();
      P[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }

  const Graph& g_;
  int n_, W_;
  BudgetClock& clock_;
  std::vector<std::uint64_t> pool_, scratch_;
  std::vector<std::vector<int>> order_, color_;
  std::vector<int> cur_, best_set_;
  int best_ = 0;
};

// Decision search: does some k-subset induce exactly t edges? Vertices are
// decided in index order; completions are interval-pruned using the smallest
// and largest remaining neighbor-in-set contributions.
class ExactEdgesDecision {
 public:
  ExactEdgesDecision(const Graph& g, int k, std::int64_t t, BudgetClock& clock)
      : g_(g), n_(g.vertex_count()), k_(k), t_(t), clock_(clock),
        cnt_(n_, 0), hist_(n_ + 2, 0) {
    hist_[0] = n_;
  }

  bool solve(std::vector<int>& witness) {
    chosen_.clear();
    if (!dfs(0, 0, 0)) return false;
    witness = chosen_;
    return true;
  }

 private:
  bool dfs(int idx, int s, std::int64_t e) {
    if (s == k_) return e == t_;
    if (!clock_.keep_going()) return false;
    const int need = k_ - s;
    if (n_ - idx < need) return false;
    // lower bound: current edges plus the smallest attainable contributions
    {
      std::int64_t lo = e;
      int rem = need;
      for (int c = 0; rem > 0 && c <= s; ++c) {
        int take = std::min(hist_[c], rem);
        lo += static_cast<std::int64_t>(c) * take;
        rem -= take;
        if (lo > t_) return false;
      }
      if (lo > t_) return false;
    }
    // upper bound: largest contributions plus a clique among the additions
    {
      std::int64_t hi = e + static_cast<std::int64_t>(need) * (need - 1) / 2;
      int rem = need;
      for (int c = s; rem > 0 && c >= 0; --c) {
        int take = std::min(hist_[c], rem);
        hi += static_cast<std::int64_t>(c) * take;
        rem -= take;
      }
      if (hi < t_) return false;
    }
    const int v = idx;
    const int cv = cnt_[v];
    --hist_[cv];  // v leaves the undecided pool on both branches
    if (e + cv <= t_) {
      bump_neighbors(v, idx, +1);
      chosen_.push_back(v);
      if (dfs(idx + 1, s + 1, e + cv)) return true;
      chosen_.pop_back();
      bump_neighbors(v, idx, -1);
    }
    if (dfs(idx + 1, s, e)) return true;
    ++hist_[cv];
    return false;
  }

  void bump_neighbors(int v, int idx, int delta) {
    const std::uint64_t* nb = g_.row(v);
    const int W = g_.stride();
    for (int w = (idx + 1) >> 6; w < W; ++w) {
      std::uint64_t bits = nb[w];
      if (w == (idx + 1) >> 6 && ((idx + 1) & 63) != 0)
        bits &= ~((std::uint64_t{1} << ((idx + 1) & 63)) - 1);
      while (bits != 0) {
        int u = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        --hist_[cnt_[u]];
        cnt_[u] += delta;
        ++hist_[cnt_[u]];
      }
    }
  }

  const Graph& g_;
  int n_, k_;
  std::int64_t t_;
  BudgetClock& clock_;
  std::vector<int> cnt_, hist_, chosen_;
};

}  // namespace detail

// Maximum induced tree (single vertices count as size-1 trees).
inline SolveResult max_induced_tree(const Graph& g,
                                    const Budget& budget = Budget::unlimited()) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::BudgetClock clock(budget);
  int best = 0;
  std::vector<int> best_set;
  detail::TreeSearch search(g, clock);
  search.run(best, best_set);
  SolveResult out;
  out.value = best;
  out.witness = VertexSet(g.vertex_count());
  for (int v : best_set) out.witness.add(v);
  out.exact = !clock.exhausted();
  out.nodes_explored = clock.nodes();
  out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  if (out.value >= 1 && !is_induced_tree(g, out.witness))
    throw std::logic_error("tree witness failed validation");
  return out;
}

// Maximum induced path, or maximum induced cycle (0 when no cycle exists).
inline SolveResult max_induced_path_or_cycle(
    const Graph& g, PathMode mode, const Budget& budget = Budget::unlimited()) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::BudgetClock clock(budget);
  int best = 0;
  std::vector<int> best_set;
  detail::PathSearch search(g, mode, clock);
  search.run(best, best_set);
  SolveResult out;
  out.value = best;
  out.witness = VertexSet(g.vertex_count());
  for (int v : best_set) out.witness.add(v);
  out.exact = !clock.exhausted();
  out.nodes_explored = clock.nodes();
  out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  if (out.value >= 1) {
    const bool ok = mode == PathMode::path ? is_induced_path(g, out.witness)
                                           : is_induced_cycle(g, out.witness);
    if (!ok) throw std::logic_error("path/cycle witness failed validation");
  }
  return out;
}

// Maximum independent set, as a clique search on the complement.
inline SolveResult max_independent_set(
    const Graph& g, const Budget& budget = Budget::unlimited()) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::BudgetClock clock(budget);
  Graph comp = complement(g);
  int best = 0;
  std::vector<int> best_set;
  detail::CliqueSearch search(comp, clock);
  search.run(best, best_set);
  SolveResult out;
  out.value = best;
  out.witness = VertexSet(g.vertex_count());
  for (int v : best_set) out.witness.add(v);
  out.exact = !clock.exhausted();
  out.nodes_explored = clock.nodes();
  out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  if (out.value >= 1 && !is_independent_set(g, out.witness))
    throw std::logic_error("independent-set witness failed validation");
  return out;
}

// Largest k such that some k-subset induces exactly t(k) edges.
// Scans k downward; a Caro-Wei style certificate (any k-set with t edges
// contains an independent set of size >= k^2/(k+2t)) skips sizes that are
// infeasible outright.
inline SolveResult max_exact_edges_subset(
    const Graph& g, const EdgeBudgetFn& tfn,
    const Budget& budget = Budget::unlimited()) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = g.vertex_count();
  detail::BudgetClock clock(budget);

  // independence number, used only for sound skip certificates; its search
  // honors the caller's limits and a node cap of its own
  SolveResult mis;
  bool have_alpha = false;
  if (n > 0) {
    Budget mis_budget = budget;
    mis_budget.max_nodes =
        std::min<std::int64_t>(budget.max_nodes.value_or(2'000'000), 2'000'000);
    mis = max_independent_set(g, mis_budget);
    have_alpha = mis.exact;
  }

  SolveResult out;
  out.witness = VertexSet(n);
  for (int k = n; k >= 1; --k) {
    if (clock.exhausted()) break;
    const std::int64_t t = tfn(k);
    const std::int64_t pairs = static_cast<std::int64_t>(k) * (k - 1) / 2;
    if (t > pairs) continue;
    if (have_alpha) {
      if (t == 0) {
        if (mis.value >= k) {
          auto vs = mis.witness.to_vector();
          out.value = k;
          out.witness = VertexSet(n);
          for (int i = 0; i < k; ++i) out.witness.add(vs[i]);
          break;
        }
        continue;
      }
      const std::int64_t caro_wei =
          (static_cast<std::int64_t>(k) * k + k + 2 * t - 1) / (k + 2 * t);
      if (caro_wei > mis.value) continue;  // no k-set this sparse exists
    }
    detail::ExactEdgesDecision decision(g, k, t, clock);
    std::vector<int> witness;
    if (decision.solve(witness)) {
      out.value = k;
      out.witness = VertexSet(n);
      for (int v : witness) out.witness.add(v);
      break;
    }
  }
  out.exact = !clock.exhausted();
  out.nodes_explored = clock.nodes() + mis.nodes_explored;
  out.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  if (out.value >= 1 &&
      induced_edge_count(g, out.witness) != tfn(out.value))
    throw std::logic_error("exact-edges witness failed validation");
  return out;
}

namespace detail {

inline std::vector<std::uint32_t> small_adjacency(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 24) throw CapacityError("exhaustive counting is limited to n <= 24");
  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && g.has_edge(u, v)) adj[u] |= std::uint32_t{1} << v;
  return adj;
}

inline int mask_edge_count(const std::vector<std::uint32_t>& adj,
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

inline bool mask_connected(const std::vector<std::uint32_t>& adj,
                           std::uint32_t mask) {
  if (mask == 0) return false;
  std::uint32_t seen = mask & (~mask + 1);  // lowest bit
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

template <class F>
inline void for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) return;  // no statistic counts the empty set
  std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  const std::uint32_t limit = std::uint32_t{1} << n;
  while (mask < limit) {
    f(mask);
    // Gosper's hack: next subset of the same popcount
    std::uint32_t c = mask & (~mask + 1);
    std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

}  // namespace detail

// Exact number of k-subsets inducing a tree, by subset enumeration (n <= 24).
inline std::int64_t count_induced_trees(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (k < 0 || k > n) throw std::domain_error("count_induced_trees needs 0 <= k <= n");
  auto adj = detail::small_adjacency(g);
  if (k == 0) return 0;
  std::int64_t count = 0;
  detail::for_each_k_subset(n, k, [&](std::uint32_t mask) {
    if (detail::mask_edge_count(adj, mask) == k - 1 &&
        detail::mask_connected(adj, mask))
      ++count;
  });
  return count;
}

// Exact number of k-subsets inducing exactly t edges (n <= 24).
inline std::int64_t count_subsets_with_edge_count(const Graph& g, int k,
                                                  std::int64_t t) {
  const int n = g.vertex_count();
  if (k < 0 || k > n)
    throw std::domain_error("count_subsets_with_edge_count needs 0 <= k <= n");
  auto adj = detail::small_adjacency(g);
  if (k == 0) return t == 0 ? 1 : 0;
  std::int64_t count = 0;
  detail::for_each_k_subset(n, k, [&](std::uint32_t mask) {
    if (detail::mask_edge_count(adj, mask) == t) ++count;
  });
  return count;
}

}  // namespace gnplab
