#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gnplab/log_math.hpp"
#include "gnplab/predictor.hpp"

namespace gnplab {

// ---------------------------------------------------------------------------
// Tree second-moment machinery
// ---------------------------------------------------------------------------

enum class TreeBranch { high_r, mid_r, low_r };

// Branch dispatch for the tree-extension count f(k,l,r). Half-open intervals:
// r >= l(1-1/e) takes the high branch, l/2 <= r < l(1-1/e) the middle one.
inline TreeBranch tree_extension_branch(std::int64_t ell, std::int64_t r) {
  const double rd = static_cast<double>(r);
  const double ld = static_cast<double>(ell);
  if (rd >= ld * (1.0 - 1.0 / std::numbers::e)) return TreeBranch::high_r;
  if (rd >= ld / 2.0) return TreeBranch::mid_r;
  return TreeBranch::low_r;
}

// One branch formula of f(k,l,r), evaluated at real r. Exposing the branches
// separately lets the boundary tests compare left and right limits at the
// discontinuities.
//   high: (l/(l-r))^{l-r} (k-l)^{k-r-2} (l+1)^{k-l-1}
//   mid:  3^{2r-l} 2^{2l-3r} (k-l)^{k-r-2} (l+1)^{k-l-1}
//   low:  2^r (k-l)^{k-r-2} (l+1)^{k-l-1}
inline double tree_extension_formula_log(TreeBranch branch, std::int64_t k,
                                         std::int64_t ell, double r) {
  const double kd = static_cast<double>(k), ld = static_cast<double>(ell);
  double common = (kd - r - 2) * std::log(kd - ld) +
                  (kd - ld - 1) * std::log(ld + 1);
  switch (branch) {
    case TreeBranch::high_r:
      return (ld - r) * std::log(ld / (ld - r)) + common;
    case TreeBranch::mid_r:
      return (2 * r - ld) * std::log(3.0) + (2 * ld - 3 * r) * std::log(2.0) +
             common;
    case TreeBranch::low_r:
      return r * std::log(2.0) + common;
  }
  return kNegInf;
}

// ln f(k,l,r): upper bound on the number of trees on a k-set whose edges
// inside a fixed l-subset are a fixed r-edge forest.
inline double tree_extension_bound_log(std::int64_t k, std::int64_t ell,
                                       std::int64_t r) {
  if (ell >= k) throw std::domain_error("tree extension bound needs l < k");
  if (ell < 2 || r < 0 || r > ell - 1)
    throw std::domain_error("tree extension bound needs 2 <= l < k, 0 <= r <= l-1");
  return tree_extension_formula_log(tree_extension_branch(ell, r), k, ell,
                                    static_cast<double>(r));
}

// ln g(k,l,r) = ln f(k,l,r) + r ln((1-p)/p)
inline double tree_overlap_g_log(double p, std::int64_t k, std::int64_t ell,
                                 std::int64_t r) {
  return tree_extension_bound_log(k, ell, r) +
         static_cast<double>(r) * (std::log1p(-p) - std::log(p));
}

// One row of the tree second-moment decomposition: the extension bound and
// its p-weighted form for a given (k, l, r).
struct TreeOverlapTerm {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  std::int64_t r = 0;
  TreeBranch branch = TreeBranch::low_r;
  double ln_f = 0;      // ln f(k,l,r)
  double ln_ratio = 0;  // ln g(k,l,r) = ln f + r ln((1-p)/p)
};

inline TreeOverlapTerm tree_overlap_term(double p, std::int64_t k,
                                         std::int64_t ell, std::int64_t r) {
  TreeOverlapTerm term;
  term.k = k;
  term.ell = ell;
  term.r = r;
  term.branch = tree_extension_branch(ell, r);
  term.ln_f = tree_extension_bound_log(k, ell, r);
  term.ln_ratio = tree_overlap_g_log(p, k, ell, r);
  return term;
}

// Upper end of the small-overlap regime: 2 ln n / q - 6 ln ln n / q.
inline double small_ell_regime_max(const ModelParams& mp) {
  return 2 * mp.ln_n() / mp.q_log - 6 * std::log(mp.ln_n()) / mp.q_log;
}

// ln of the trivial-bound estimate of F_l / (E X_k)^2 for small l:
//   C(k,l) C(n-k,k-l) (1-p)^{-C(l,2)} / C(n,k), times ((1-p)/p)^l when 1-p > p.
inline double tree_ratio_small_ell_log(const ModelParams& mp, std::int64_t k,
                                       std::int64_t ell) {
  if (ell < 2 || static_cast<double>(ell) > small_ell_regime_max(mp))
    throw std::domain_error("l outside the small-overlap regime");
  if (ell >= k || k > mp.n) throw std::domain_error("need l < k <= n");
  const double ld = static_cast<double>(ell);
  double v = log_choose(k, ell) + log_choose(mp.n - k, k - ell) -
             (ld * (ld - 1) / 2) * mp.ln_1mp() - log_choose(mp.n, k);
  if (1 - mp.p > mp.p) v += ld * (mp.ln_1mp() - std::log(mp.p));
  return v;
}

// ln F~_l: the large-overlap estimate of F_l / (E X_k)^2, valid where
// g(k,l,r) decreases in r (l <= k - 2(1-p)/p):
//   C(k,l) C(n-k,k-l) (1-p)^{-C(l,2)} (k-l)^{k-2} (l+1)^{k-l-1} / (C(n,k) k^{k-2})
inline double tree_ratio_large_ell_log(const ModelParams& mp, std::int64_t k,
                                       std::int64_t ell) {
  const double ld = static_cast<double>(ell), kd = static_cast<double>(k);
  if (!(ld > small_ell_regime_max(mp)))
    throw std::domain_error("l outside the large-overlap regime");
  if (ell > k - 2 || ld > kd - 2 * (1 - mp.p) / mp.p)
    throw std::domain_error("l too close to k: g is not decreasing in r");
  return log_choose(k, ell) + log_choose(mp.n - k, k - ell) -
         (ld * (ld - 1) / 2) * mp.ln_1mp() + (kd - 2) * std::log(kd - ld) +
         (kd - ld - 1) * std::log(ld + 1) - log_choose(mp.n, k) -
         (kd - 2) * std::log(kd);
}

// One branch formula of the tail case function f_0(k,r), at real r.
inline double tree_tail_f0_formula_log(TreeBranch branch, std::int64_t k,
                                       std::int64_t ell, double r) {
  const double kd = static_cast<double>(k), ld = static_cast<double>(ell);
  switch (branch) {
    case TreeBranch::high_r:
      return (kd - r) * std::log(ld / (ld - r));
    case TreeBranch::mid_r:
      return kd * std::log(4.0 / 3.0) + r * std::log(9.0 / 8.0);
    case TreeBranch::low_r:
      return r * std::log(2.0);
  }
  return kNegInf;
}

// Tail case function f_0(k,r) for overlap l = k - c, as displayed:
//   (l/(l-r))^{k-r} I(r >= l(1-1/e)) + (4/3)^k (9/8)^r I(l/2 <= r < l(1-1/e))
//   + 2^r I(r < l/2)
inline double tree_tail_f0_log(std::int64_t k, std::int64_t ell,
                               std::int64_t r) {
  if (ell >= k || ell < 2 || r < 0 || r > ell - 1)
    throw std::domain_error("tail case needs 2 <= l < k, 0 <= r <= l-1");
  return tree_tail_f0_formula_log(tree_extension_branch(ell, r), k, ell,
                                  static_cast<double>(r));
}

// One branch formula of f_1(k,r) = f_0(k,r) c^{k-r} (p/(1-p))^{k-r}, c = k-l.
inline double tree_tail_f1_formula_log(TreeBranch branch, double p,
                                       std::int64_t k, std::int64_t ell,
                                       double r) {
  const double c = static_cast<double>(k - ell);
  return tree_tail_f0_formula_log(branch, k, ell, r) +
         (static_cast<double>(k) - r) *
             (std::log(c) + std::log(p) - std::log1p(-p));
}

inline double tree_tail_f1_log(double p, std::int64_t k, std::int64_t ell,
                               std::int64_t r) {
  if (ell >= k || ell < 2 || r < 0 || r > ell - 1)
    throw std::domain_error("tail case needs 2 <= l < k, 0 <= r <= l-1");
  return tree_tail_f1_formula_log(tree_extension_branch(ell, r), p, k, ell,
                                  static_cast<double>(r));
}

// ---------------------------------------------------------------------------
// Exact-edges second-moment machinery
// ---------------------------------------------------------------------------

// ln H_{l,j} = ln [ C(L,j) C(K-L,t-j)^2 / C(K,t) ] + (j-t) ln((1-p)/p),
// K = C(k,2), L = C(l,2).
inline double edges_H_log(const ModelParams& mp, std::int64_t k,
                          std::int64_t ell, std::int64_t t, std::int64_t j) {
  if (ell >= k) throw std::domain_error("edges_H_log needs l < k");
  const std::int64_t K = k * (k - 1) / 2;
  const std::int64_t L = ell * (ell - 1) / 2;
  const std::int64_t j_lo = std::max<std::int64_t>(0, t - K + L);
  const std::int64_t j_hi = std::min(t, L);
  if (j < j_lo || j > j_hi)
    throw std::domain_error("j outside [max{0, t-K+L}, min{t, L}]");
  return log_choose(L, j) + 2 * log_choose(K - L, t - j) - log_choose(K, t) +
         static_cast<double>(j - t) * (mp.ln_1mp() - std::log(mp.p));
}

// ln F_l for the exact-edges statistic: log-sum-exp of the displayed sum
//   F_l = C(k,l) C(n-k,k-l) (1-p)^{-C(l,2)}
//         sum_j C(L,j) C(K-L,t-j)^2 ((1-p)/p)^j
inline double edges_F_log(const ModelParams& mp, std::int64_t k,
                          std::int64_t ell, std::int64_t t) {
  if (ell < 0 || ell > k - 1) throw std::domain_error("edges_F_log needs 0 <= l <= k-1");
  const std::int64_t K = k * (k - 1) / 2;
  const std::int64_t L = ell * (ell - 1) / 2;
  if (t > K) throw std::domain_error("edges_F_log needs t <= C(k,2)");
  const std::int64_t j_lo = std::max<std::int64_t>(0, t - K + L);
  const std::int64_t j_hi = std::min(t, L);
  if (j_lo > j_hi) throw std::domain_error("empty j range");
  std::vector<double> terms;
  terms.reserve(j_hi - j_lo + 1);
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    terms.push_back(log_choose(L, j) + 2 * log_choose(K - L, t - j) +
                    static_cast<double>(j) * (mp.ln_1mp() - std::log(mp.p)));
  }
  const double ld = static_cast<double>(ell);
  return log_choose(k, ell) + log_choose(mp.n - k, k - ell) -
         (ld * (ld - 1) / 2) * mp.ln_1mp() + log_sum(terms);
}

struct GValues {
  double ln_G = 0;
  double ln_A = 0;
  double ln_G_tilde = 0;
  double ln_G_hat = 0;
};

// G_l = C(k,l) C(n-k,k-l) / C(n,k) * (1-p)^{-C(l,2)}
// A(t) = 1 + (1-p)/p * (t/(K-t))^2
// G~_l = G_l A(t)^{C(l,2)}
// G^_l = G_l exp( 2 sqrt(2p/(1-p)) sqrt(t) (k-l) + 6p/(1-p) (k-l)^2 )
inline GValues edges_G_values(const ModelParams& mp, std::int64_t k,
                              std::int64_t ell, std::int64_t t) {
  if (ell < 2 || ell > k - 1)
    throw std::domain_error("edges_G_values needs 2 <= l <= k-1");
  const std::int64_t K = k * (k - 1) / 2;
  if (t < 0 || t >= K) throw std::domain_error("edges_G_values needs 0 <= t < C(k,2)");
  const double ld = static_cast<double>(ell), kd = static_cast<double>(k);
  const double L = ld * (ld - 1) / 2;
  GValues out;
  out.ln_G = log_choose(k, ell) + log_choose(mp.n - k, k - ell) -
             log_choose(mp.n, k) - L * mp.ln_1mp();
  const double ratio = static_cast<double>(t) / static_cast<double>(K - t);
  out.ln_A = std::log1p((1 - mp.p) / mp.p * ratio * ratio);
  out.ln_G_tilde = out.ln_G + L * out.ln_A;
  out.ln_G_hat = out.ln_G +
                 2 * std::sqrt(2 * mp.p / (1 - mp.p)) *
                     std::sqrt(static_cast<double>(t)) * (kd - ld) +
                 6 * mp.p / (1 - mp.p) * (kd - ld) * (kd - ld);
  return out;
}

// One row of the exact-edges second-moment decomposition at (k, l, t, j).
struct EdgeOverlapTerm {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  std::int64_t t = 0;
  std::int64_t j = 0;
  std::int64_t K = 0;  // C(k,2)
  std::int64_t L = 0;  // C(l,2)
  double ln_H = 0;
  double ln_G = 0;
  double ln_G_tilde = 0;
  double ln_G_hat = 0;
  double ln_A = 0;
};

inline EdgeOverlapTerm edge_overlap_term(const ModelParams& mp, std::int64_t k,
                                         std::int64_t ell, std::int64_t t,
                                         std::int64_t j) {
  EdgeOverlapTerm term;
  term.k = k;
  term.ell = ell;
  term.t = t;
  term.j = j;
  term.K = k * (k - 1) / 2;
  term.L = ell * (ell - 1) / 2;
  term.ln_H = edges_H_log(mp, k, ell, t, j);
  GValues g = edges_G_values(mp, k, ell, t);
  term.ln_G = g.ln_G;
  term.ln_G_tilde = g.ln_G_tilde;
  term.ln_G_hat = g.ln_G_hat;
  term.ln_A = g.ln_A;
  return term;
}

// Stationary points of h(j): roots of (t-j)^2 / j = 2p(k-l)^2 / (1-p).
// j2 by the closed form, j1 via the product identity j1 j2 = t^2.
struct StationaryPair {
  double j1 = 0;
  double j2 = 0;
  std::int64_t t = 0;
  double c2 = 0;  // 2p(k-l)^2/(1-p)
};

inline StationaryPair edges_h_roots(const ModelParams& mp, std::int64_t k,
                                    std::int64_t ell, std::int64_t t) {
  if (ell >= k) throw std::domain_error("edges_h_roots needs l < k");
  if (t < 1) throw std::domain_error("edges_h_roots needs t >= 1");
  const double diff = static_cast<double>(k - ell);
  const double td = static_cast<double>(t);
  const double ratio = mp.p / (1 - mp.p) * diff * diff;
  StationaryPair out;
  out.t = t;
  out.c2 = 2 * mp.p * diff * diff / (1 - mp.p);
  out.j2 = td + ratio * (1 + std::sqrt(1 + 2 * td * (1 - mp.p) /
                                               (mp.p * diff * diff)));
  out.j1 = td * td / out.j2;
  return out;
}

// Admissible interval for the delta in l* = floor((2-delta) ln n / q).
struct DeltaInterval {
  double lo = 0;
  double hi = 0;
  bool empty() const { return !(lo < hi); }
  // Midpoint when non-empty; hi/2 fallback otherwise.
  double pick() const { return empty() ? hi / 2 : (lo + hi) / 2; }
};

inline DeltaInterval delta_interval(const ModelParams& mp, double eps) {
  if (!(eps > 0 && eps < 0.5))
    throw std::domain_error("delta_interval needs eps in (0, 1/2)");
  DeltaInterval out;
  out.lo = (1 / (1 - mp.p)) / mp.q_log * (4 * eps / (1 - 2 * eps));
  out.hi = mp.q_log / (12 * mp.p / (1 - mp.p) + mp.q_log);
  return out;
}

inline std::int64_t ell_star(const ModelParams& mp, double delta) {
  return static_cast<std::int64_t>(
      std::floor((2 - delta) * mp.ln_n() / mp.q_log));
}

// ---------------------------------------------------------------------------
// Chebyshev diagnostic for the tree lower bound
// ---------------------------------------------------------------------------

struct ChebyshevRow {
  std::int64_t ell = 0;
  std::string regime;  // "small" | "large" | "large_maxr"
  double ln_term = 0;
};

struct ChebyshevReport {
  std::int64_t k = 0;
  std::vector<ChebyshevRow> rows;
  double ln_inv_expectation = 0;  // ln(1 / E X_k)
  double ln_total = 0;            // log-sum-exp of rows + 1/E X_k
};

// Tabulates every F_l / (E X_k)^2 estimate at k = floor(khat - 1 + eps) plus
// the 1/E X_k term. Diagnostic only: the bound is asymptotic and no claim is
// made about its sign at finite n.
inline ChebyshevReport tree_chebyshev_report(const ModelParams& mp,
                                             double eps) {
  ChebyshevReport report;
  const double root = khat(mp);
  report.k = static_cast<std::int64_t>(std::floor(root - 1 + eps));
  const std::int64_t k = report.k;
  if (k < 4) throw std::domain_error("k too small for a chebyshev report");
  const double small_max = small_ell_regime_max(mp);
  const double kd = static_cast<double>(k);
  for (std::int64_t ell = 2; ell <= k - 2; ++ell) {
    const double ld = static_cast<double>(ell);
    ChebyshevRow row;
    row.ell = ell;
    if (ld <= small_max) {
      row.regime = "small";
      row.ln_term = tree_ratio_small_ell_log(mp, k, ell);
    } else if (ld <= kd - 2 * (1 - mp.p) / mp.p) {
      row.regime = "large";
      row.ln_term = tree_ratio_large_ell_log(mp, k, ell);
    } else {
      // g is no longer monotone in r here; take the max over r directly.
      row.regime = "large_maxr";
      double best = kNegInf;
      for (std::int64_t r = 0; r <= ell - 1; ++r)
        best = std::max(best, tree_overlap_g_log(mp.p, k, ell, r));
      row.ln_term = log_choose(k, ell) + log_choose(mp.n - k, k - ell) -
                    (ld * (ld - 1) / 2) * mp.ln_1mp() - log_choose(mp.n, k) -
                    (kd - 2) * std::log(kd) + best;
    }
    report.rows.push_back(row);
  }
  report.ln_inv_expectation = -log_expected_tree_count(mp, k).ln_mag;
  std::vector<double> terms;
  terms.reserve(report.rows.size() + 1);
  for (const auto& row : report.rows) terms.push_back(row.ln_term);
  terms.push_back(report.ln_inv_expectation);
  report.ln_total = log_sum(terms);
  return report;
}

}  // namespace gnplab
