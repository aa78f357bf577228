#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "gnplab/edge_budget.hpp"
#include "gnplab/errors.hpp"
#include "gnplab/log_math.hpp"

namespace gnplab {

// Model parameters for G(n,p) with constant p. q_log = ln(1/(1-p)) is the
// natural-log base of all window formulas.
struct ModelParams {
  std::int64_t n = 0;
  double p = 0.0;
  double q_log = 0.0;

  ModelParams(std::int64_t n_, double p_) : n(n_), p(p_) {
    if (n < 3) throw std::domain_error("ModelParams needs n >= 3");
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("ModelParams needs p in (0,1)");
    q_log = -std::log1p(-p);
  }

  double ln_n() const { return std::log(static_cast<double>(n)); }
  double ln_1mp() const { return std::log1p(-p); }
  // log base 1/(1-p)
  double log_q(double x) const { return std::log(x) / q_log; }
};

enum class WindowMethod { closed_form, root_based, moment_based };

inline std::string to_string(WindowMethod m) {
  switch (m) {
    case WindowMethod::closed_form: return "closed_form";
    case WindowMethod::root_based: return "root_based";
    case WindowMethod::moment_based: return "moment_based";
  }
  return "?";
}

// Two consecutive integers {lo, lo+1} claimed to contain the maximum a.a.s.
struct PredictionWindow {
  long long lo = 0;
  long long hi = 0;
  WindowMethod method = WindowMethod::closed_form;

  static PredictionWindow around(long long lo, WindowMethod m) {
    return PredictionWindow{lo, lo + 1, m};
  }
  bool contains(long long v) const { return v == lo || v == hi; }
};

// ln E X_k for induced trees of size k:
//   E X_k = C(n,k) (1-p)^{C(k,2)-k+1} p^{k-1} k^{k-2}
inline LogValue log_expected_tree_count(const ModelParams& mp, std::int64_t k) {
  if (k < 1 || k > mp.n)
    throw std::domain_error("tree expectation needs 1 <= k <= n");
  const double kk = static_cast<double>(k);
  double ln = log_choose(mp.n, k) +
              (kk * (kk - 1) / 2 - kk + 1) * mp.ln_1mp() +
              (kk - 1) * std::log(mp.p) + (kk - 2) * std::log(kk);
  return LogValue::from_ln(ln);
}

// Stirling form of ln E X_k for trees, extended to real k:
//   k ln n - (5/2) ln k + k - C(k,2) ln(1/(1-p)) + (k-1) ln(p/(1-p)) - ln(2*pi)/2
inline double gamma_log(const ModelParams& mp, double k) {
  return k * mp.ln_n() - 2.5 * std::log(k) + k -
         (k * (k - 1) / 2) * mp.q_log +
         (k - 1) * (std::log(mp.p) - mp.ln_1mp()) -
         0.5 * std::log(2 * std::numbers::pi);
}

// Root of gamma_log on [1.5 ln n / q, 4 ln n / q], by bisection.
// k_hat = 2 ln n / q + O(1).
inline double khat(const ModelParams& mp, double tol = 1e-9,
                   int max_iter = 200) {
  if (!(tol > 0)) throw std::domain_error("khat needs tol > 0");
  double lo = 1.5 * mp.ln_n() / mp.q_log;
  double hi = 4.0 * mp.ln_n() / mp.q_log;
  double flo = gamma_log(mp, lo);
  double fhi = gamma_log(mp, hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw BracketError("gamma_log does not change sign on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) +
                       "]: endpoint values " + std::to_string(flo) + ", " +
                       std::to_string(fhi));
  double mid = lo;
  for (int i = 0; i < max_iter; ++i) {
    mid = 0.5 * (lo + hi);
    double fmid = gamma_log(mp, mid);
    if (std::fabs(fmid) <= tol) return mid;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

// Tree window. closed_form: floor(2 log_q(e n p) + 2 + eps).
// root_based: floor(khat - 1 + eps).
inline PredictionWindow window_tree(const ModelParams& mp, double eps,
                                    WindowMethod method) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("tree window needs eps in (0,1)");
  switch (method) {
    case WindowMethod::closed_form: {
      double f = 2 * mp.log_q(std::numbers::e * mp.n * mp.p) + 2 + eps;
      return PredictionWindow::around(
          static_cast<long long>(std::floor(f)), method);
    }
    case WindowMethod::root_based: {
      double root = khat(mp);
      return PredictionWindow::around(
          static_cast<long long>(std::floor(root - 1 + eps)), method);
    }
    default:
      throw std::domain_error("tree window supports closed_form or root_based");
  }
}

// Path/cycle window: floor(2 log_q(n p) + 2.9).
inline PredictionWindow window_path_cycle(const ModelParams& mp) {
  if (!(mp.n * mp.p > 1)) throw std::domain_error("path/cycle window needs np > 1");
  double f = 2 * mp.log_q(mp.n * mp.p) + 2.9;
  return PredictionWindow::around(static_cast<long long>(std::floor(f)),
                                  WindowMethod::closed_form);
}

// Summands of the bounded-edges window formula, exposed individually so the
// t=0 reduction can be compared against the independence-number formula
// term by term.
struct FkmTerms {
  double log_n_term = 0;      // 2 log_q n
  double loglog_term = 0;     // (t-2) log_q log_q n
  double t_log_t_term = 0;    // -t log_q t   (0 when t = 0)
  double t_log_2bpe_term = 0; // t log_q(2bpe)
  double e_half_term = 0;     // 2 log_q(e/2)
  double slack = 0.9;

  double total() const {
    return log_n_term + loglog_term + t_log_t_term + t_log_2bpe_term +
           e_half_term + slack;
  }
};

inline FkmTerms fkm_window_terms(const ModelParams& mp, std::int64_t t,
                                 double b) {
  if (t < 0) throw std::domain_error("bounded-edges window needs t >= 0");
  if (!(b > 0)) throw std::domain_error("bounded-edges window needs b > 0");
  const double logqn = mp.log_q(static_cast<double>(mp.n));
  if (logqn <= 1)
    throw std::domain_error("log_q log_q n undefined: log_q n <= 1");
  FkmTerms terms;
  const double td = static_cast<double>(t);
  terms.log_n_term = 2 * logqn;
  terms.loglog_term = (td - 2) * mp.log_q(logqn);
  terms.t_log_t_term = t == 0 ? 0.0 : -td * mp.log_q(td);
  terms.t_log_2bpe_term =
      t == 0 ? 0.0 : td * mp.log_q(2 * b * mp.p * std::numbers::e);
  terms.e_half_term = 2 * mp.log_q(std::numbers::e / 2);
  return terms;
}

// Bounded-edges window (at most t(k) edges), with the 2bpe factor's b exposed
// as an explicit parameter. At t = 0 this reduces term by term to the
// classical independence-number formula.
inline PredictionWindow window_bounded_edges_fkm(const ModelParams& mp,
                                                 std::int64_t t, double b) {
  double f = fkm_window_terms(mp, t, b).total();
  return PredictionWindow::around(static_cast<long long>(std::floor(f)),
                                  WindowMethod::closed_form);
}

// ln E X_k for induced subgraphs with k vertices and exactly t edges:
//   E X_k = C(n,k) C(C(k,2), t) p^t (1-p)^{C(k,2)-t}
inline LogValue log_expected_exact_edges_count(const ModelParams& mp,
                                               std::int64_t k, std::int64_t t) {
  if (k < 1 || k > mp.n)
    throw std::domain_error("exact-edges expectation needs 1 <= k <= n");
  const std::int64_t pairs = k * (k - 1) / 2;
  if (t < 0 || t > pairs)
    throw std::domain_error("exact-edges expectation needs 0 <= t <= C(k,2)");
  double ln = log_choose(mp.n, k) + log_choose(pairs, t) +
              static_cast<double>(t) * std::log(mp.p) +
              static_cast<double>(pairs - t) * mp.ln_1mp();
  return LogValue::from_ln(ln);
}

struct K0Result {
  std::int64_t k0 = 0;
  PredictionWindow window;
  double ln_e_at_k0 = 0.0;
  std::int64_t scan_hi = 0;
};

// Moment-based threshold for the exact-edges statistic: scan k upward for the
// minimum k with E X_k < 1, then apply the n^{1-2*eps1} adjustment. The
// returned window is {k0-1, k0}.
inline K0Result k0_edges(const ModelParams& mp, const EdgeBudgetFn& tfn,
                         double eps1) {
  if (!(eps1 > 0 && eps1 < 0.25))
    throw std::domain_error("k0_edges needs eps1 in (0, 1/4)");
  const std::int64_t scan_hi =
      std::min<std::int64_t>(mp.n,
                             static_cast<std::int64_t>(
                                 std::floor(4 * mp.ln_n() / mp.q_log)) + 10);
  auto ln_e = [&](std::int64_t k) {
    return log_expected_exact_edges_count(mp, k, tfn(k)).ln_mag;
  };
  for (std::int64_t k = 3; k <= scan_hi; ++k) {
    if (tfn(k) > k * (k - 1) / 2) continue;  // below the feasible size range
    if (ln_e(k) < 0) {
      std::int64_t k0 = k;
      if (k - 1 >= 1 && tfn(k - 1) <= (k - 1) * (k - 2) / 2) {
        double prev = ln_e(k - 1);
        if (!(prev > (1 - 2 * eps1) * mp.ln_n())) k0 = k - 1;
      }
      K0Result out;
      out.k0 = k0;
      out.window = PredictionWindow{k0 - 1, k0, WindowMethod::moment_based};
      out.ln_e_at_k0 =
          (tfn(k0) <= k0 * (k0 - 1) / 2) ? ln_e(k0) : kNegInf;
      out.scan_hi = scan_hi;
      return out;
    }
  }
  throw RangeError("E X_k >= 1 for every k in [3, " + std::to_string(scan_hi) +
                   "]");
}

}  // namespace gnplab
