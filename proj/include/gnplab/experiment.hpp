#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gnplab/edge_budget.hpp"
#include "gnplab/graph.hpp"
#include "gnplab/predictor.hpp"
#include "gnplab/solvers.hpp"
#include "gnplab/version.hpp"

namespace gnplab {

enum class Statistic { tree, path, cycle, independent_set, exact_edges };

inline std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::tree: return "tree";
    case Statistic::path: return "path";
    case Statistic::cycle: return "cycle";
    case Statistic::independent_set: return "independent_set";
    case Statistic::exact_edges: return "exact_edges";
  }
  return "?";
}

inline Statistic statistic_from_string(const std::string& s) {
  if (s == "tree") return Statistic::tree;
  if (s == "path") return Statistic::path;
  if (s == "cycle") return Statistic::cycle;
  if (s == "independent_set" || s == "mis") return Statistic::independent_set;
  if (s == "exact_edges" || s == "edges") return Statistic::exact_edges;
  throw std::invalid_argument("unknown statistic: " + s);
}

inline WindowMethod window_method_from_string(const std::string& s) {
  if (s == "closed_form") return WindowMethod::closed_form;
  if (s == "root_based") return WindowMethod::root_based;
  if (s == "moment_based") return WindowMethod::moment_based;
  throw std::invalid_argument("unknown window method: " + s);
}

struct ExperimentConfig {
  Statistic statistic = Statistic::independent_set;
  std::vector<int> n_list;
  double p = 0.5;
  int trials = 1;
  std::uint64_t master_seed = 0;
  double eps = 0.45;   // tree window slack
  double eps1 = 0.1;   // moment-based threshold parameter
  std::optional<EdgeBudgetFn> tfn;
  Budget budget = Budget::time_ms(60'000);
  WindowMethod window_method = WindowMethod::closed_form;
};

struct ExperimentRow {
  int n = 0;
  PredictionWindow window;
  std::vector<std::pair<int, int>> histogram;  // (value, count), exact trials
  std::optional<double> in_window_fraction;
  int inexact_trials = 0;
  std::optional<double> mean_value;
  std::optional<double> analytic_logE_at_window_lo;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
};

// Raised when the exact-edges precondition fails; carries the full report.
struct TSequenceError : std::invalid_argument {
  TValidationReport report;
  explicit TSequenceError(TValidationReport r)
      : std::invalid_argument("t-sequence validation failed"),
        report(std::move(r)) {}
};

// Window for a statistic under the given parameters. Shared by the CLI
// predict command and the experiment harness.
inline PredictionWindow predict_window(Statistic stat, const ModelParams& mp,
                                       WindowMethod method, double eps,
                                       double eps1,
                                       const std::optional<EdgeBudgetFn>& tfn,
                                       double b = 1.0) {
  switch (stat) {
    case Statistic::tree:
      return window_tree(mp, eps, method);
    case Statistic::path:
    case Statistic::cycle:
      if (method != WindowMethod::closed_form)
        throw std::invalid_argument("path/cycle windows are closed_form only");
      return window_path_cycle(mp);
    case Statistic::independent_set: {
      if (method == WindowMethod::closed_form)
        return window_bounded_edges_fkm(mp, 0, b);
      if (method == WindowMethod::moment_based)
        return k0_edges(mp, EdgeBudgetFn::constant(0), eps1).window;
      throw std::invalid_argument(
          "independent_set windows are closed_form or moment_based");
    }
    case Statistic::exact_edges: {
      if (method != WindowMethod::moment_based)
        throw std::invalid_argument("exact_edges windows are moment_based only");
      if (!tfn) throw std::invalid_argument("exact_edges needs an edge budget");
      return k0_edges(mp, *tfn, eps1).window;
    }
  }
  throw std::invalid_argument("unhandled statistic");
}

namespace detail {

inline SolveResult run_solver(Statistic stat, const Graph& g,
                              const std::optional<EdgeBudgetFn>& tfn,
                              const Budget& budget) {
  switch (stat) {
    case Statistic::tree: return max_induced_tree(g, budget);
    case Statistic::path: return max_induced_path_or_cycle(g, PathMode::path, budget);
    case Statistic::cycle: return max_induced_path_or_cycle(g, PathMode::cycle, budget);
    case Statistic::independent_set: return max_independent_set(g, budget);
    case Statistic::exact_edges: return max_exact_edges_subset(g, *tfn, budget);
  }
  throw std::invalid_argument("unhandled statistic");
}

inline std::optional<double> analytic_log_e(Statistic stat,
                                            const ModelParams& mp,
                                            std::int64_t k,
                                            const std::optional<EdgeBudgetFn>& tfn) {
  if (k < 1 || k > mp.n) return std::nullopt;
  switch (stat) {
    case Statistic::tree:
      return log_expected_tree_count(mp, k).ln_mag;
    case Statistic::independent_set:
      return log_expected_exact_edges_count(mp, k, 0).ln_mag;
    case Statistic::exact_edges: {
      std::int64_t t = (*tfn)(k);
      if (t > k * (k - 1) / 2) return std::nullopt;
      return log_expected_exact_edges_count(mp, k, t).ln_mag;
    }
    default:
      return std::nullopt;  // no expectation formula for paths/cycles here
  }
}

}  // namespace detail

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.n_list.empty()) throw std::invalid_argument("n_list must be non-empty");
  for (int n : cfg.n_list)
    if (n < 3 || n > kDefaultMaxVertices)
      throw std::invalid_argument("n out of range: " + std::to_string(n));
  if (!(cfg.p > 0 && cfg.p < 1))
    throw std::invalid_argument("experiments need p in (0,1)");
  if (!cfg.budget.max_nodes && !cfg.budget.max_time_ms)
    throw std::invalid_argument("experiments need a finite budget");
  if (cfg.statistic == Statistic::exact_edges) {
    if (!cfg.tfn) throw std::invalid_argument("exact_edges needs tfn");
    int max_n = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
    ModelParams mp(max_n, cfg.p);
    std::int64_t hi = std::min<std::int64_t>(
        max_n, static_cast<std::int64_t>(std::floor(4 * mp.ln_n() / mp.q_log)) + 10);
    auto report = validate_t_sequence(*cfg.tfn, 3, hi);
    if (!report.ok()) throw TSequenceError(std::move(report));
  }
  if (cfg.statistic == Statistic::tree && !(cfg.eps > 0 && cfg.eps < 1))
    throw std::invalid_argument("tree experiments need eps in (0,1)");
}

// Monte Carlo sweep: for each n and trial, sample a graph from a derived
// stream, solve, and classify against the predicted window. Trials run in
// parallel; aggregation is an ordered reduction, so the report does not
// depend on the worker count.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       int workers = 1) {
  validate_config(cfg);
  struct TrialOut {
    int value = 0;
    bool exact = false;
  };
  const std::size_t per_n = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cfg.n_list.size() * per_n;
  std::vector<TrialOut> results(total);
  std::atomic<bool> have_error{false};
  std::string first_error;
  std::mutex error_mutex;

  auto run_one = [&](std::size_t task) {
    const int n = cfg.n_list[task / per_n];
    const std::uint64_t trial = task % per_n;
    try {
      Graph g = gen_gnp(n, cfg.p, derive_trial_rng(cfg.master_seed, n, trial));
      SolveResult r = detail::run_solver(cfg.statistic, g, cfg.tfn, cfg.budget);
      results[task] = TrialOut{r.value, r.exact};
    } catch (const CapacityError&) {
      results[task] = TrialOut{0, false};  // counted as an inexact trial
    } catch (const std::exception& e) {
      results[task] = TrialOut{0, false};
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!have_error.exchange(true)) first_error = e.what();
    }
  };

  if (workers <= 1) {
    for (std::size_t task = 0; task < total; ++task) run_one(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t task = next.fetch_add(1);
          if (task >= total) break;
          run_one(task);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  if (have_error.load()) throw std::runtime_error("trial failed: " + first_error);

  ExperimentReport report;
  report.config = cfg;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    ModelParams mp(n, cfg.p);
    ExperimentRow row;
    row.n = n;
    row.window = predict_window(cfg.statistic, mp, cfg.window_method, cfg.eps,
                                cfg.eps1, cfg.tfn);
    std::map<int, int> hist;
    long long sum = 0;
    int exact_count = 0, in_window = 0;
    for (std::size_t t = 0; t < per_n; ++t) {
      const TrialOut& out = results[ni * per_n + t];
      if (!out.exact) {
        ++row.inexact_trials;
        continue;
      }
      ++exact_count;
      ++hist[out.value];
      sum += out.value;
      if (row.window.contains(out.value)) ++in_window;
    }
    row.histogram.assign(hist.begin(), hist.end());
    if (exact_count > 0) {
      row.in_window_fraction =
          static_cast<double>(in_window) / static_cast<double>(exact_count);
      row.mean_value = static_cast<double>(sum) / static_cast<double>(exact_count);
    }
    row.analytic_logE_at_window_lo =
        detail::analytic_log_e(cfg.statistic, mp, row.window.lo, cfg.tfn);
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Expectation audit (exhaustive counting oracle, n <= 24)
// ---------------------------------------------------------------------------

struct AuditRow {
  double mc_mean = 0;
  double std_error = 0;
  double analytic = 0;
  double z = 0;
  std::int64_t trials = 0;
};

inline AuditRow expectation_audit(const ModelParams& mp, Statistic stat, int k,
                                  std::optional<std::int64_t> t,
                                  std::int64_t trials,
                                  std::uint64_t master_seed) {
  if (mp.n > 24) throw CapacityError("expectation audit is limited to n <= 24");
  if (stat != Statistic::tree && stat != Statistic::exact_edges)
    throw std::invalid_argument("expectation audit covers tree and exact_edges");
  const int n = static_cast<int>(mp.n);
  double sum = 0, sumsq = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    Graph g = gen_gnp(n, mp.p, derive_trial_rng(master_seed, n, i));
    std::int64_t x = stat == Statistic::tree
                         ? count_induced_trees(g, k)
                         : count_subsets_with_edge_count(g, k, *t);
    sum += static_cast<double>(x);
    sumsq += static_cast<double>(x) * static_cast<double>(x);
  }
  AuditRow row;
  row.trials = trials;
  row.mc_mean = sum / static_cast<double>(trials);
  const double var =
      trials > 1
          ? (sumsq - sum * sum / static_cast<double>(trials)) /
                static_cast<double>(trials - 1)
          : 0.0;
  row.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
  row.analytic = stat == Statistic::tree
                     ? log_expected_tree_count(mp, k).value()
                     : log_expected_exact_edges_count(mp, k, *t).value();
  if (row.std_error > 0) {
    row.z = (row.mc_mean - row.analytic) / row.std_error;
  } else {
    // deterministic statistic: the only slack is exp/log roundoff
    const double tol = 1e-9 * std::max(1.0, std::fabs(row.analytic));
    row.z = std::fabs(row.mc_mean - row.analytic) <= tol
                ? 0.0
                : std::numeric_limits<double>::infinity();
  }
  return row;
}

// ---------------------------------------------------------------------------
// JSON / CSV serialization
// ---------------------------------------------------------------------------

inline nlohmann::json budget_to_json(const Budget& b) {
  nlohmann::json j;
  j["max_nodes"] = b.max_nodes ? nlohmann::json(*b.max_nodes) : nlohmann::json();
  j["max_time_ms"] =
      b.max_time_ms ? nlohmann::json(*b.max_time_ms) : nlohmann::json();
  return j;
}

inline Budget budget_from_json(const nlohmann::json& j) {
  Budget b;
  b.max_nodes.reset();
  b.max_time_ms.reset();
  if (j.contains("max_nodes") && !j["max_nodes"].is_null())
    b.max_nodes = j["max_nodes"].get<std::int64_t>();
  if (j.contains("max_time_ms") && !j["max_time_ms"].is_null())
    b.max_time_ms = j["max_time_ms"].get<std::int64_t>();
  return b;
}

inline nlohmann::json tfn_to_json(const EdgeBudgetFn& f) {
  nlohmann::json j;
  switch (f.form) {
    case EdgeBudgetFn::Form::constant: j["form"] = "constant"; break;
    case EdgeBudgetFn::Form::poly: j["form"] = "poly"; break;
    case EdgeBudgetFn::Form::table: j["form"] = "table"; break;
  }
  j["c"] = f.c;
  j["a"] = f.a;
  if (f.form == EdgeBudgetFn::Form::table) {
    nlohmann::json tab = nlohmann::json::object();
    for (auto& [k, v] : f.values) tab[std::to_string(k)] = v;
    j["table"] = tab;
  }
  j["R"] = f.R;
  j["eps"] = f.eps;
  return j;
}

inline EdgeBudgetFn tfn_from_json(const nlohmann::json& j) {
  const std::string form = j.at("form").get<std::string>();
  const double R = j.value("R", 1.0);
  const double eps = j.value("eps", 0.5);
  if (form == "constant")
    return EdgeBudgetFn::constant(
        static_cast<std::int64_t>(j.value("c", 0.0)), R, eps);
  if (form == "poly")
    return EdgeBudgetFn::poly(j.value("c", 0.0), j.value("a", 0.0), R, eps);
  if (form == "table") {
    std::map<std::int64_t, std::int64_t> tab;
    for (auto& [k, v] : j.at("table").items())
      tab[std::stoll(k)] = v.get<std::int64_t>();
    return EdgeBudgetFn::from_table(std::move(tab), R, eps);
  }
  throw std::invalid_argument("unknown tfn form: " + form);
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["statistic"] = to_string(cfg.statistic);
  j["n_list"] = cfg.n_list;
  j["p"] = cfg.p;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["eps"] = cfg.eps;
  j["eps1"] = cfg.eps1;
  j["tfn"] = cfg.tfn ? tfn_to_json(*cfg.tfn) : nlohmann::json();
  j["budget"] = budget_to_json(cfg.budget);
  j["window_method"] = to_string(cfg.window_method);
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.statistic = statistic_from_string(j.at("statistic").get<std::string>());
  cfg.n_list = j.at("n_list").get<std::vector<int>>();
  cfg.p = j.at("p").get<double>();
  cfg.trials = j.at("trials").get<int>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.eps = j.value("eps", 0.45);
  cfg.eps1 = j.value("eps1", 0.1);
  if (j.contains("tfn") && !j["tfn"].is_null()) cfg.tfn = tfn_from_json(j["tfn"]);
  if (j.contains("budget") && !j["budget"].is_null())
    cfg.budget = budget_from_json(j["budget"]);
  if (j.contains("window_method"))
    cfg.window_method =
        window_method_from_string(j["window_method"].get<std::string>());
  return cfg;
}

inline nlohmann::json window_to_json(const PredictionWindow& w) {
  nlohmann::json j;
  j["lo"] = w.lo;
  j["hi"] = w.hi;
  j["method"] = to_string(w.method);
  return j;
}

// Canonical report JSON: keys sorted by nlohmann's object ordering, no
// volatile fields (timings are logged separately).
inline nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  j["meta"] = {{"schema", 1}, {"version", kVersion}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r;
    r["n"] = row.n;
    r["window"] = window_to_json(row.window);
    nlohmann::json hist = nlohmann::json::array();
    for (auto& [value, count] : row.histogram)
      hist.push_back(nlohmann::json::array({value, count}));
    r["histogram"] = hist;
    r["in_window_fraction"] = row.in_window_fraction
                                  ? nlohmann::json(*row.in_window_fraction)
                                  : nlohmann::json();
    r["inexact_trials"] = row.inexact_trials;
    r["mean_value"] =
        row.mean_value ? nlohmann::json(*row.mean_value) : nlohmann::json();
    r["analytic_logE_at_window_lo"] =
        row.analytic_logE_at_window_lo
            ? nlohmann::json(*row.analytic_logE_at_window_lo)
            : nlohmann::json();
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

// One CSV row per (n, value) histogram cell.
inline std::string report_to_csv(const ExperimentReport& report) {
  std::string out =
      "n,value,count,window_lo,window_hi,in_window_fraction,inexact_trials\n";
  char buf[64];
  for (const auto& row : report.rows) {
    for (auto& [value, count] : row.histogram) {
      out += std::to_string(row.n) + ',' + std::to_string(value) + ',' +
             std::to_string(count) + ',' + std::to_string(row.window.lo) +
             ',' + std::to_string(row.window.hi) + ',';
      if (row.in_window_fraction) {
        std::snprintf(buf, sizeof buf, "%.12g", *row.in_window_fraction);
        out += buf;
      }
      out += ',' + std::to_string(row.inexact_trials) + '\n';
    }
  }
  return out;
}

inline nlohmann::json solve_result_to_json(const SolveResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["witness"] = r.witness.to_vector();
  j["exact"] = r.exact;
  j["nodes_explored"] = r.nodes_explored;
  j["elapsed_ms"] = static_cast<double>(r.elapsed.count()) / 1000.0;
  return j;
}

inline nlohmann::json t_validation_to_json(const TValidationReport& report) {
  auto violation = [](const TViolation& v) {
    nlohmann::json j;
    j["k"] = v.k;
    j["condition"] = v.condition;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    return j;
  };
  nlohmann::json j;
  j["ok"] = report.ok();
  nlohmann::json vs = nlohmann::json::array();
  for (auto& v : report.violations) vs.push_back(violation(v));
  j["violations"] = vs;
  nlohmann::json ns = nlohmann::json::array();
  for (auto& v : report.notes) ns.push_back(violation(v));
  j["notes"] = ns;
  return j;
}

}  // namespace gnplab
