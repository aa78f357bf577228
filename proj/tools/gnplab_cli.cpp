// Command-line front end: window prediction, exact solves on graph files,
// Monte Carlo experiments, moment tables, and t-sequence validation.
//
// Exit codes: 0 success, 2 validation failure, 3 capacity/budget abort.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnplab/experiment.hpp"
#include "gnplab/moments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;

using nlohmann::json;

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

gnplab::EdgeBudgetFn parse_tfn(const std::string& form, double R, double eps) {
  return gnplab::EdgeBudgetFn::parse(form, R, eps);
}

int cmd_predict(const std::string& stat_name, std::int64_t n, double p,
                double eps, double eps1, const std::string& method_name,
                const std::optional<std::string>& t_form, double t_R,
                double t_eps, double b) {
  using namespace gnplab;
  Statistic stat = statistic_from_string(stat_name);
  ModelParams mp(n, p);
  std::optional<EdgeBudgetFn> tfn;
  if (t_form) tfn = parse_tfn(*t_form, t_R, t_eps);
  WindowMethod method = method_name.empty()
                            ? (stat == Statistic::tree
                                   ? WindowMethod::closed_form
                               : stat == Statistic::independent_set ||
                                       stat == Statistic::exact_edges
                                   ? WindowMethod::moment_based
                                   : WindowMethod::closed_form)
                            : window_method_from_string(method_name);
  PredictionWindow w = predict_window(stat, mp, method, eps, eps1, tfn, b);
  // diagnostics round to 12 significant digits
  auto decimal12 = [](double x) { return std::stod(fmt12(x)); };
  json out;
  out["stat"] = to_string(stat);
  out["n"] = n;
  out["p"] = p;
  out["window"] = window_to_json(w);
  if (stat == Statistic::tree && method == WindowMethod::root_based)
    out["khat"] = decimal12(khat(mp));
  if (method == WindowMethod::moment_based) {
    auto k0 = k0_edges(mp, tfn ? *tfn : EdgeBudgetFn::constant(0), eps1);
    out["k0"] = k0.k0;
    out["ln_e_at_k0"] = decimal12(k0.ln_e_at_k0);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_solve(const std::string& stat_name, const std::string& graph_path,
              std::optional<std::int64_t> budget_ms,
              std::optional<std::int64_t> budget_nodes,
              const std::optional<std::string>& t_form, double t_R,
              double t_eps) {
  using namespace gnplab;
  Statistic stat = statistic_from_string(stat_name);
  std::ifstream in(graph_path);
  if (!in) {
    std::cerr << "cannot open graph file: " << graph_path << '\n';
    return kExitValidation;
  }
  Graph g = read_edge_list(in);
  Budget budget;
  budget.max_time_ms = budget_ms;
  budget.max_nodes = budget_nodes;
  std::optional<EdgeBudgetFn> tfn;
  if (t_form) tfn = parse_tfn(*t_form, t_R, t_eps);
  if (stat == Statistic::exact_edges && !tfn) {
    std::cerr << "exact_edges solve needs --t-form\n";
    return kExitValidation;
  }
  SolveResult r = detail::run_solver(stat, g, tfn, budget);
  std::cout << solve_result_to_json(r).dump(2) << '\n';
  return r.exact ? 0 : kExitCapacity;
}

int cmd_experiment(const std::string& config_path,
                   const std::optional<std::string>& csv_path, int workers) {
  using namespace gnplab;
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config file: " << config_path << '\n';
    return kExitValidation;
  }
  json jcfg = json::parse(in);
  ExperimentConfig cfg = config_from_json(jcfg);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport report = run_experiment(cfg, workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << report_to_json(report).dump(2) << '\n';
  std::cerr << "experiment wall time: " << fmt12(wall) << " s (" << workers
            << " workers)\n";
  if (csv_path) {
    std::ofstream csv(*csv_path);
    csv << report_to_csv(report);
  }
  return 0;
}

int cmd_moments(const std::string& table, std::int64_t n, double p, double eps,
                std::optional<std::int64_t> k_opt,
                std::optional<std::int64_t> ell_opt, std::int64_t t,
                const std::optional<std::string>& total_json) {
  using namespace gnplab;
  ModelParams mp(n, p);
  if (table == "tree-ratio" || table == "chebyshev") {
    ChebyshevReport report = tree_chebyshev_report(mp, eps);
    std::cout << "ell,regime,ln_term\n";
    for (const auto& row : report.rows)
      std::cout << row.ell << ',' << row.regime << ',' << fmt12(row.ln_term)
                << '\n';
    if (table == "chebyshev") {
      std::cout << -1 << ",inv_expectation,"
                << fmt12(report.ln_inv_expectation) << '\n';
      if (total_json) {
        json tj;
        tj["k"] = report.k;
        tj["ln_total"] = report.ln_total;
        tj["rows"] = report.rows.size();
        std::ofstream out(*total_json);
        out << tj.dump(2) << '\n';
      }
    }
    return 0;
  }
  if (table == "edges-F") {
    if (!k_opt) throw std::invalid_argument("edges-F needs --k");
    std::cout << "ell,ln_F\n";
    for (std::int64_t ell = 0; ell <= *k_opt - 1; ++ell)
      std::cout << ell << ',' << fmt12(edges_F_log(mp, *k_opt, ell, t)) << '\n';
    return 0;
  }
  if (table == "edges-H") {
    if (!k_opt || !ell_opt)
      throw std::invalid_argument("edges-H needs --k and --ell");
    const std::int64_t K = *k_opt * (*k_opt - 1) / 2;
    const std::int64_t L = *ell_opt * (*ell_opt - 1) / 2;
    std::cout << "j,ln_H\n";
    for (std::int64_t j = std::max<std::int64_t>(0, t - K + L);
         j <= std::min(t, L); ++j)
      std::cout << j << ',' << fmt12(edges_H_log(mp, *k_opt, *ell_opt, t, j))
                << '\n';
    return 0;
  }
  if (table == "G") {
    if (!k_opt) throw std::invalid_argument("G needs --k");
    std::cout << "ell,ln_G,ln_A,ln_G_tilde,ln_G_hat\n";
    for (std::int64_t ell = 2; ell <= *k_opt - 1; ++ell) {
      auto v = edges_G_values(mp, *k_opt, ell, t);
      std::cout << ell << ',' << fmt12(v.ln_G) << ',' << fmt12(v.ln_A) << ','
                << fmt12(v.ln_G_tilde) << ',' << fmt12(v.ln_G_hat) << '\n';
    }
    return 0;
  }
  throw std::invalid_argument("unknown moments table: " + table);
}

int cmd_validate_t(const std::string& t_form, double R, double eps,
                   std::int64_t k_lo, std::int64_t k_hi) {
  using namespace gnplab;
  EdgeBudgetFn tfn = parse_tfn(t_form, R, eps);
  TValidationReport report = validate_t_sequence(tfn, k_lo, k_hi);
  std::cout << t_validation_to_json(report).dump(2) << '\n';
  return report.ok() ? 0 : kExitValidation;
}

int cmd_gen(int n, double p, std::uint64_t seed, std::uint64_t stream,
            const std::string& out_path) {
  using namespace gnplab;
  Graph g = gen_gnp(n, p, RngSpec{seed, stream});
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << '\n';
    return kExitValidation;
  }
  write_edge_list(g, out);
  std::cerr << "wrote n=" << n << " m=" << g.edge_count() << " to " << out_path
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration windows and exact solvers for induced "
               "substructures of G(n,p)"};
  app.require_subcommand(1);

  // predict
  std::string stat, method;
  std::int64_t n = 1000;
  double p = 0.5, eps = 0.45, eps1 = 0.1, b = 1.0;
  std::optional<std::string> t_form;
  double t_R = 1.0, t_eps = 0.5;
  auto* predict = app.add_subcommand("predict", "Print a prediction window");
  predict->add_option("--stat", stat, "tree|path|cycle|mis|edges")->required();
  predict->add_option("--n", n)->required();
  predict->add_option("--p", p)->required();
  predict->add_option("--eps", eps, "tree window slack");
  predict->add_option("--eps1", eps1, "moment threshold parameter");
  predict->add_option("--method", method, "closed_form|root_based|moment_based");
  predict->add_option("--t-form", t_form, "const:C | poly:C,A | table:K=V,...");
  predict->add_option("--t-R", t_R, "smoothness constant R");
  predict->add_option("--t-eps", t_eps, "density constant eps");
  predict->add_option("--b", b, "2bpe factor of the bounded-edges window");

  // solve
  std::string graph_path;
  std::optional<std::int64_t> budget_ms, budget_nodes;
  auto* solve = app.add_subcommand("solve", "Exact solve on a graph file");
  solve->add_option("--stat", stat, "tree|path|cycle|mis|edges")->required();
  solve->add_option("--graph", graph_path, "edge-list file")->required();
  solve->add_option("--budget-ms", budget_ms);
  solve->add_option("--budget-nodes", budget_nodes);
  solve->add_option("--t-form", t_form);
  solve->add_option("--t-R", t_R);
  solve->add_option("--t-eps", t_eps);

  // experiment
  std::string config_path;
  std::optional<std::string> csv_path;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo sweep");
  experiment->add_option("--config", config_path, "JSON config")->required();
  experiment->add_option("--csv", csv_path, "also write a CSV histogram");
  experiment->add_option("--workers", workers);

  // moments
  std::string table;
  std::optional<std::int64_t> k_opt, ell_opt;
  std::int64_t t = 0;
  std::optional<std::string> total_json;
  auto* moments = app.add_subcommand("moments", "Second-moment tables as CSV");
  moments->add_option("--table", table, "tree-ratio|edges-F|edges-H|G|chebyshev")
      ->required();
  moments->add_option("--n", n)->required();
  moments->add_option("--p", p)->required();
  moments->add_option("--eps", eps);
  moments->add_option("--k", k_opt);
  moments->add_option("--ell", ell_opt);
  moments->add_option("--t", t);
  moments->add_option("--total-json", total_json, "write totals JSON here");

  // validate-t
  std::string vt_form;
  double vt_R = 1.0, vt_eps = 0.5;
  std::int64_t k_lo = 3, k_hi = 100;
  auto* validate = app.add_subcommand("validate-t", "Check a t(k) sequence");
  validate->add_option("--t-form", vt_form)->required();
  validate->add_option("--R", vt_R)->required();
  validate->add_option("--eps", vt_eps)->required();
  validate->add_option("--k-lo", k_lo)->required();
  validate->add_option("--k-hi", k_hi)->required();

  // gen
  int gen_n = 100;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 0, gen_stream = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Sample a G(n,p) graph to a file");
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--p", gen_p)->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--stream", gen_stream);
  gen->add_option("--out", gen_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (predict->parsed())
      return cmd_predict(stat, n, p, eps, eps1, method, t_form, t_R, t_eps, b);
    if (solve->parsed())
      return cmd_solve(stat, graph_path, budget_ms, budget_nodes, t_form, t_R,
                       t_eps);
    if (experiment->parsed())
      return cmd_experiment(config_path, csv_path, std::max(1, workers));
    if (moments->parsed())
      return cmd_moments(table, n, p, eps, k_opt, ell_opt, t, total_json);
    if (validate->parsed())
      return cmd_validate_t(vt_form, vt_R, vt_eps, k_lo, k_hi);
    if (gen->parsed())
      return cmd_gen(gen_n, gen_p, gen_seed, gen_stream, gen_out);
  } catch (const gnplab::TSequenceError& err) {
    std::cerr << "t-sequence validation failed:\n"
              << gnplab::t_validation_to_json(err.report).dump(2) << '\n';
    return kExitValidation;
  } catch (const gnplab::CapacityError& err) {
    std::cerr << "capacity error: " << err.what() << '\n';
    return kExitCapacity;
  } catch (const gnplab::BracketError& err) {
    std::cerr << "bracketing error: " << err.what() << '\n';
    return kExitValidation;
  } catch (const gnplab::RangeError& err) {
    std::cerr << "range error: " << err.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
