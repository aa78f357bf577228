#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gnplab/errors.hpp"

namespace gnplab {

// Prescribed edge budget t(k): a constant, floor(c * k^a), or an explicit
// table. Carries the smoothness constant R and density constant eps used by
// the t-sequence validator. phi(k) = k^2 / t(k).
struct EdgeBudgetFn {
  enum class Form { constant, poly, table };

  Form form = Form::constant;
  double c = 0.0;
  double a = 0.0;
  std::map<std::int64_t, std::int64_t> values;  // table form only
  double R = 1.0;
  double eps = 0.5;

  static EdgeBudgetFn constant(std::int64_t value, double R = 1.0,
                               double eps = 0.5) {
    EdgeBudgetFn f;
    f.form = Form::constant;
    f.c = static_cast<double>(value);
    f.R = R;
    f.eps = eps;
    if (value < 0) throw std::domain_error("t(k) must be non-negative");
    return f;
  }
  static EdgeBudgetFn poly(double c, double a, double R = 1.0,
                           double eps = 0.5) {
    EdgeBudgetFn f;
    f.form = Form::poly;
    f.c = c;
    f.a = a;
    f.R = R;
    f.eps = eps;
    if (c < 0 || a < 0) throw std::domain_error("poly budget needs c, a >= 0");
    return f;
  }
  static EdgeBudgetFn from_table(std::map<std::int64_t, std::int64_t> tab,
                                 double R = 1.0, double eps = 0.5) {
    EdgeBudgetFn f;
    f.form = Form::table;
    f.values = std::move(tab);
    f.R = R;
    f.eps = eps;
    for (auto& [k, t] : f.values)
      if (t < 0) throw std::domain_error("t(k) must be non-negative");
    return f;
  }

  // Integer value of t(k).
  std::int64_t operator()(std::int64_t k) const {
    switch (form) {
      case Form::constant:
        return static_cast<std::int64_t>(c);
      case Form::poly:
        return static_cast<std::int64_t>(
            std::floor(c * std::pow(static_cast<double>(k), a)));
      case Form::table: {
        auto it = values.find(k);
        if (it == values.end())
          throw std::domain_error("t(k) undefined for k=" + std::to_string(k));
        return it->second;
      }
    }
    return 0;
  }

  // Real-valued form underlying the sequence, when one exists (constant and
  // poly forms). The smoothness check runs on this; the floor in the integer
  // value is presentation, not part of the sequence's analytic shape.
  std::optional<double> smooth_value(std::int64_t k) const {
    switch (form) {
      case Form::constant:
        return c;
      case Form::poly:
        return c * std::pow(static_cast<double>(k), a);
      case Form::table:
        return std::nullopt;
    }
    return std::nullopt;
  }

  // Spec strings: "const:C" | "poly:C,A" | "table:K=V,K=V,..."
  static EdgeBudgetFn parse(std::string_view spec, double R = 1.0,
                            double eps = 0.5) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("bad t-form spec: " + std::string(spec));
    std::string_view kind = spec.substr(0, colon);
    std::string rest(spec.substr(colon + 1));
    if (kind == "const") {
      return constant(std::stoll(rest), R, eps);
    }
    if (kind == "poly") {
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("poly t-form needs c,a");
      return poly(std::stod(rest.substr(0, comma)),
                  std::stod(rest.substr(comma + 1)), R, eps);
    }
    if (kind == "table") {
      std::map<std::int64_t, std::int64_t> tab;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("table entries are k=t");
        tab[std::stoll(item.substr(0, eq))] = std::stoll(item.substr(eq + 1));
      }
      return from_table(std::move(tab), R, eps);
    }
    throw std::invalid_argument("unknown t-form kind: " + std::string(kind));
  }
};

struct TViolation {
  std::int64_t k = 0;
  std::string condition;  // "ratio" | "density" | "ratio_skipped_zero"
  double lhs = 0.0;
  double rhs = 0.0;
};

struct TValidationReport {
  std::vector<TViolation> violations;
  std::vector<TViolation> notes;  // informational, e.g. skipped ratio at t(k)=0
  bool ok() const { return violations.empty(); }
};

// Checks |t(k+1)/t(k) - 1| <= R/k and t(k) < eps*k^2 for every k in
// [k_lo, k_hi]. The ratio condition runs on the analytic form for constant
// and poly budgets and on the raw integers for tables; t(k)=0 entries skip
// the ratio and are recorded as notes.
inline TValidationReport validate_t_sequence(const EdgeBudgetFn& tfn,
                                             std::int64_t k_lo,
                                             std::int64_t k_hi) {
  if (k_lo < 3) throw std::domain_error("t-sequence validation needs k_lo >= 3");
  TValidationReport report;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double tk_int = static_cast<double>(tfn(k));
    const double kk = static_cast<double>(k);
    // density: t(k) < eps * k^2
    if (!(tk_int < tfn.eps * kk * kk)) {
      report.violations.push_back(
          {k, "density", tk_int, tfn.eps * kk * kk});
    }
    // ratio: |t(k+1)/t(k) - 1| <= R/k
    double tk, tk1;
    if (auto sv = tfn.smooth_value(k)) {
      tk = *sv;
      tk1 = *tfn.smooth_value(k + 1);
    } else {
      tk = tk_int;
      tk1 = static_cast<double>(tfn(k + 1));
    }
    if (tk == 0.0) {
      report.notes.push_back({k, "ratio_skipped_zero", 0.0, tfn.R / kk});
      continue;
    }
    const double lhs = std::fabs(tk1 / tk - 1.0);
    const double rhs = tfn.R / kk;
    // tolerance so that exact boundary cases (t(k)=k, R=1) do not flip on
    // floating-point rounding
    if (!(lhs <= rhs * (1 + 1e-9) + 1e-15))
      report.violations.push_back({k, "ratio", lhs, rhs});
  }
  return report;
}

}  // namespace gnplab
