#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace gnplab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln C(n, k). Returns -inf outside 0 <= k <= n (the binomial is zero there).
// Small k uses a direct sum of log factors; this keeps k=1 exact to the last
// ulp (lgamma differences of order 1e7 would lose ~1e-9 absolute).
inline double log_choose(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return kNegInf;
  if (k > n - k) k = n - k;
  if (k == 0) return 0.0;
  if (k <= 32) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
      acc += std::log(static_cast<double>(n - i)) -
             std::log(static_cast<double>(i + 1));
    }
    return acc;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// log(e^a + e^b)
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum(std::span<const double> terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

// A real carried in natural-log domain with an explicit sign.
// sign == 0 forces the -inf magnitude sentinel.
struct LogValue {
  double ln_mag = kNegInf;
  int sign = 0;

  static LogValue zero() { return LogValue{}; }
  static LogValue from_ln(double ln_magnitude, int s = +1) {
    if (s == 0 || ln_magnitude == kNegInf) return LogValue{};
    return LogValue{ln_magnitude, s < 0 ? -1 : +1};
  }
  static LogValue from_value(double x) {
    if (x == 0.0) return LogValue{};
    return LogValue{std::log(std::fabs(x)), x < 0 ? -1 : +1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(ln_mag); }
  bool is_zero() const { return sign == 0; }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.sign == 0 || b.sign == 0) return LogValue{};
    return LogValue{a.ln_mag + b.ln_mag, a.sign * b.sign};
  }
  friend LogValue operator+(const LogValue& a, const LogValue& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.sign == b.sign) return LogValue{log_add(a.ln_mag, b.ln_mag), a.sign};
    // opposite signs: subtract magnitudes
    if (a.ln_mag == b.ln_mag) return LogValue{};
    const LogValue& big = a.ln_mag > b.ln_mag ? a : b;
    const LogValue& small = a.ln_mag > b.ln_mag ? b : a;
    double ln = big.ln_mag + std::log1p(-std::exp(small.ln_mag - big.ln_mag));
    return LogValue{ln, big.sign};
  }
};

}  // namespace gnplab
