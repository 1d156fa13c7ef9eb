#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

// Shared log-space primitives. Every information measure in the library is
// assembled from these so that orders up to a few hundred stay overflow-free.

namespace alphaleak::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline double log_or_neg_inf(double p) {
  return p > 0.0 ? std::log(p) : kNegInf;
}

/// Max-shifted log(sum exp(t_i)). A +inf term dominates; -inf terms drop
/// out; an empty or all-(-inf) list gives -inf.
inline double log_sum_exp(std::span<const double> terms) {
  double max_term = kNegInf;
  for (double t : terms) {
    if (t == kPosInf) return kPosInf;
    max_term = std::max(max_term, t);
  }
  if (max_term == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) {
    if (t == kNegInf) continue;
    sum += std::exp(t - max_term);
  }
  return max_term + std::log(sum);
}

/// Accumulator flavor of log_sum_exp for loops that build terms in place.
class LogSumExpAccumulator {
 public:
  void add(double term) { terms_.push_back(term); }
  bool empty() const { return terms_.empty(); }
  double result() const { return log_sum_exp(terms_); }

 private:
  std::vector<double> terms_;
};

}  // namespace alphaleak::detail
