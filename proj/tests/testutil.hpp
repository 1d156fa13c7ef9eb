#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alphaleak/oracle.hpp"
#include "alphaleak/simplex.hpp"

namespace alphaleak::test {

/// Binary symmetric channel with crossover eps.
inline Channel bsc(double eps) {
  return Channel::make({{1.0 - eps, eps}, {eps, 1.0 - eps}});
}

/// Seeded full-support distributions and channels for property tests.
class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : sampler_(seed) {}

  Dist dist(std::size_t n, const std::string& prefix = "x") {
    return Dist::make(default_labels(n, prefix), sampler_.next_point(n), 1e-6);
  }

  Dist dist_with_labels(const std::vector<std::string>& labels) {
    return Dist::make(labels, sampler_.next_point(labels.size()), 1e-6);
  }

  Channel channel(std::size_t n_in, std::size_t n_out,
                  const std::string& in_prefix = "x",
                  const std::string& out_prefix = "y") {
    std::vector<std::vector<double>> rows;
    rows.reserve(n_in);
    for (std::size_t i = 0; i < n_in; ++i) {
      rows.push_back(sampler_.next_point(n_out));
    }
    return Channel::make(default_labels(n_in, in_prefix),
                         default_labels(n_out, out_prefix), std::move(rows),
                         1e-6);
  }

  double uniform() { return sampler_.next_uniform(); }

 private:
  oracle::SimplexSampler sampler_;
};

/// The order grid used across invariant tests.
inline std::vector<Order> order_grid() {
  return {Order(0.0), Order(0.5), Order(0.9),      Order(1.0),
          Order(1.1), Order(2.0), Order(5.0),      Order::infinity()};
}

inline std::vector<Order> finite_positive_grid() {
  return {Order(0.3), Order(0.5), Order(0.9), Order(1.0),
          Order(1.1), Order(2.0), Order(5.0)};
}

}  // namespace alphaleak::test
