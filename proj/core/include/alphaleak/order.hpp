#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "alphaleak/errors.hpp"

namespace alphaleak {

/// The order alpha of a Renyi-type measure: a value in [0, inf].
///
/// Orders within kNearOneWindow of 1 dispatch to the exact alpha = 1
/// branch everywhere; the 1/(alpha-1) prefactors amplify rounding
/// catastrophically inside that window.
class Order {
 public:
  static constexpr double kNearOneWindow = 1e-6;

  explicit Order(double value) : value_(value) {
    if (std::isnan(value_) || value_ < 0.0) {
      throw UnsupportedOrder("order must be a real in [0, inf], got " +
                             std::to_string(value));
    }
  }

  static Order infinity() {
    return Order(std::numeric_limits<double>::infinity());
  }

  double value() const { return value_; }
  bool is_infinite() const { return std::isinf(value_); }
  bool is_zero() const { return value_ == 0.0; }
  bool is_one() const {
    return !is_infinite() && std::abs(value_ - 1.0) < kNearOneWindow;
  }
  /// Finite, not 0, and outside the alpha = 1 window.
  bool is_generic() const {
    return !is_infinite() && !is_zero() && !is_one();
  }

  /// "inf" for the infinite order, otherwise the value with 12 significant
  /// digits; matches the CLI's alpha column format.
  std::string str() const {
    if (is_infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value_);
    return buf;
  }

  friend bool operator==(const Order& a, const Order& b) {
    return a.value_ == b.value_;
  }

 private:
  double value_;
};

}  // namespace alphaleak
