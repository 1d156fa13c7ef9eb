#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alphaleak/order.hpp"
#include "problem.hpp"

namespace alphaleak::cli {

/// Test hook: corrupts one construction inside the verifier so black-box
/// tests can watch the corresponding property fail.
enum class FaultInjection {
  kNone,
  kProp1Maximizer,
};

struct VerifyOptions {
  std::vector<Order> alphas;  // empty = default grid {0, 0.5, 1, 2, inf}
  std::uint64_t seed = 42;
  double grid_resolution = 1e-3;
  std::size_t trials = 100;
  FaultInjection fault = FaultInjection::kNone;
};

struct VerifyLine {
  std::string property;
  bool pass;
  double worst;  // worst measured deviation for the property
};

struct VerifyReport {
  std::vector<VerifyLine> lines;

  bool all_pass() const;
  /// One line per property: PROPERTY<TAB>PASS|FAIL<TAB>worst_deviation.
  std::string to_text() const;
};

/// Runs the maximization/identity/dominance property suites scoped to the
/// given problem plus `trials` seeded random instances.
VerifyReport run_verify(const ProblemSpec& spec, const VerifyOptions& options);

}  // namespace alphaleak::cli
