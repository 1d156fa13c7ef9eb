#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "alphaleak/leakage.hpp"
#include "problem.hpp"

namespace alphaleak::cli {

/// Report measures, in their canonical (and sort) order. pml and
/// maximal_leakage are pinned to alpha = inf and emitted once regardless
/// of the sweep.
enum class Measure {
  kRenyiDivY,
  kSibson,
  kArimoto,
  kAlphaLeakage,
  kPml,
  kMaximalLeakage,
};

std::string measure_name(Measure m);
std::optional<Measure> parse_measure(const std::string& name);

enum class UnitBase { kNats, kBits };

struct ReportRow {
  std::string alpha;  // "inf" or a decimal literal
  Measure measure;
  std::string y;      // empty for aggregate measures
  double value_nats;
  double value_bits;
};

/// Runs the requested measures on the X -> Y link of the problem for every
/// order in `alphas`. Rows come out sorted by (measure, alpha, y) and are
/// identical across runs for identical inputs.
std::vector<ReportRow> run_measure(const ProblemSpec& spec,
                                   const std::vector<Order>& alphas,
                                   const std::vector<Measure>& measures);

/// `value,12-significant-digit` CSV with header
/// alpha,measure,y,value_nats,value_bits. Byte-identical across runs.
void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ReportRow>& rows, const std::string& path);

/// Human-readable table of the rows in one unit; used when the CSV goes to
/// a file and the terminal wants a summary.
std::string render_table(const std::vector<ReportRow>& rows, UnitBase base);

/// CSV rows `alpha,y,x,prob` describing the optimal adversary strategy for
/// each order.
std::string render_strategies(const ProblemSpec& spec,
                              const std::vector<Order>& alphas);

/// 12-significant-digit rendering shared by all deterministic outputs;
/// "inf"/"-inf" verbatim, negative zero normalized.
std::string format_value(double v);

}  // namespace alphaleak::cli
