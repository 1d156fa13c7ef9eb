#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace alphaleak::cli {

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::kRenyiDivY: return "renyi_div_y";
    case Measure::kSibson: return "sibson";
    case Measure::kArimoto: return "arimoto";
    case Measure::kAlphaLeakage: return "alpha_leakage";
    case Measure::kPml: return "pml";
    case Measure::kMaximalLeakage: return "maximal_leakage";
  }
  return "?";
}

std::optional<Measure> parse_measure(const std::string& name) {
  for (Measure m : {Measure::kRenyiDivY, Measure::kSibson, Measure::kArimoto,
                    Measure::kAlphaLeakage, Measure::kPml,
                    Measure::kMaximalLeakage}) {
    if (measure_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<Order> sorted_unique(std::vector<Order> alphas) {
  std::sort(alphas.begin(), alphas.end(),
            [](const Order& a, const Order& b) { return a.value() < b.value(); });
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  return alphas;
}

ReportRow make_row(const std::string& alpha, Measure m, const std::string& y,
                   const GainValue& v) {
  return ReportRow{alpha, m, y, v.nats, v.nats / std::numbers::ln2};
}

}  // namespace

std::vector<ReportRow> run_measure(const ProblemSpec& spec,
                                   const std::vector<Order>& alphas,
                                   const std::vector<Measure>& measures) {
  if (alphas.empty()) {
    throw ValidationError("run_measure: the alpha list is empty");
  }
  const std::vector<Order> grid = sorted_unique(alphas);
  const Dist prior = spec.x_prior();
  const Channel& channel = spec.channel;
  const Dist py = output_marginal(prior, channel);

  auto requested = [&](Measure m) {
    return std::find(measures.begin(), measures.end(), m) != measures.end();
  };

  std::vector<ReportRow> rows;

  if (requested(Measure::kRenyiDivY)) {
    for (const Order& a : grid) {
      for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
        if (py.prob(y) == 0.0) continue;
        rows.push_back(make_row(a.str(), Measure::kRenyiDivY,
                                channel.output_labels()[y],
                                y_elementary_leakage(prior, channel, y, a)));
      }
    }
  }
  if (requested(Measure::kSibson)) {
    for (const Order& a : grid) {
      rows.push_back(
          make_row(a.str(), Measure::kSibson, "", sibson_mi(prior, channel, a)));
    }
  }
  if (requested(Measure::kArimoto)) {
    for (const Order& a : grid) {
      rows.push_back(make_row(a.str(), Measure::kArimoto, "",
                              arimoto_mi(prior, channel, a)));
    }
  }
  if (requested(Measure::kAlphaLeakage)) {
    for (const Order& a : grid) {
      rows.push_back(make_row(a.str(), Measure::kAlphaLeakage, "",
                              alpha_leakage(prior, channel, a)));
    }
  }
  if (requested(Measure::kPml)) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      if (py.prob(y) == 0.0) continue;
      rows.push_back(make_row("inf", Measure::kPml,
                              channel.output_labels()[y],
                              pointwise_maximal_leakage(prior, channel, y)));
    }
  }
  if (requested(Measure::kMaximalLeakage)) {
    rows.push_back(make_row("inf", Measure::kMaximalLeakage, "",
                            sibson_mi(prior, channel, Order::infinity())));
  }
  return rows;
}

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "alpha,measure,y,value_nats,value_bits\n";
  for (const auto& row : rows) {
    out << row.alpha << ',' << measure_name(row.measure) << ',' << row.y << ','
        << format_value(row.value_nats) << ',' << format_value(row.value_bits)
        << '\n';
  }
  if (!out) throw IoError("emit_csv: write failure");
}

void emit_csv(const std::vector<ReportRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  emit_csv(rows, out);
}

std::string render_table(const std::vector<ReportRow>& rows, UnitBase base) {
  std::ostringstream out;
  const char* unit = base == UnitBase::kNats ? "nats" : "bits";
  out << "alpha      measure            y        value (" << unit << ")\n";
  for (const auto& row : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %-18s %-8s %s\n",
                  row.alpha.c_str(), measure_name(row.measure).c_str(),
                  row.y.c_str(),
                  format_value(base == UnitBase::kNats ? row.value_nats
                                                       : row.value_bits)
                      .c_str());
    out << line;
  }
  return out.str();
}

std::string render_strategies(const ProblemSpec& spec,
                              const std::vector<Order>& alphas) {
  if (alphas.empty()) {
    throw ValidationError("adversary: the alpha list is empty");
  }
  const Dist prior = spec.x_prior();
  std::ostringstream out;
  out << "alpha,y,x,prob\n";
  for (const Order& a : sorted_unique(alphas)) {
    const Channel strategy = optimal_strategy(prior, spec.channel, a);
    for (std::size_t y = 0; y < strategy.num_inputs(); ++y) {
      for (std::size_t x = 0; x < strategy.num_outputs(); ++x) {
        out << a.str() << ',' << strategy.input_labels()[y] << ','
            << strategy.output_labels()[x] << ','
            << format_value(strategy.prob(y, x)) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace alphaleak::cli
