#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "problem.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace {

using namespace alphaleak;
using namespace alphaleak::cli;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailure = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

std::vector<Order> parse_alphas(const std::string& text) {
  std::vector<Order> alphas;
  for (const auto& part : split_list(text)) {
    if (part == "inf" || part == "infinity") {
      alphas.push_back(Order::infinity());
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      alphas.push_back(Order(v));
    } catch (const UnsupportedOrder& e) {
      throw ValidationError(std::string("--alphas: ") + e.what());
    } catch (const std::exception&) {
      throw ValidationError("--alphas: cannot parse \"" + part + "\"");
    }
  }
  if (alphas.empty()) throw ValidationError("--alphas: empty list");
  return alphas;
}

std::vector<Measure> parse_measures(const std::string& text) {
  std::vector<Measure> measures;
  for (const auto& part : split_list(text)) {
    auto m = parse_measure(part);
    if (!m) throw ValidationError("--measures: unknown measure \"" + part +
                                  "\"");
    measures.push_back(*m);
  }
  if (measures.empty()) throw ValidationError("--measures: empty list");
  return measures;
}

double parse_resolution(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash));
      const double den = std::stod(text.substr(slash + 1));
      return num / den;
    }
    return std::stod(text);
  } catch (const std::exception&) {
    throw ValidationError("--grid-res: cannot parse \"" + text + "\"");
  }
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  out << text;
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-order information leakage measures for finite priors "
               "and channels"};
  app.require_subcommand(1);

  std::string input_path;
  std::string alphas_text = "0,0.5,1,2,inf";
  std::string measures_text = "renyi_div_y,sibson,pml";
  std::string base_text = "nats";
  std::string output_path;
  std::string grid_res_text = "1/1000";
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::string fault_text;

  auto* measure_cmd =
      app.add_subcommand("measure", "compute leakage measures as CSV");
  measure_cmd->add_option("--input", input_path, "problem JSON document")
      ->required();
  measure_cmd->add_option("--alphas", alphas_text,
                          "comma-separated orders, e.g. 0,0.5,1,2,inf");
  measure_cmd->add_option(
      "--measures", measures_text,
      "subset of renyi_div_y,sibson,arimoto,alpha_leakage,pml,"
      "maximal_leakage");
  measure_cmd->add_option("--base", base_text,
                          "unit for the on-screen table: nats|bits");
  measure_cmd->add_option("--output", output_path,
                          "CSV destination (default: stdout)");

  auto* adversary_cmd = app.add_subcommand(
      "adversary", "print the optimal adversary strategy rows");
  adversary_cmd->add_option("--input", input_path, "problem JSON document")
      ->required();
  adversary_cmd->add_option("--alphas", alphas_text, "comma-separated orders");
  adversary_cmd->add_option("--output", output_path,
                            "destination (default: stdout)");

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the maximization/identity property suites");
  verify_cmd->add_option("--input", input_path, "problem JSON document")
      ->required();
  verify_cmd->add_option("--alphas", alphas_text, "comma-separated orders");
  verify_cmd->add_option("--seed", seed, "seed for the random instances");
  verify_cmd->add_option("--grid-res", grid_res_text,
                         "lattice resolution, 1/K or decimal");
  verify_cmd->add_option("--trials", trials, "number of random instances");
  verify_cmd->add_option("--output", output_path,
                         "report destination (default: stdout)");
  verify_cmd
      ->add_option("--inject-fault", fault_text,
                   "test hook: corrupt one construction (prop1-maximizer)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    const ProblemSpec spec = parse_problem(input_path);

    if (measure_cmd->parsed()) {
      const auto alphas = parse_alphas(alphas_text);
      const auto measures = parse_measures(measures_text);
      if (base_text != "nats" && base_text != "bits") {
        throw ValidationError("--base: must be nats or bits");
      }
      const auto rows = run_measure(spec, alphas, measures);
      if (output_path.empty()) {
        emit_csv(rows, std::cout);
      } else {
        emit_csv(rows, output_path);
        std::cout << render_table(rows, base_text == "bits"
                                            ? UnitBase::kBits
                                            : UnitBase::kNats);
      }
      return kExitOk;
    }

    if (adversary_cmd->parsed()) {
      write_text(render_strategies(spec, parse_alphas(alphas_text)),
                 output_path);
      return kExitOk;
    }

    // verify
    VerifyOptions options;
    if (verify_cmd->count("--alphas") > 0) {
      options.alphas = parse_alphas(alphas_text);
    }
    options.seed = seed;
    options.trials = trials;
    options.grid_resolution = parse_resolution(grid_res_text);
    if (!fault_text.empty()) {
      if (fault_text == "prop1-maximizer") {
        options.fault = FaultInjection::kProp1Maximizer;
      } else {
        throw ValidationError("--inject-fault: unknown fault \"" + fault_text +
                              "\"");
      }
    }
    const VerifyReport report = run_verify(spec, options);
    write_text(report.to_text(), output_path);
    if (!report.all_pass()) {
      for (const auto& line : report.lines) {
        if (!line.pass) {
          std::cerr << "verification failed: " << line.property << "\n";
        }
      }
      return kExitVerificationFailure;
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
