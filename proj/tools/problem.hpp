#pragma once

#include <optional>
#include <string>

#include "alphaleak/simplex.hpp"

namespace alphaleak::cli {

/// Malformed problem document (bad JSON, wrong field types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid document whose contents violate an invariant; the
/// message names the offending field.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// One analysis instance. `prior` is the distribution of the channel
/// input X; when attr_channel (P_{X|U}) is present, `prior` is instead the
/// attribute prior P_U and the X prior is derived.
struct ProblemSpec {
  Dist prior;
  Channel channel;  // P_{Y|X}
  std::optional<Channel> attr_channel;
  std::string name;

  /// The prior on the channel input: `prior` itself, or P_U pushed
  /// through the attribute channel.
  Dist x_prior() const {
    return attr_channel ? output_marginal(prior, *attr_channel) : prior;
  }

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.prior == b.prior && a.channel == b.channel &&
           a.attr_channel == b.attr_channel && a.name == b.name;
  }
};

/// Reads a JSON problem document:
///
///   {
///     "name": "bsc-uniform",                        (optional)
///     "prior": [0.5, 0.5],
///     "channel": [[0.75, 0.25], [0.25, 0.75]],      (row per input)
///     "attr_channel": [[...], ...],                 (optional, P_{X|U})
///     "labels_x": ["a", "b"],                       (optional)
///     "labels_y": ["l", "r"]                        (optional)
///   }
ProblemSpec parse_problem(const std::string& path);
ProblemSpec parse_problem_text(const std::string& text);

/// Serializes a ProblemSpec so that parse_problem_text(emit_problem(s)) == s.
std::string emit_problem(const ProblemSpec& spec);

}  // namespace alphaleak::cli
