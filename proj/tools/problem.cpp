#include "problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace alphaleak::cli {

namespace {

using nlohmann::json;

std::vector<double> number_array(const json& node, const std::string& field) {
  if (!node.is_array()) {
    throw ParseError("field \"" + field + "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) {
      throw ParseError("field \"" + field + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> matrix(const json& node,
                                        const std::string& field) {
  if (!node.is_array() || node.empty()) {
    throw ParseError("field \"" + field + "\" must be a non-empty array of "
                     "rows");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    rows.push_back(
        number_array(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return rows;
}

std::vector<std::string> string_array(const json& node,
                                      const std::string& field) {
  if (!node.is_array()) {
    throw ParseError("field \"" + field + "\" must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& v : node) {
    if (!v.is_string()) {
      throw ParseError("field \"" + field + "\" must contain only strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (!doc.contains("prior")) throw ParseError("missing field \"prior\"");
  if (!doc.contains("channel")) throw ParseError("missing field \"channel\"");

  const auto prior_probs = number_array(doc["prior"], "prior");
  const auto channel_rows = matrix(doc["channel"], "channel");

  std::vector<std::string> labels_x =
      doc.contains("labels_x") ? string_array(doc["labels_x"], "labels_x")
                               : default_labels(channel_rows.size(), "x");
  std::vector<std::string> labels_y =
      doc.contains("labels_y")
          ? string_array(doc["labels_y"], "labels_y")
          : default_labels(channel_rows.front().size(), "y");

  Channel channel = [&] {
    try {
      return Channel::make(labels_x, labels_y, channel_rows);
    } catch (const Error& e) {
      throw ValidationError(std::string("channel: ") + e.what());
    }
  }();

  std::optional<Channel> attr_channel;
  Dist prior = [&]() -> Dist {
    if (doc.contains("attr_channel")) {
      const auto attr_rows = matrix(doc["attr_channel"], "attr_channel");
      try {
        attr_channel = Channel::make(default_labels(attr_rows.size(), "u"),
                                     labels_x, attr_rows);
      } catch (const Error& e) {
        throw ValidationError(std::string("attr_channel: ") + e.what());
      }
      try {
        return Dist::make(default_labels(attr_rows.size(), "u"), prior_probs);
      } catch (const Error& e) {
        throw ValidationError(std::string("prior: ") + e.what());
      }
    }
    try {
      return Dist::make(labels_x, prior_probs);
    } catch (const Error& e) {
      throw ValidationError(std::string("prior: ") + e.what());
    }
  }();

  if (attr_channel && prior.size() != attr_channel->num_inputs()) {
    throw ValidationError("prior: length " + std::to_string(prior.size()) +
                          " does not match attr_channel row count " +
                          std::to_string(attr_channel->num_inputs()));
  }

  std::string name = "problem";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw ParseError("field \"name\" must be a string");
    }
    name = doc["name"].get<std::string>();
  }

  return ProblemSpec{std::move(prior), std::move(channel),
                     std::move(attr_channel), std::move(name)};
}

ProblemSpec parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading \"" + path + "\"");
  return parse_problem_text(buf.str());
}

std::string emit_problem(const ProblemSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["prior"] = spec.prior.probs();
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < spec.channel.num_inputs(); ++x) {
    rows.emplace_back(spec.channel.row(x).begin(), spec.channel.row(x).end());
  }
  doc["channel"] = rows;
  doc["labels_x"] = spec.channel.input_labels();
  doc["labels_y"] = spec.channel.output_labels();
  if (spec.attr_channel) {
    std::vector<std::vector<double>> attr_rows;
    for (std::size_t u = 0; u < spec.attr_channel->num_inputs(); ++u) {
      attr_rows.emplace_back(spec.attr_channel->row(u).begin(),
                             spec.attr_channel->row(u).end());
    }
    doc["attr_channel"] = attr_rows;
  }
  return doc.dump(2);
}

}  // namespace alphaleak::cli
