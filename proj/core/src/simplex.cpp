#include "alphaleak/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace alphaleak {

namespace {

void check_masses(const std::vector<double>& probs, const std::string& what) {
  for (double v : probs) {
    if (std::isnan(v) || v < 0.0) {
      throw NegativeMass(what + ": negative or NaN mass " +
                         std::to_string(v));
    }
  }
}

double checked_total(const std::vector<double>& probs, double tol,
                     const std::string& what) {
  double sum = 0.0;
  for (double v : probs) sum += v;
  if (std::abs(sum - 1.0) > tol) {
    throw NotNormalized(what + ": masses sum to " + std::to_string(sum) +
                        ", outside tolerance " + std::to_string(tol));
  }
  return sum;
}

void check_unique(const std::vector<std::string>& labels,
                  const std::string& what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw DuplicateLabel(what + ": duplicate label \"" + l + "\"");
    }
  }
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n,
                                        const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

Dist Dist::make(std::vector<std::string> labels, std::vector<double> probs,
                double tol) {
  if (labels.size() != probs.size()) {
    throw DimensionMismatch("Dist: " + std::to_string(labels.size()) +
                            " labels vs " + std::to_string(probs.size()) +
                            " masses");
  }
  if (probs.empty()) throw DimensionMismatch("Dist: empty alphabet");
  check_unique(labels, "Dist");
  check_masses(probs, "Dist");
  const double sum = checked_total(probs, tol, "Dist");
  for (double& v : probs) v /= sum;
  return Dist(std::move(labels), std::move(probs));
}

Dist Dist::make(std::vector<double> probs, const std::string& prefix,
                double tol) {
  auto labels = default_labels(probs.size(), prefix);
  return make(std::move(labels), std::move(probs), tol);
}

Dist Dist::uniform(std::size_t n, const std::string& prefix) {
  return make(std::vector<double>(n, 1.0 / static_cast<double>(n)), prefix);
}

std::optional<std::size_t> Dist::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

double Dist::mass(const EventSubset& subset) const {
  double total = 0.0;
  for (const auto& m : subset.members()) {
    auto idx = index_of(m);
    if (!idx) {
      throw DimensionMismatch("EventSubset member \"" + m +
                              "\" is not in the alphabet");
    }
    total += probs_[*idx];
  }
  return total;
}

EventSubset EventSubset::of(std::vector<std::string> members) {
  if (members.empty()) {
    throw EmptyConditioningSet("EventSubset: empty member set");
  }
  check_unique(members, "EventSubset");
  return EventSubset(std::move(members));
}

EventSubset EventSubset::of(std::initializer_list<std::string> members) {
  return of(std::vector<std::string>(members));
}

bool EventSubset::contains(const std::string& label) const {
  return std::find(members_.begin(), members_.end(), label) != members_.end();
}

Channel Channel::make(std::vector<std::string> input_labels,
                      std::vector<std::string> output_labels,
                      std::vector<std::vector<double>> rows, double tol) {
  if (input_labels.size() != rows.size()) {
    throw DimensionMismatch("Channel: " + std::to_string(input_labels.size()) +
                            " input labels vs " + std::to_string(rows.size()) +
                            " rows");
  }
  if (rows.empty()) throw DimensionMismatch("Channel: no rows");
  check_unique(input_labels, "Channel inputs");
  check_unique(output_labels, "Channel outputs");
  for (std::size_t x = 0; x < rows.size(); ++x) {
    auto& row = rows[x];
    const std::string what = "Channel row " + std::to_string(x);
    if (row.size() != output_labels.size()) {
      throw DimensionMismatch(what + ": " + std::to_string(row.size()) +
                              " entries vs " +
                              std::to_string(output_labels.size()) +
                              " output labels");
    }
    check_masses(row, what);
    const double sum = checked_total(row, tol, what);
    for (double& v : row) v /= sum;
  }
  return Channel(std::move(input_labels), std::move(output_labels),
                 std::move(rows));
}

Channel Channel::make(std::vector<std::vector<double>> rows, double tol) {
  if (rows.empty()) throw DimensionMismatch("Channel: no rows");
  auto in = default_labels(rows.size(), "x");
  auto out = default_labels(rows.front().size(), "y");
  return make(std::move(in), std::move(out), std::move(rows), tol);
}

Channel Channel::identity(std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return make(std::move(rows));
}

Channel Channel::identity(std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return make(labels, labels, std::move(rows));
}

Dist Channel::row_dist(std::size_t x) const {
  return Dist::make(output_labels_, rows_[x]);
}

std::optional<std::size_t> Channel::output_index(
    const std::string& label) const {
  auto it = std::find(output_labels_.begin(), output_labels_.end(), label);
  if (it == output_labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - output_labels_.begin());
}

Joint Joint::make(std::vector<std::string> x_labels,
                  std::vector<std::string> y_labels,
                  std::vector<std::vector<double>> mass, double tol) {
  if (x_labels.size() != mass.size()) {
    throw DimensionMismatch("Joint: x labels vs rows");
  }
  check_unique(x_labels, "Joint x");
  check_unique(y_labels, "Joint y");
  double total = 0.0;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    if (mass[x].size() != y_labels.size()) {
      throw DimensionMismatch("Joint row " + std::to_string(x) +
                              ": entries vs y labels");
    }
    check_masses(mass[x], "Joint row " + std::to_string(x));
    for (double v : mass[x]) total += v;
  }
  if (std::abs(total - 1.0) > tol) {
    throw NotNormalized("Joint: total mass " + std::to_string(total));
  }
  for (auto& row : mass) {
    for (double& v : row) v /= total;
  }
  return Joint(std::move(x_labels), std::move(y_labels), std::move(mass));
}

Dist Joint::x_marginal() const {
  std::vector<double> probs(num_x(), 0.0);
  for (std::size_t x = 0; x < num_x(); ++x) {
    for (std::size_t y = 0; y < num_y(); ++y) probs[x] += mass_[x][y];
  }
  return Dist::make(x_labels_, std::move(probs));
}

Dist Joint::y_marginal() const {
  std::vector<double> probs(num_y(), 0.0);
  for (std::size_t x = 0; x < num_x(); ++x) {
    for (std::size_t y = 0; y < num_y(); ++y) probs[y] += mass_[x][y];
  }
  return Dist::make(y_labels_, std::move(probs));
}

namespace {

void check_pair(const Dist& prior, const Channel& channel) {
  if (prior.labels() != channel.input_labels()) {
    throw DimensionMismatch(
        "prior alphabet does not match the channel input alphabet");
  }
}

}  // namespace

Dist output_marginal(const Dist& prior, const Channel& channel) {
  check_pair(prior, channel);
  std::vector<double> probs(channel.num_outputs(), 0.0);
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    const double px = prior.prob(x);
    if (px == 0.0) continue;
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      probs[y] += px * channel.prob(x, y);
    }
  }
  return Dist::make(channel.output_labels(), std::move(probs));
}

Dist posterior(const Dist& prior, const Channel& channel,
               std::size_t y_index) {
  check_pair(prior, channel);
  if (y_index >= channel.num_outputs()) {
    throw DimensionMismatch("posterior: output index out of range");
  }
  double py = 0.0;
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    py += prior.prob(x) * channel.prob(x, y_index);
  }
  if (py <= 0.0) {
    throw ZeroProbabilityOutput("posterior: P_Y(" +
                                channel.output_labels()[y_index] +
                                ") = 0");
  }
  std::vector<double> probs(channel.num_inputs());
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    probs[x] = prior.prob(x) * channel.prob(x, y_index) / py;
  }
  return Dist::make(prior.labels(), std::move(probs));
}

Dist posterior(const Dist& prior, const Channel& channel,
               const std::string& y_label) {
  auto idx = channel.output_index(y_label);
  if (!idx) {
    throw DimensionMismatch("posterior: unknown output label \"" + y_label +
                            "\"");
  }
  return posterior(prior, channel, *idx);
}

Joint joint(const Dist& prior, const Channel& channel) {
  check_pair(prior, channel);
  std::vector<std::vector<double>> mass(channel.num_inputs());
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    mass[x].resize(channel.num_outputs());
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      mass[x][y] = prior.prob(x) * channel.prob(x, y);
    }
  }
  return Joint::make(prior.labels(), channel.output_labels(), std::move(mass));
}

Dist scaled_dist(const Dist& p, const Order& alpha) {
  if (alpha.is_infinite()) {
    throw UnsupportedOrder(
        "scaled_dist: alpha = inf is excluded; the tilt limit is uniform "
        "over argmax and not a scaled distribution");
  }
  if (alpha.is_one()) return p;
  if (alpha.is_zero()) {
    std::vector<double> probs(p.size(), 0.0);
    std::size_t support_size = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) ++support_size;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) probs[i] = 1.0 / static_cast<double>(support_size);
    }
    return Dist::make(p.labels(), std::move(probs));
  }
  // Log-space softmax of alpha * log p keeps large alpha from overflowing.
  const double a = alpha.value();
  std::vector<double> logw(p.size());
  double max_logw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    logw[i] = p.prob(i) > 0.0 ? a * std::log(p.prob(i))
                              : -std::numeric_limits<double>::infinity();
    max_logw = std::max(max_logw, logw[i]);
  }
  std::vector<double> probs(p.size(), 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::isinf(logw[i])) continue;
    probs[i] = std::exp(logw[i] - max_logw);
    z += probs[i];
  }
  for (double& v : probs) v /= z;
  return Dist::make(p.labels(), std::move(probs), 1e-6);
}

EventSubset support(const Dist& p) {
  std::vector<std::string> members;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.prob(i) > 0.0) members.push_back(p.labels()[i]);
  }
  return EventSubset::of(std::move(members));
}

Channel compose(const Channel& first, const Channel& second) {
  if (first.output_labels() != second.input_labels()) {
    throw DimensionMismatch(
        "compose: first channel outputs do not match second channel inputs");
  }
  std::vector<std::vector<double>> rows(first.num_inputs());
  for (std::size_t x = 0; x < first.num_inputs(); ++x) {
    rows[x].resize(second.num_outputs(), 0.0);
    for (std::size_t y = 0; y < first.num_outputs(); ++y) {
      const double pyx = first.prob(x, y);
      if (pyx == 0.0) continue;
      for (std::size_t z = 0; z < second.num_outputs(); ++z) {
        rows[x][z] += pyx * second.prob(y, z);
      }
    }
  }
  return Channel::make(first.input_labels(), second.output_labels(),
                       std::move(rows));
}

}  // namespace alphaleak
