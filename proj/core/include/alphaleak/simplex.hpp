#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphaleak/errors.hpp"
#include "alphaleak/order.hpp"

namespace alphaleak {

class EventSubset;

/// Construction tolerance shared by all simplex types: the raw masses must
/// sum to 1 within this relative tolerance, after which they are
/// renormalized exactly so downstream identities see clean inputs.
constexpr double kDefaultNormTol = 1e-9;

/// Labels "x0", "x1", ... used when the caller does not supply an alphabet.
std::vector<std::string> default_labels(std::size_t n,
                                        const std::string& prefix);

/// A finite probability distribution over a labeled alphabet.
///
/// Invariants: entries are non-negative, sum to one (exactly, after
/// construction), and labels are unique. Immutable after construction.
class Dist {
 public:
  static Dist make(std::vector<std::string> labels, std::vector<double> probs,
                   double tol = kDefaultNormTol);
  /// Auto-labels the alphabet with the given prefix.
  static Dist make(std::vector<double> probs, const std::string& prefix = "x",
                   double tol = kDefaultNormTol);
  static Dist uniform(std::size_t n, const std::string& prefix = "x");

  std::size_t size() const { return probs_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Total mass of the member symbols; members must belong to the alphabet.
  double mass(const EventSubset& subset) const;

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.labels_ == b.labels_ && a.probs_ == b.probs_;
  }

 private:
  Dist(std::vector<std::string> labels, std::vector<double> probs)
      : labels_(std::move(labels)), probs_(std::move(probs)) {}

  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

/// A non-empty set of symbols from some distribution's alphabet.
class EventSubset {
 public:
  static EventSubset of(std::vector<std::string> members);
  static EventSubset of(std::initializer_list<std::string> members);

  const std::vector<std::string>& members() const { return members_; }
  bool contains(const std::string& label) const;

 private:
  explicit EventSubset(std::vector<std::string> members)
      : members_(std::move(members)) {}

  std::vector<std::string> members_;
};

/// A row-stochastic matrix: one output distribution per input symbol.
class Channel {
 public:
  static Channel make(std::vector<std::string> input_labels,
                      std::vector<std::string> output_labels,
                      std::vector<std::vector<double>> rows,
                      double tol = kDefaultNormTol);
  /// Rows auto-labeled x0..x(n-1), columns y0..y(m-1).
  static Channel make(std::vector<std::vector<double>> rows,
                      double tol = kDefaultNormTol);
  /// Noiseless channel mapping xi to yi.
  static Channel identity(std::size_t n);
  /// Noiseless channel with the same labels on both sides.
  static Channel identity(std::vector<std::string> labels);

  std::size_t num_inputs() const { return rows_.size(); }
  std::size_t num_outputs() const { return output_labels_.size(); }
  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const {
    return output_labels_;
  }
  /// P(y | x) by index.
  double prob(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  std::span<const double> row(std::size_t x) const { return rows_[x]; }
  Dist row_dist(std::size_t x) const;
  std::optional<std::size_t> output_index(const std::string& label) const;

  friend bool operator==(const Channel& a, const Channel& b) {
    return a.input_labels_ == b.input_labels_ &&
           a.output_labels_ == b.output_labels_ && a.rows_ == b.rows_;
  }

 private:
  Channel(std::vector<std::string> in, std::vector<std::string> out,
          std::vector<std::vector<double>> rows)
      : input_labels_(std::move(in)),
        output_labels_(std::move(out)),
        rows_(std::move(rows)) {}

  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
  std::vector<std::vector<double>> rows_;
};

/// A joint distribution over a product alphabet X x Y.
class Joint {
 public:
  static Joint make(std::vector<std::string> x_labels,
                    std::vector<std::string> y_labels,
                    std::vector<std::vector<double>> mass,
                    double tol = kDefaultNormTol);

  std::size_t num_x() const { return mass_.size(); }
  std::size_t num_y() const { return y_labels_.size(); }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  double mass(std::size_t x, std::size_t y) const { return mass_[x][y]; }

  Dist x_marginal() const;
  Dist y_marginal() const;

 private:
  Joint(std::vector<std::string> xl, std::vector<std::string> yl,
        std::vector<std::vector<double>> mass)
      : x_labels_(std::move(xl)), y_labels_(std::move(yl)),
        mass_(std::move(mass)) {}

  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  std::vector<std::vector<double>> mass_;
};

/// P_Y(y) = sum_x P(y|x) P(x). Prior labels must equal the channel inputs.
Dist output_marginal(const Dist& prior, const Channel& channel);

/// Bayes posterior P_{X|Y=y}; throws ZeroProbabilityOutput when P_Y(y) = 0.
Dist posterior(const Dist& prior, const Channel& channel, std::size_t y_index);
Dist posterior(const Dist& prior, const Channel& channel,
               const std::string& y_label);

/// Joint mass(x, y) = P(y|x) P(x).
Joint joint(const Dist& prior, const Channel& channel);

/// The alpha-tilted distribution p^alpha / sum p^alpha. Finite alpha only:
/// alpha = 1 returns p unchanged, alpha = 0 returns uniform over supp(p),
/// and alpha = inf is rejected (its limit, uniform over argmax, is not a
/// tilt and callers that want it should build it explicitly).
Dist scaled_dist(const Dist& p, const Order& alpha);

/// Exact support {x : p(x) > 0}, no tolerance.
EventSubset support(const Dist& p);

/// Cascade composition: returns P_{Z|X} from P_{Y|X} followed by P_{Z|Y}.
Channel compose(const Channel& first, const Channel& second);

}  // namespace alphaleak
