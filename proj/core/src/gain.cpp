#include "alphaleak/gain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "logspace.hpp"

namespace alphaleak {

using detail::kNegInf;
using detail::kPosInf;
using detail::log_or_neg_inf;
using detail::LogSumExpAccumulator;

double GainValue::bits() const { return nats / std::numbers::ln2; }

GainValue elementary_gain(double p, double q) {
  if (p < 0.0 || q < 0.0) {
    throw NegativeMass("elementary_gain: negative probability");
  }
  if (p == 0.0 && q == 0.0) return {0.0};
  if (q == 0.0) {
    throw AbsoluteContinuityViolation(
        "elementary_gain: p > 0 where q = 0, log(p/q) undefined");
  }
  if (p == 0.0) return {kNegInf};
  return {std::log(p) - std::log(q)};
}

GainValue kn_mean(std::span<const GainValue> values, const Dist& weights,
                  const KNMeanSpec& spec) {
  if (values.size() != weights.size()) {
    throw DimensionMismatch("kn_mean: values vs weights length");
  }
  const Order& alpha = spec.alpha;
  if (spec.kind == KNMeanSpec::Kind::kFTilde && alpha.is_zero()) {
    throw InvalidSpec(
        "kn_mean: the f~-mean degenerates at alpha = 0; use the min branch "
        "of ftilde_gain");
  }

  if (alpha.is_one()) {
    // Limit of both kinds: the weighted arithmetic mean. A +inf value with
    // positive weight dominates any -inf contribution.
    double sum = 0.0;
    bool saw_neg_inf = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double w = weights.prob(i);
      if (w == 0.0) continue;
      const double v = values[i].nats;
      if (v == kPosInf) return {kPosInf};
      if (v == kNegInf) {
        saw_neg_inf = true;
        continue;
      }
      sum += w * v;
    }
    return {saw_neg_inf ? kNegInf : sum};
  }

  if (spec.kind == KNMeanSpec::Kind::kF && alpha.is_infinite()) {
    // f-mean -> max over the weight support.
    double best = kNegInf;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (weights.prob(i) > 0.0) best = std::max(best, values[i].nats);
    }
    return {best};
  }

  // exp-coefficient of the mean; the f~ kind at alpha = inf has limit 1.
  double c;
  if (spec.kind == KNMeanSpec::Kind::kF) {
    c = alpha.value() - 1.0;
  } else {
    c = alpha.is_infinite() ? 1.0 : (alpha.value() - 1.0) / alpha.value();
  }

  LogSumExpAccumulator acc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weights.prob(i);
    if (w == 0.0) continue;
    const double v = values[i].nats;
    double cv;
    if (std::isinf(v)) {
      cv = (c > 0.0) == (v > 0.0) ? kPosInf : kNegInf;
    } else {
      cv = c * v;
    }
    acc.add(std::log(w) + cv);
  }
  return {acc.result() / c};
}

GainValue renyi_divergence(const Dist& p, const Dist& q, const Order& alpha) {
  if (p.labels() != q.labels()) {
    throw DimensionMismatch("renyi_divergence: alphabets differ");
  }

  if (alpha.is_one()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double pi = p.prob(i);
      if (pi == 0.0) continue;
      if (q.prob(i) == 0.0) return {kPosInf};
      sum += pi * (std::log(pi) - std::log(q.prob(i)));
    }
    return {sum};
  }

  if (alpha.is_zero()) {
    double q_mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) q_mass += q.prob(i);
    }
    return {-log_or_neg_inf(q_mass)};
  }

  if (alpha.is_infinite()) {
    double best = kNegInf;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double pi = p.prob(i);
      if (pi == 0.0) continue;
      if (q.prob(i) == 0.0) return {kPosInf};
      best = std::max(best, std::log(pi) - std::log(q.prob(i)));
    }
    return {best};
  }

  // sum p^alpha q^(1-alpha) in log space, 0^a 0^(1-a) := 0.
  const double a = alpha.value();
  LogSumExpAccumulator acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.prob(i);
    if (pi == 0.0) continue;
    acc.add(a * std::log(pi) + (1.0 - a) * log_or_neg_inf(q.prob(i)));
  }
  return {acc.result() / (a - 1.0)};
}

namespace {

// Shared body of ftilde_gain and its subset form: the f~-mean of
// elementary gains log(phi/q) over the given indices, with frequency
// weights p(x)/p_total.
GainValue ftilde_over(const Dist& phi, const Dist& q, const Dist& p,
                      std::span<const std::size_t> indices, double p_total,
                      const Order& alpha) {
  for (std::size_t i : indices) {
    if (p.prob(i) > 0.0 && q.prob(i) == 0.0) {
      throw AbsoluteContinuityViolation(
          "ftilde_gain: reference q vanishes on a frequency-positive symbol "
          "\"" + p.labels()[i] + "\"");
    }
  }

  if (alpha.is_zero()) {
    double worst = kPosInf;
    for (std::size_t i : indices) {
      if (p.prob(i) == 0.0) continue;
      worst = std::min(worst,
                       log_or_neg_inf(phi.prob(i)) - std::log(q.prob(i)));
    }
    return {worst};
  }

  if (alpha.is_one()) {
    double sum = 0.0;
    bool saw_neg_inf = false;
    for (std::size_t i : indices) {
      const double w = p.prob(i) / p_total;
      if (w == 0.0) continue;
      if (phi.prob(i) == 0.0) {
        saw_neg_inf = true;
        continue;
      }
      sum += w * (std::log(phi.prob(i)) - std::log(q.prob(i)));
    }
    return {saw_neg_inf ? kNegInf : sum};
  }

  const double a = alpha.value();
  const double c = alpha.is_infinite() ? 1.0 : (a - 1.0) / a;
  LogSumExpAccumulator acc;
  for (std::size_t i : indices) {
    const double w = p.prob(i) / p_total;
    if (w == 0.0) continue;
    const double gain = log_or_neg_inf(phi.prob(i)) - std::log(q.prob(i));
    acc.add(std::log(w) + (gain == kNegInf ? (c > 0.0 ? kNegInf : kPosInf)
                                           : c * gain));
  }
  return {acc.result() / c};
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

void check_same_alphabet(const Dist& phi, const Dist& q, const Dist& p) {
  if (phi.labels() != q.labels() || q.labels() != p.labels()) {
    throw DimensionMismatch("ftilde_gain: alphabets differ");
  }
}

}  // namespace

GainValue ftilde_gain(const Dist& phi, const Dist& q, const Dist& p,
                      const Order& alpha) {
  check_same_alphabet(phi, q, p);
  return ftilde_over(phi, q, p, all_indices(p.size()), 1.0, alpha);
}

GainValue ftilde_gain_subset(const Dist& phi, const Dist& q, const Dist& p,
                             const EventSubset& b, const Order& alpha) {
  check_same_alphabet(phi, q, p);
  std::vector<std::size_t> indices;
  for (const auto& label : b.members()) {
    auto idx = p.index_of(label);
    if (!idx) {
      throw DimensionMismatch("ftilde_gain_subset: member \"" + label +
                              "\" is not in the alphabet");
    }
    indices.push_back(*idx);
  }
  double p_total = 0.0;
  for (std::size_t i : indices) p_total += p.prob(i);
  if (p_total <= 0.0) {
    throw EmptyConditioningSet("ftilde_gain_subset: p(B) = 0");
  }
  return ftilde_over(phi, q, p, indices, p_total, alpha);
}

GainValue renyi_divergence_subset(const Dist& p, const Dist& q,
                                  const EventSubset& b, const Order& alpha) {
  if (p.labels() != q.labels()) {
    throw DimensionMismatch("renyi_divergence_subset: alphabets differ");
  }
  const double p_total = p.mass(b);
  if (p_total <= 0.0) {
    throw EmptyConditioningSet("renyi_divergence_subset: p(B) = 0");
  }
  std::vector<GainValue> values;
  std::vector<double> weight_probs;
  values.reserve(b.members().size());
  for (const auto& label : b.members()) {
    const std::size_t i = *p.index_of(label);
    values.push_back(elementary_gain(p.prob(i), q.prob(i)));
    weight_probs.push_back(p.prob(i) / p_total);
  }
  const Dist weights =
      Dist::make(b.members(), std::move(weight_probs), 1e-6);
  return kn_mean(values, weights, KNMeanSpec::f(alpha));
}

GainValue renyi_entropy(const Dist& p, const Order& alpha) {
  if (alpha.is_one()) {
    double h = 0.0;
    for (double pi : p.probs()) {
      if (pi > 0.0) h -= pi * std::log(pi);
    }
    return {h};
  }
  if (alpha.is_infinite()) {
    return {-std::log(*std::max_element(p.probs().begin(), p.probs().end()))};
  }
  const double a = alpha.value();
  LogSumExpAccumulator acc;
  for (double pi : p.probs()) {
    if (pi > 0.0) acc.add(a * std::log(pi));
  }
  return {acc.result() / (1.0 - a)};
}

GainValue arimoto_cond_entropy(const Joint& j, const Order& alpha) {
  if (alpha.is_one()) {
    // H(X|Y) = H(X,Y) - H(Y).
    double hxy = 0.0;
    std::vector<double> py(j.num_y(), 0.0);
    for (std::size_t x = 0; x < j.num_x(); ++x) {
      for (std::size_t y = 0; y < j.num_y(); ++y) {
        const double m = j.mass(x, y);
        py[y] += m;
        if (m > 0.0) hxy -= m * std::log(m);
      }
    }
    double hy = 0.0;
    for (double v : py) {
      if (v > 0.0) hy -= v * std::log(v);
    }
    return {hxy - hy};
  }

  if (alpha.is_infinite()) {
    double sum = 0.0;
    for (std::size_t y = 0; y < j.num_y(); ++y) {
      double best = 0.0;
      for (std::size_t x = 0; x < j.num_x(); ++x) {
        best = std::max(best, j.mass(x, y));
      }
      sum += best;
    }
    return {-std::log(sum)};
  }

  if (alpha.is_zero()) {
    // Limit of the general branch: log of the largest per-output support.
    std::size_t widest = 0;
    for (std::size_t y = 0; y < j.num_y(); ++y) {
      std::size_t count = 0;
      for (std::size_t x = 0; x < j.num_x(); ++x) {
        if (j.mass(x, y) > 0.0) ++count;
      }
      widest = std::max(widest, count);
    }
    return {std::log(static_cast<double>(widest))};
  }

  const double a = alpha.value();
  LogSumExpAccumulator outer;
  for (std::size_t y = 0; y < j.num_y(); ++y) {
    LogSumExpAccumulator inner;
    for (std::size_t x = 0; x < j.num_x(); ++x) {
      const double m = j.mass(x, y);
      if (m > 0.0) inner.add(a * std::log(m));
    }
    const double inner_log = inner.result();
    if (inner_log != kNegInf) outer.add(inner_log / a);
  }
  return {outer.result() * a / (1.0 - a)};
}

}  // namespace alphaleak
