#include "alphaleak/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "logspace.hpp"

namespace alphaleak {

using detail::kNegInf;
using detail::kPosInf;
using detail::log_or_neg_inf;
using detail::LogSumExpAccumulator;

namespace {

constexpr double kArgmaxRelTol = 1e-12;

void check_pair(const Dist& prior, const Channel& channel,
                const char* where) {
  if (prior.labels() != channel.input_labels()) {
    throw DimensionMismatch(std::string(where) +
                            ": prior alphabet does not match channel inputs");
  }
}

std::size_t require_output(const Channel& channel, const std::string& label,
                           const char* where) {
  auto idx = channel.output_index(label);
  if (!idx) {
    throw DimensionMismatch(std::string(where) + ": unknown output label \"" +
                            label + "\"");
  }
  return *idx;
}

}  // namespace

Dist optimal_phi(const Dist& p, const Dist& q, const Order& alpha) {
  if (p.labels() != q.labels()) {
    throw DimensionMismatch("optimal_phi: alphabets differ");
  }
  const bool need_domination = alpha.is_infinite() || alpha.value() >= 1.0;
  if (need_domination) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0 && q.prob(i) == 0.0) {
        throw AbsoluteContinuityViolation(
            "optimal_phi: supp(p) not contained in supp(q)");
      }
    }
  }
  if (alpha.is_zero()) {
    // q conditioned on supp(p). The unrestricted q only attains D_0 when p
    // has full support; off-support belief mass is wasted in the min.
    double q_mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) q_mass += q.prob(i);
    }
    std::vector<double> probs(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) probs[i] = q.prob(i) / q_mass;
    }
    return Dist::make(p.labels(), std::move(probs), 1e-6);
  }
  if (alpha.is_one()) return p;

  if (alpha.is_infinite()) {
    // Uniform over the argmax of p/q, measured in log space.
    std::vector<double> log_ratio(p.size(), kNegInf);
    double best = kNegInf;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.prob(i) > 0.0) {
        log_ratio[i] = std::log(p.prob(i)) - std::log(q.prob(i));
        best = std::max(best, log_ratio[i]);
      }
    }
    std::vector<bool> in_argmax(p.size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (log_ratio[i] >= best - kArgmaxRelTol * std::max(1.0, std::abs(best))) {
        in_argmax[i] = true;
        ++count;
      }
    }
    std::vector<double> probs(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (in_argmax[i]) probs[i] = 1.0 / static_cast<double>(count);
    }
    return Dist::make(p.labels(), std::move(probs));
  }

  // Normalized tilt p^alpha / q^(alpha-1) via a log-space softmax.
  const double a = alpha.value();
  std::vector<double> logw(p.size(), kNegInf);
  double max_logw = kNegInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.prob(i) == 0.0) continue;
    // q = 0 with alpha < 1 contributes q^(1-alpha) = 0.
    const double lq = log_or_neg_inf(q.prob(i));
    if (lq == kNegInf && a < 1.0) continue;
    logw[i] = a * std::log(p.prob(i)) + (1.0 - a) * lq;
    max_logw = std::max(max_logw, logw[i]);
  }
  std::vector<double> probs(p.size(), 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (logw[i] == kNegInf) continue;
    probs[i] = std::exp(logw[i] - max_logw);
    z += probs[i];
  }
  for (double& v : probs) v /= z;
  return Dist::make(p.labels(), std::move(probs), 1e-6);
}

GainValue y_elementary_leakage(const Dist& prior, const Channel& channel,
                               std::size_t y_index, const Order& alpha) {
  return renyi_divergence(posterior(prior, channel, y_index), prior, alpha);
}

GainValue y_elementary_leakage(const Dist& prior, const Channel& channel,
                               const std::string& y_label,
                               const Order& alpha) {
  return y_elementary_leakage(
      prior, channel, require_output(channel, y_label, "y_elementary_leakage"),
      alpha);
}

GainValue sibson_mi(const Dist& prior, const Channel& channel,
                    const Order& alpha) {
  check_pair(prior, channel, "sibson_mi");

  if (alpha.is_one()) {
    // Shannon mutual information.
    const Dist py = output_marginal(prior, channel);
    double sum = 0.0;
    for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
      const double px = prior.prob(x);
      if (px == 0.0) continue;
      for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
        const double pyx = channel.prob(x, y);
        if (pyx == 0.0) continue;
        sum += px * pyx * (std::log(pyx) - std::log(py.prob(y)));
      }
    }
    return {sum};
  }

  if (alpha.is_infinite()) {
    double sum = 0.0;
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      double best = 0.0;
      for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
        if (prior.prob(x) > 0.0) best = std::max(best, channel.prob(x, y));
      }
      sum += best;
    }
    return {std::log(sum)};
  }

  if (alpha.is_zero()) {
    // Limit of the f~-mean of Y-elementary D_0 values: the largest prior
    // mass reachable behind a single output.
    double best = 0.0;
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      double mass = 0.0;
      for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
        if (channel.prob(x, y) > 0.0) mass += prior.prob(x);
      }
      // Outputs with P_Y(y) = 0 reach no prior mass and never win.
      best = std::max(best, mass);
    }
    return {-std::log(best)};
  }

  const double a = alpha.value();
  LogSumExpAccumulator outer;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    LogSumExpAccumulator inner;
    for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
      const double px = prior.prob(x);
      const double pyx = channel.prob(x, y);
      if (px == 0.0 || pyx == 0.0) continue;
      inner.add(std::log(px) + a * std::log(pyx));
    }
    const double inner_log = inner.result();
    if (inner_log != kNegInf) outer.add(inner_log / a);
  }
  return {outer.result() * a / (a - 1.0)};
}

Channel optimal_strategy(const Dist& prior, const Channel& channel,
                         const Order& alpha) {
  check_pair(prior, channel, "optimal_strategy");
  const Dist py = output_marginal(prior, channel);
  std::vector<std::vector<double>> rows;
  rows.reserve(channel.num_outputs());
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    if (py.prob(y) > 0.0) {
      rows.push_back(
          optimal_phi(posterior(prior, channel, y), prior, alpha).probs());
    } else {
      rows.push_back(prior.probs());
    }
  }
  return Channel::make(channel.output_labels(), prior.labels(),
                       std::move(rows));
}

GainValue xy_elementary_fmean(const Channel& strategy, const Dist& prior,
                              const Channel& channel, const Order& alpha) {
  check_pair(prior, channel, "xy_elementary_fmean");
  if (strategy.input_labels() != channel.output_labels() ||
      strategy.output_labels() != prior.labels()) {
    throw DimensionMismatch(
        "xy_elementary_fmean: strategy must map channel outputs to the "
        "prior alphabet");
  }

  // f~-mean of log(S(x|y)/P(x)) with weights m(x,y) = P(y|x) P(x). A
  // positive weight forces P(x) > 0, so no absolute-continuity check is
  // needed against the prior.
  if (alpha.is_zero()) {
    double worst = kPosInf;
    for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
      for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
        if (prior.prob(x) * channel.prob(x, y) == 0.0) continue;
        worst = std::min(worst, log_or_neg_inf(strategy.prob(y, x)) -
                                    std::log(prior.prob(x)));
      }
    }
    return {worst};
  }

  if (alpha.is_one()) {
    double sum = 0.0;
    bool saw_neg_inf = false;
    for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
      for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
        const double m = prior.prob(x) * channel.prob(x, y);
        if (m == 0.0) continue;
        if (strategy.prob(y, x) == 0.0) {
          saw_neg_inf = true;
          continue;
        }
        sum += m * (std::log(strategy.prob(y, x)) - std::log(prior.prob(x)));
      }
    }
    return {saw_neg_inf ? kNegInf : sum};
  }

  const double c =
      alpha.is_infinite() ? 1.0 : (alpha.value() - 1.0) / alpha.value();
  LogSumExpAccumulator acc;
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      const double m = prior.prob(x) * channel.prob(x, y);
      if (m == 0.0) continue;
      const double gain =
          log_or_neg_inf(strategy.prob(y, x)) - std::log(prior.prob(x));
      acc.add(std::log(m) + (gain == kNegInf
                                 ? (c > 0.0 ? kNegInf : kPosInf)
                                 : c * gain));
    }
  }
  return {acc.result() / c};
}

GainValue arimoto_mi(const Dist& prior, const Channel& channel,
                     const Order& alpha) {
  check_pair(prior, channel, "arimoto_mi");
  const GainValue h = renyi_entropy(prior, alpha);
  const GainValue hc = arimoto_cond_entropy(joint(prior, channel), alpha);
  return {h.nats - hc.nats};
}

GainValue alpha_leakage(const Dist& prior_u, const Channel& channel_yu,
                        const Order& alpha) {
  if (alpha.is_zero() || alpha.is_infinite()) {
    throw UnsupportedOrder(
        "alpha_leakage: defined through the scaled prior for finite "
        "alpha > 0 only");
  }
  if (alpha.is_one()) {
    // P_{U_1} = P_U, so the limit is plain Shannon mutual information.
    return sibson_mi(prior_u, channel_yu, alpha);
  }
  return sibson_mi(scaled_dist(prior_u, alpha), channel_yu, alpha);
}

GainValue pointwise_maximal_leakage(const Dist& prior, const Channel& channel,
                                    std::size_t y_index) {
  return y_elementary_leakage(prior, channel, y_index, Order::infinity());
}

GainValue pointwise_maximal_leakage(const Dist& prior, const Channel& channel,
                                    const std::string& y_label) {
  return y_elementary_leakage(prior, channel, y_label, Order::infinity());
}

GainValue scaled_posterior_divergence(const Dist& prior_u,
                                      const Channel& channel_yu,
                                      std::size_t y_index,
                                      const Order& alpha) {
  if (alpha.is_infinite() || alpha.is_one()) {
    throw UnsupportedOrder(
        "scaled_posterior_divergence: the closed form needs finite alpha "
        "away from 1");
  }
  check_pair(prior_u, channel_yu, "scaled_posterior_divergence");
  const Dist scaled = scaled_dist(prior_u, alpha);
  const Dist py = output_marginal(scaled, channel_yu);
  if (y_index >= channel_yu.num_outputs() || py.prob(y_index) <= 0.0) {
    throw ZeroProbabilityOutput(
        "scaled_posterior_divergence: output has zero mass under the "
        "scaled prior");
  }
  const double a = alpha.value();
  const double log_py = std::log(py.prob(y_index));
  LogSumExpAccumulator acc;
  for (std::size_t u = 0; u < scaled.size(); ++u) {
    const double su = scaled.prob(u);
    const double pyu = channel_yu.prob(u, y_index);
    if (su == 0.0 || pyu == 0.0) continue;
    // At alpha = 0 the factor P(y|u)^alpha / P_Y^alpha is 1 on the channel
    // support, leaving -log of the reachable scaled mass.
    acc.add(std::log(su) + a * (std::log(pyu) - log_py));
  }
  return {acc.result() / (a - 1.0)};
}

GainValue scaled_posterior_divergence(const Dist& prior_u,
                                      const Channel& channel_yu,
                                      const std::string& y_label,
                                      const Order& alpha) {
  return scaled_posterior_divergence(
      prior_u, channel_yu,
      require_output(channel_yu, y_label, "scaled_posterior_divergence"),
      alpha);
}

LeakageReport make_leakage_report(const Dist& prior, const Channel& channel,
                                  const Order& alpha) {
  check_pair(prior, channel, "make_leakage_report");
  const Dist py = output_marginal(prior, channel);
  LeakageReport report{alpha,
                       {},
                       sibson_mi(prior, channel, alpha),
                       optimal_strategy(prior, channel, alpha),
                       {}};
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    if (py.prob(y) > 0.0) {
      report.per_y.emplace_back(channel.output_labels()[y],
                                y_elementary_leakage(prior, channel, y, alpha));
    } else {
      report.dropped_outputs.push_back(channel.output_labels()[y]);
    }
  }
  return report;
}

}  // namespace alphaleak
