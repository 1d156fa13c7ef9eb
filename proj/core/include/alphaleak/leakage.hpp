#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alphaleak/gain.hpp"
#include "alphaleak/simplex.hpp"

namespace alphaleak {

/// The belief maximizing the f~-mean information gain against reference q
/// under frequency p: phi*(x) proportional to p(x)^alpha / q(x)^(alpha-1).
/// Extended orders take their limit maximizers: q at alpha = 0, p at
/// alpha = 1, and uniform over argmax p/q at alpha = inf (membership
/// within relative tolerance 1e-12). Requires supp(p) within supp(q) for
/// alpha >= 1.
Dist optimal_phi(const Dist& p, const Dist& q, const Order& alpha);

/// Y-elementary leakage D_alpha(P_{X|Y=y} || P_X): the most an adversary
/// observing y can gain over the prior, by any soft decision.
GainValue y_elementary_leakage(const Dist& prior, const Channel& channel,
                               std::size_t y_index, const Order& alpha);
GainValue y_elementary_leakage(const Dist& prior, const Channel& channel,
                               const std::string& y_label, const Order& alpha);

/// Sibson mutual information
///   I_alpha^S = (alpha/(alpha-1)) log sum_y ( sum_x P(x) P(y|x)^alpha )^(1/alpha),
/// with Shannon mutual information at alpha = 1, maximal leakage
/// log sum_y max_{x in supp prior} P(y|x) at alpha = inf, and the limit
/// -log max_y P_X{x : P(y|x) > 0} at alpha = 0. Outputs outside
/// supp(P_Y) carry no weight.
GainValue sibson_mi(const Dist& prior, const Channel& channel,
                    const Order& alpha);

/// The optimal adversary decision kernel: row y is the optimal belief for
/// posterior P_{X|Y=y} against the prior. Rows for outputs with
/// P_Y(y) = 0 fall back to the prior; they carry no weight in any
/// aggregation.
Channel optimal_strategy(const Dist& prior, const Channel& channel,
                         const Order& alpha);

/// The f~-mean of XY-elementary gains log(S(x|y)/P(x)) under the joint
/// frequency P(y|x) P(x), for an arbitrary decision kernel S. Equals
/// sibson_mi at the optimal strategy and never exceeds it.
GainValue xy_elementary_fmean(const Channel& strategy, const Dist& prior,
                              const Channel& channel, const Order& alpha);

/// Arimoto mutual information H_alpha(prior) - H_alpha^A(X|Y).
GainValue arimoto_mi(const Dist& prior, const Channel& channel,
                     const Order& alpha);

/// The tunable alpha-leakage L_alpha(U -> Y): Sibson mutual information of
/// the alpha-scaled prior with the channel. Finite alpha > 0 only; the
/// alpha = 1 limit is Shannon mutual information under the unscaled prior.
GainValue alpha_leakage(const Dist& prior_u, const Channel& channel_yu,
                        const Order& alpha);

/// Pointwise maximal leakage: the alpha = inf Y-elementary leakage,
/// log max_{x in supp prior} P(y|x) / P_Y(y).
GainValue pointwise_maximal_leakage(const Dist& prior, const Channel& channel,
                                    std::size_t y_index);
GainValue pointwise_maximal_leakage(const Dist& prior, const Channel& channel,
                                    const std::string& y_label);

/// D_alpha(P_{U_alpha|Y=y} || P_{U_alpha}) through the closed form
///   (1/(alpha-1)) log sum_u P_{U_alpha}(u) P(y|u)^alpha / P_Y(y)^alpha,
/// with P_Y built from the scaled prior. Finite alpha outside the
/// alpha = 1 window; must agree with the Bayes-then-divergence route.
GainValue scaled_posterior_divergence(const Dist& prior_u,
                                      const Channel& channel_yu,
                                      std::size_t y_index, const Order& alpha);
GainValue scaled_posterior_divergence(const Dist& prior_u,
                                      const Channel& channel_yu,
                                      const std::string& y_label,
                                      const Order& alpha);

/// Everything an adversary audit needs for one order: the per-output
/// leakages, their f~-mean aggregate (= Sibson MI), and the strategy
/// achieving both. Outputs with P_Y(y) = 0 are listed in
/// dropped_outputs instead of per_y.
struct LeakageReport {
  Order alpha;
  std::vector<std::pair<std::string, GainValue>> per_y;
  GainValue aggregate;
  Channel strategy;
  std::vector<std::string> dropped_outputs;
};

LeakageReport make_leakage_report(const Dist& prior, const Channel& channel,
                                  const Order& alpha);

}  // namespace alphaleak
