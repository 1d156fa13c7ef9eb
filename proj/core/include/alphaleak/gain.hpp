#pragma once

#include <cmath>
#include <span>

#include "alphaleak/order.hpp"
#include "alphaleak/simplex.hpp"

namespace alphaleak {

/// An extended-real information quantity in nats. +inf and -inf are
/// legitimate values (absolute-continuity failures, vanishing beliefs);
/// finite magnitudes never overflow because every operation producing a
/// GainValue evaluates in log space.
struct GainValue {
  double nats = 0.0;

  bool finite() const { return std::isfinite(nats); }
  double bits() const;

  friend bool operator==(const GainValue& a, const GainValue& b) {
    return a.nats == b.nats;
  }
};

/// Specification of a Kolmogorov-Nagumo mean.
///
/// kF uses f(t) = exp((alpha-1) t), the mean underlying Renyi divergence.
/// kFTilde uses f~(t) = exp(((alpha-1)/alpha) t), the mean separating the
/// measured belief from the frequency distribution.
struct KNMeanSpec {
  enum class Kind { kF, kFTilde };

  Kind kind;
  Order alpha;

  static KNMeanSpec f(Order alpha) { return {Kind::kF, alpha}; }
  static KNMeanSpec f_tilde(Order alpha) { return {Kind::kFTilde, alpha}; }
};

/// log(p/q) with the 0/0 := 0 convention; -inf when p = 0 < q. Throws
/// AbsoluteContinuityViolation when p > 0 = q. Independent of any order.
GainValue elementary_gain(double p, double q);

/// f^{-1}( sum_i w_i f(v_i) ) evaluated in log space. Zero-weight entries
/// are ignored even when their value is infinite. At alpha = 1 both kinds
/// reduce to the weighted arithmetic mean. kFTilde with alpha = 0 is
/// rejected (use the dedicated min branch of ftilde_gain).
GainValue kn_mean(std::span<const GainValue> values, const Dist& weights,
                  const KNMeanSpec& spec);

/// Renyi divergence D_alpha(p || q) over a shared alphabet, with exact
/// branches at alpha in {0, 1, inf} and the 0^a 0^(1-a) := 0 convention.
/// Returns +inf when supp(p) is not contained in supp(q) and alpha >= 1;
/// for alpha in (0,1) only the overlapping mass contributes.
GainValue renyi_divergence(const Dist& p, const Dist& q, const Order& alpha);

/// Subset-restricted relative information: the f-mean of elementary gains
/// over x in B, weighted by p(x)/p(B). Requires p << q on B (throws
/// AbsoluteContinuityViolation otherwise) and p(B) > 0.
GainValue renyi_divergence_subset(const Dist& p, const Dist& q,
                                  const EventSubset& b, const Order& alpha);

/// The f~-mean information gain of belief phi against reference q under
/// frequency p:
///
///   alpha in (0,1) u (1,inf):
///       (alpha/(alpha-1)) log sum_x p(x) (phi(x)/q(x))^((alpha-1)/alpha)
///   alpha = 0:    log min_{x in supp(p)} phi(x)/q(x)
///   alpha = 1:    sum_{supp(p)} p(x) log(phi(x)/q(x))
///   alpha = inf:  log sum_x p(x) phi(x)/q(x)
///
/// Zero-frequency symbols are excluded; q must be positive on supp(p).
/// For alpha in (0,1), phi(x) = 0 on a frequency-positive symbol drives
/// the value to -inf (the limit of the negative-exponent branch).
GainValue ftilde_gain(const Dist& phi, const Dist& q, const Dist& p,
                      const Order& alpha);

/// ftilde_gain with the frequency weights renormalized to p(x)/p(B) over B.
GainValue ftilde_gain_subset(const Dist& phi, const Dist& q, const Dist& p,
                             const EventSubset& b, const Order& alpha);

/// Renyi entropy H_alpha(p) = (1/(1-alpha)) log sum p^alpha;
/// alpha = 1 gives Shannon entropy, 0 gives log|supp(p)|, inf gives
/// -log max p.
GainValue renyi_entropy(const Dist& p, const Order& alpha);

/// Arimoto conditional entropy of X given Y from a joint:
/// (alpha/(1-alpha)) log sum_y ( sum_x m(x,y)^alpha )^(1/alpha) for finite
/// alpha not in {0, 1}; Shannon H(X|Y) at 1; -log sum_y max_x m(x,y) at
/// inf; log max_y |supp m(.,y)| at 0 (the limit of the general branch).
GainValue arimoto_cond_entropy(const Joint& j, const Order& alpha);

}  // namespace alphaleak
