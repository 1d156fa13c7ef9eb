#pragma once

#include <string>
#include <utility>

#include "alphaleak/gain.hpp"
#include "alphaleak/simplex.hpp"

namespace alphaleak {

/// A chain U - X - Y: an attribute U of the channel input X, observed
/// through the main channel. Derived fields are computed once at build
/// time: prior_x = P_U composed through P_{X|U}, and composed = P_{Y|U}.
struct MarkovChain {
  Dist prior_u;
  Channel attr_channel;  // P_{X|U}
  Channel main_channel;  // P_{Y|X}
  Dist prior_x;
  Channel composed;      // P_{Y|U}
};

MarkovChain build_chain(Dist prior_u, Channel attr_channel,
                        Channel main_channel);

/// Post-processing slack at one output:
/// D_alpha(P_{X|Y=y} || P_X) - D_alpha(P_{U|Y=y} || P_U), in nats.
/// Non-negative for every chain; zero when the attribute channel is the
/// identity.
double postprocess_check_elementary(const MarkovChain& chain,
                                    const std::string& y_label,
                                    const Order& alpha);

/// Aggregate post-processing slack:
/// I_alpha^S(P_X, P_{Y|X}) - I_alpha^S(P_U, P_{Y|U}), in nats.
double postprocess_check_sibson(const MarkovChain& chain, const Order& alpha);

/// The scaled-prior dominance pair at one output:
///   ( D_alpha(P_{U_alpha|Y=y} || P_{U_alpha}),  D_alpha(P_{X|Y=y} || P_X) ).
/// The first never exceeds the second. They coincide whenever the tilted
/// U-side reproduces the X link -- identity attribute with a tilt-invariant
/// prior (uniform, or alpha = 1). Finite alpha > 0.
std::pair<GainValue, GainValue> scaled_sup_check(const MarkovChain& chain,
                                                 const std::string& y_label,
                                                 const Order& alpha);

}  // namespace alphaleak
