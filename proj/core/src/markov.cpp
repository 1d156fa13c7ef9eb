#include "alphaleak/markov.hpp"

#include "alphaleak/leakage.hpp"

namespace alphaleak {

MarkovChain build_chain(Dist prior_u, Channel attr_channel,
                        Channel main_channel) {
  if (prior_u.labels() != attr_channel.input_labels()) {
    throw DimensionMismatch(
        "build_chain: prior_u alphabet does not match attribute channel "
        "inputs");
  }
  Dist prior_x = output_marginal(prior_u, attr_channel);
  Channel composed = compose(attr_channel, main_channel);
  return MarkovChain{std::move(prior_u), std::move(attr_channel),
                     std::move(main_channel), std::move(prior_x),
                     std::move(composed)};
}

namespace {

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

double postprocess_check_elementary(const MarkovChain& chain,
                                    const std::string& y_label,
                                    const Order& alpha) {
  const std::size_t y =
      require_output(chain.main_channel, y_label, "postprocess_check_elementary");
  const GainValue x_side =
      y_elementary_leakage(chain.prior_x, chain.main_channel, y, alpha);
  const GainValue u_side =
      y_elementary_leakage(chain.prior_u, chain.composed, y, alpha);
  return x_side.nats - u_side.nats;
}

double postprocess_check_sibson(const MarkovChain& chain, const Order& alpha) {
  const GainValue x_side = sibson_mi(chain.prior_x, chain.main_channel, alpha);
  const GainValue u_side = sibson_mi(chain.prior_u, chain.composed, alpha);
  return x_side.nats - u_side.nats;
}

std::pair<GainValue, GainValue> scaled_sup_check(const MarkovChain& chain,
                                                 const std::string& y_label,
                                                 const Order& alpha) {
  if (alpha.is_zero() || alpha.is_infinite()) {
    throw UnsupportedOrder("scaled_sup_check: finite alpha > 0 only");
  }
  const std::size_t y =
      require_output(chain.main_channel, y_label, "scaled_sup_check");
  const Dist scaled = scaled_dist(chain.prior_u, alpha);
  const GainValue u_side =
      renyi_divergence(posterior(scaled, chain.composed, y), scaled, alpha);
  const GainValue x_side =
      y_elementary_leakage(chain.prior_x, chain.main_channel, y, alpha);
  return {u_side, x_side};
}

}  // namespace alphaleak
