#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alphaleak/leakage.hpp"
#include "alphaleak/markov.hpp"
#include "alphaleak/oracle.hpp"
#include "report.hpp"

namespace alphaleak::cli {

bool VerifyReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(),
                     [](const VerifyLine& l) { return l.pass; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  for (const auto& l : lines) {
    out << l.property << '\t' << (l.pass ? "PASS" : "FAIL") << '\t'
        << format_value(l.worst) << '\n';
  }
  return out.str();
}

namespace {

constexpr double kEqTol = 1e-10;
constexpr double kDomTol = 1e-12;
constexpr double kAscentTol = 1e-7;
constexpr double kCertSlack = 1e-12;  // float headroom on exact certificates
constexpr double kMinConditionableMass = 1e-9;

struct Suite {
  const ProblemSpec& spec;
  const VerifyOptions& opts;
  oracle::SimplexSampler rng;
  VerifyReport report;

  Dist x_prior;
  std::vector<Order> grid;         // includes 0 and inf
  std::vector<Order> finite_grid;  // finite alpha > 0
  std::vector<std::pair<Dist, Dist>> pairs;  // (p, q) instances
  std::vector<MarkovChain> chains;
  std::vector<MarkovChain> identity_chains;

  explicit Suite(const ProblemSpec& s, const VerifyOptions& o)
      : spec(s), opts(o), rng(o.seed), x_prior(s.x_prior()) {
    if (opts.alphas.empty()) {
      grid = {Order(0.0), Order(0.5), Order(1.0), Order(2.0),
              Order::infinity()};
    } else {
      grid = opts.alphas;
    }
    for (const Order& a : grid) {
      if (!a.is_infinite() && !a.is_zero()) finite_grid.push_back(a);
    }
    if (finite_grid.empty()) finite_grid = {Order(0.5), Order(2.0)};
    build_pairs();
    build_chains();
  }

  Dist random_dist(std::size_t n, const std::vector<std::string>& labels) {
    return Dist::make(labels, rng.next_point(n), 1e-6);
  }

  Channel random_channel(const std::vector<std::string>& in,
                         const std::vector<std::string>& out) {
    std::vector<std::vector<double>> rows;
    rows.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      rows.push_back(rng.next_point(out.size()));
    }
    return Channel::make(in, out, std::move(rows), 1e-6);
  }

  void build_pairs() {
    const Dist py = output_marginal(x_prior, spec.channel);
    for (std::size_t y = 0; y < spec.channel.num_outputs(); ++y) {
      if (py.prob(y) > 0.0) {
        pairs.emplace_back(posterior(x_prior, spec.channel, y), x_prior);
      }
    }
    const std::size_t n = x_prior.size();
    const std::size_t count = std::min<std::size_t>(opts.trials, 200);
    for (std::size_t i = 0; i < count; ++i) {
      pairs.emplace_back(random_dist(n, x_prior.labels()),
                         random_dist(n, x_prior.labels()));
    }
  }

  void build_chains() {
    const std::size_t nx = x_prior.size();
    const std::size_t count = std::min<std::size_t>(opts.trials, 200);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t nu = 2 + i % std::min<std::size_t>(nx + 1, 4);
      const auto u_labels = default_labels(nu, "u");
      for (int attempt = 0; attempt < 50; ++attempt) {
        MarkovChain chain = build_chain(
            random_dist(nu, u_labels),
            random_channel(u_labels, x_prior.labels()), spec.channel);
        const Dist py = output_marginal(chain.prior_x, chain.main_channel);
        const double smallest =
            *std::min_element(py.probs().begin(), py.probs().end());
        if (smallest >= kMinConditionableMass) {
          chains.push_back(std::move(chain));
          break;
        }
      }
    }
    identity_chains.push_back(build_chain(
        x_prior, Channel::identity(x_prior.labels()), spec.channel));
    // A uniform-prior identity chain keeps every output conditionable even
    // when the problem's own prior has zeros.
    identity_chains.push_back(build_chain(
        Dist::make(x_prior.labels(),
                   std::vector<double>(nx, 1.0 / static_cast<double>(nx))),
        Channel::identity(x_prior.labels()), spec.channel));
  }

  void record(const std::string& property, double worst, double tol) {
    report.lines.push_back(VerifyLine{property, worst <= tol, worst});
  }

  Dist maximizer(const Dist& p, const Dist& q, const Order& alpha) {
    Dist phi = optimal_phi(p, q, alpha);
    if (opts.fault == FaultInjection::kProp1Maximizer) {
      std::vector<double> probs = phi.probs();
      for (double& v : probs) {
        v = 0.8 * v + 0.2 / static_cast<double>(probs.size());
      }
      phi = Dist::make(phi.labels(), std::move(probs), 1e-6);
    }
    return phi;
  }

  // --- properties -------------------------------------------------------

  void prop1_equality() {
    double worst = 0.0;
    for (const auto& [p, q] : pairs) {
      for (const Order& a : grid) {
        const double direct = renyi_divergence(p, q, a).nats;
        const double attained = ftilde_gain(maximizer(p, q, a), q, p, a).nats;
        worst = std::max(worst, std::abs(direct - attained));
      }
    }
    record("Prop1-equality", worst, kEqTol);
  }

  void prop1_dominance() {
    double worst = 0.0;
    const std::size_t n = x_prior.size();
    for (const auto& [p, q] : pairs) {
      for (const Order& a : grid) {
        const double direct = renyi_divergence(p, q, a).nats;
        for (std::size_t t = 0; t < 200; ++t) {
          const Dist phi = random_dist(n, p.labels());
          worst = std::max(worst, ftilde_gain(phi, q, p, a).nats - direct);
        }
      }
    }
    record("Prop1-dominance", worst, kDomTol);
  }

  void thm1_eq6() {
    const Dist py = output_marginal(x_prior, spec.channel);
    double worst_eq = 0.0;
    double worst_dom = 0.0;
    for (std::size_t y = 0; y < spec.channel.num_outputs(); ++y) {
      if (py.prob(y) == 0.0) continue;
      const Dist post = posterior(x_prior, spec.channel, y);
      for (const Order& a : grid) {
        const double leak =
            y_elementary_leakage(x_prior, spec.channel, y, a).nats;
        const double attained =
            ftilde_gain(optimal_phi(post, x_prior, a), x_prior, post, a).nats;
        worst_eq = std::max(worst_eq, std::abs(leak - attained));
        for (std::size_t t = 0; t < 100; ++t) {
          const Dist phi = random_dist(x_prior.size(), x_prior.labels());
          worst_dom = std::max(worst_dom,
                               ftilde_gain(phi, x_prior, post, a).nats - leak);
        }
      }
    }
    record("Thm1-eq6-equality", worst_eq, kEqTol);
    record("Thm1-eq6-dominance", worst_dom, kDomTol);
  }

  void thm1_eq7() {
    const Dist py = output_marginal(x_prior, spec.channel);
    double worst_agg = 0.0;
    double worst_opt = 0.0;
    double worst_dom = 0.0;
    for (const Order& a : grid) {
      const double direct = sibson_mi(x_prior, spec.channel, a).nats;

      // f~-mean aggregation of the per-output leakages.
      std::vector<GainValue> per_y;
      std::vector<double> weights;
      for (std::size_t y = 0; y < spec.channel.num_outputs(); ++y) {
        if (py.prob(y) == 0.0) continue;
        per_y.push_back(y_elementary_leakage(x_prior, spec.channel, y, a));
        weights.push_back(py.prob(y));
      }
      double aggregated;
      if (a.is_zero()) {
        // The alpha -> 0 limit of the f~-mean is the minimum over supp(P_Y).
        aggregated = per_y.front().nats;
        for (const GainValue& v : per_y) {
          aggregated = std::min(aggregated, v.nats);
        }
      } else {
        const Dist weight_dist =
            Dist::make(default_labels(weights.size(), "w"), weights, 1e-6);
        aggregated = kn_mean(per_y, weight_dist, KNMeanSpec::f_tilde(a)).nats;
      }
      worst_agg = std::max(worst_agg, std::abs(aggregated - direct));

      const Channel best = optimal_strategy(x_prior, spec.channel, a);
      worst_opt = std::max(
          worst_opt,
          std::abs(xy_elementary_fmean(best, x_prior, spec.channel, a).nats -
                   direct));

      oracle::StrategySampler sampler(opts.seed ^ 0x5eed,
                                      spec.channel.output_labels(),
                                      x_prior.labels());
      for (std::size_t t = 0; t < 100; ++t) {
        worst_dom = std::max(
            worst_dom,
            xy_elementary_fmean(sampler.next(), x_prior, spec.channel, a)
                    .nats -
                direct);
      }
    }
    record("Thm1-eq7-aggregation", worst_agg, kEqTol);
    record("Thm1-eq7-maximizer", worst_opt, kEqTol);
    record("Thm1-eq7-dominance", worst_dom, kDomTol);
  }

  void arimoto_bridge() {
    double worst = 0.0;
    std::vector<Order> alphas = finite_grid;
    alphas.push_back(Order(0.0));
    auto check = [&](const Dist& prior, const Channel& ch) {
      for (const Order& a : alphas) {
        const double lhs = arimoto_mi(prior, ch, a).nats;
        const double rhs = sibson_mi(scaled_dist(prior, a), ch, a).nats;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    };
    check(x_prior, spec.channel);
    const std::size_t count = std::min<std::size_t>(opts.trials, 50);
    for (std::size_t i = 0; i < count; ++i) {
      check(random_dist(x_prior.size(), x_prior.labels()),
            random_channel(x_prior.labels(), spec.channel.output_labels()));
    }
    record("Arimoto-Sibson-bridge", worst, kEqTol);
  }

  void maximal_leakage_form() {
    double worst = 0.0;
    auto closed_form = [&](const Dist& prior) {
      double sum = 0.0;
      for (std::size_t y = 0; y < spec.channel.num_outputs(); ++y) {
        double best = 0.0;
        for (std::size_t x = 0; x < spec.channel.num_inputs(); ++x) {
          if (prior.prob(x) > 0.0) {
            best = std::max(best, spec.channel.prob(x, y));
          }
        }
        sum += best;
      }
      return std::log(sum);
    };
    const double base =
        sibson_mi(x_prior, spec.channel, Order::infinity()).nats;
    worst = std::max(worst, std::abs(base - closed_form(x_prior)));
    // Full-support priors must all give the same value.
    const std::size_t nx = x_prior.size();
    const Dist uniform = Dist::make(
        x_prior.labels(), std::vector<double>(nx, 1.0 / static_cast<double>(nx)));
    const double reference =
        sibson_mi(uniform, spec.channel, Order::infinity()).nats;
    for (std::size_t i = 0; i < 20; ++i) {
      const Dist prior = random_dist(nx, x_prior.labels());
      const double value =
          sibson_mi(prior, spec.channel, Order::infinity()).nats;
      worst = std::max(worst, std::abs(value - reference));
    }
    record("MaxLeakage-closedform", worst, kDomTol);
  }

  void postprocess() {
    double worst_elem = 0.0;
    double worst_sibson = 0.0;
    double worst_achieve = 0.0;
    for (const MarkovChain& chain : chains) {
      const Dist py = output_marginal(chain.prior_x, chain.main_channel);
      for (const Order& a : grid) {
        for (std::size_t y = 0; y < chain.main_channel.num_outputs(); ++y) {
          if (py.prob(y) < kMinConditionableMass) continue;
          const double slack = postprocess_check_elementary(
              chain, chain.main_channel.output_labels()[y], a);
          worst_elem = std::max(worst_elem, -slack);
        }
        worst_sibson =
            std::max(worst_sibson, -postprocess_check_sibson(chain, a));
      }
    }
    for (const MarkovChain& chain : identity_chains) {
      const Dist py = output_marginal(chain.prior_x, chain.main_channel);
      for (const Order& a : grid) {
        for (std::size_t y = 0; y < chain.main_channel.num_outputs(); ++y) {
          if (py.prob(y) < kMinConditionableMass) continue;
          worst_achieve = std::max(
              worst_achieve,
              std::abs(postprocess_check_elementary(
                  chain, chain.main_channel.output_labels()[y], a)));
        }
        worst_achieve =
            std::max(worst_achieve, std::abs(postprocess_check_sibson(chain, a)));
      }
    }
    record("PostProcess-elementary", worst_elem, kDomTol);
    record("PostProcess-sibson", worst_sibson, kDomTol);
    record("PostProcess-achievability", worst_achieve, kDomTol);
  }

  void scaled_sup() {
    double worst = 0.0;
    for (const MarkovChain& chain : chains) {
      const Dist py = output_marginal(chain.prior_x, chain.main_channel);
      for (const Order& a : finite_grid) {
        for (std::size_t y = 0; y < chain.main_channel.num_outputs(); ++y) {
          if (py.prob(y) < kMinConditionableMass) continue;
          const auto [u_side, x_side] = scaled_sup_check(
              chain, chain.main_channel.output_labels()[y], a);
          worst = std::max(worst, u_side.nats - x_side.nats);
        }
      }
    }
    record("ScaledSup-dominance", worst, kDomTol);
  }

  void scaled_posterior_identity() {
    double worst = 0.0;
    for (const MarkovChain& chain : chains) {
      for (const Order& a : finite_grid) {
        if (a.is_one()) continue;
        const Dist scaled = scaled_dist(chain.prior_u, a);
        const Dist py = output_marginal(scaled, chain.composed);
        for (std::size_t y = 0; y < chain.composed.num_outputs(); ++y) {
          if (py.prob(y) < kMinConditionableMass) continue;
          const double closed =
              scaled_posterior_divergence(chain.prior_u, chain.composed, y, a)
                  .nats;
          const double bayes =
              renyi_divergence(posterior(scaled, chain.composed, y), scaled, a)
                  .nats;
          worst = std::max(worst, std::abs(closed - bayes));
        }
      }
    }
    record("ScaledPosterior-identity", worst, kEqTol);
  }

  void l_alpha_consistency() {
    double worst = 0.0;
    for (const MarkovChain& chain : chains) {
      for (const Order& a : finite_grid) {
        const double direct =
            alpha_leakage(chain.prior_u, chain.composed, a).nats;
        const Dist scaled = scaled_dist(chain.prior_u, a);
        const Dist py = output_marginal(scaled, chain.composed);
        std::vector<GainValue> per_y;
        std::vector<double> weights;
        for (std::size_t y = 0; y < chain.composed.num_outputs(); ++y) {
          if (py.prob(y) == 0.0) continue;
          per_y.push_back(renyi_divergence(
              posterior(scaled, chain.composed, y), scaled, a));
          weights.push_back(py.prob(y));
        }
        const Dist weight_dist =
            Dist::make(default_labels(weights.size(), "w"), weights, 1e-6);
        const double aggregated =
            kn_mean(per_y, weight_dist, KNMeanSpec::f_tilde(a)).nats;
        worst = std::max(worst, std::abs(aggregated - direct));
      }
    }
    record("Lalpha-consistency", worst, kEqTol);
  }

  void brute_force_prop1() {
    double worst = 0.0;
    const auto spec2 = oracle::GridSpec::make(2, opts.grid_resolution);
    const auto labels = default_labels(2, "x");
    std::size_t instances = 0;
    for (const auto& [p, q] : pairs) {
      if (p.size() != 2) continue;
      if (++instances > 5) break;
      for (const Order& a : grid) {
        const double direct = renyi_divergence(p, q, a).nats;
        const auto result = oracle::brute_force_max_ftilde(q, p, a, spec2);
        const double dev = std::abs(result.value.nats - direct);
        worst = std::max(worst, std::max(0.0, dev - result.certified_gap));
      }
    }
    if (instances == 0) {
      for (std::size_t i = 0; i < 5; ++i) {
        const Dist p = random_dist(2, labels);
        const Dist q = random_dist(2, labels);
        for (const Order& a : grid) {
          const double direct = renyi_divergence(p, q, a).nats;
          const auto result = oracle::brute_force_max_ftilde(q, p, a, spec2);
          const double dev = std::abs(result.value.nats - direct);
          worst = std::max(worst, std::max(0.0, dev - result.certified_gap));
        }
      }
    }
    record("BruteForce-Prop1", worst, kCertSlack);
  }

  void ascent_prop1() {
    double worst = 0.0;
    std::size_t instances = 0;
    for (const auto& [p, q] : pairs) {
      if (++instances > 10) break;
      for (const Order& a : finite_grid) {
        const double direct = renyi_divergence(p, q, a).nats;
        const auto result =
            oracle::projected_ascent_max_ftilde(q, p, a, 1e-8, 50000);
        worst = std::max(worst, std::abs(result.value.nats - direct));
      }
    }
    record("Ascent-Prop1", worst, kAscentTol);
  }

  void info_radius() {
    double worst = 0.0;
    auto check = [&](const Dist& prior, const Channel& ch) {
      const auto gspec =
          oracle::GridSpec::make(ch.num_outputs(), opts.grid_resolution);
      for (const Order& a : finite_grid) {
        const auto result = oracle::sibson_infradius_check(prior, ch, a, gspec);
        const double direct = sibson_mi(prior, ch, a).nats;
        const double bound = std::max(result.certified_gap, 1e-4);
        worst = std::max(
            worst, std::max(0.0, std::abs(result.value.nats - direct) - bound));
      }
    };
    if (spec.channel.num_outputs() <= 3) {
      check(x_prior, spec.channel);
    }
    const auto xl = default_labels(3, "x");
    const auto yl = default_labels(2, "y");
    for (std::size_t i = 0; i < 2; ++i) {
      check(random_dist(3, xl), random_channel(xl, yl));
    }
    record("InfoRadius", worst, kCertSlack);
  }

  VerifyReport run() {
    prop1_equality();
    prop1_dominance();
    thm1_eq6();
    thm1_eq7();
    arimoto_bridge();
    maximal_leakage_form();
    postprocess();
    scaled_sup();
    scaled_posterior_identity();
    l_alpha_consistency();
    brute_force_prop1();
    ascent_prop1();
    info_radius();
    return std::move(report);
  }
};

}  // namespace

VerifyReport run_verify(const ProblemSpec& spec, const VerifyOptions& options) {
  Suite suite(spec, options);
  return suite.run();
}

}  // namespace alphaleak::cli
