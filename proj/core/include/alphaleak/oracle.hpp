#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "alphaleak/gain.hpp"
#include "alphaleak/simplex.hpp"

namespace alphaleak::oracle {

/// An exact lattice over a probability simplex: all compositions of k into
/// `dimension` parts, divided by k. resolution must be 1/k for integer
/// k >= 1 so lattice points are exact.
struct GridSpec {
  std::size_t dimension = 0;
  double resolution = 1.0;
  std::size_t steps = 1;  // k = 1/resolution

  static GridSpec make(std::size_t dimension, double resolution);
};

/// Deterministic enumeration of the lattice in lexicographic composition
/// order.
class SimplexGrid {
 public:
  explicit SimplexGrid(const GridSpec& spec) : spec_(spec) {}

  /// C(k + d - 1, d - 1) lattice points.
  std::size_t size() const;

  /// Calls fn(point) for every lattice point; the span aliases an internal
  /// buffer that is overwritten between calls.
  template <typename F>
  void for_each(F&& fn) const {
    const std::size_t d = spec_.dimension;
    const std::size_t k = spec_.steps;
    std::vector<std::size_t> comp(d, 0);
    comp[d - 1] = k;
    std::vector<double> point(d);
    const double inv_k = 1.0 / static_cast<double>(k);
    while (true) {
      for (std::size_t i = 0; i < d; ++i) {
        point[i] = static_cast<double>(comp[i]) * inv_k;
      }
      fn(std::span<const double>(point));
      if (!advance(comp)) break;
    }
  }

  /// Advances a composition to its lexicographic successor; false at the
  /// last one. Exposed for the streaming view.
  static bool advance(std::vector<std::size_t>& comp);

 private:
  GridSpec spec_;
};

/// Stream-of-Dist view of the lattice, for callers that want labeled
/// points rather than the raw enumeration.
class SimplexStream {
 public:
  SimplexStream(const GridSpec& spec, std::vector<std::string> labels);

  std::optional<Dist> next();
  std::size_t count() const { return SimplexGrid(spec_).size(); }

 private:
  GridSpec spec_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> comp_;
  bool done_ = false;
};

SimplexStream enumerate_simplex(const GridSpec& spec,
                                std::vector<std::string> labels = {});

/// Outcome of an oracle optimization. certified_gap is a rigorous bound on
/// the suboptimality of `value` against the true optimum (a Frank-Wolfe
/// duality gap at the incumbent, with a global Holder bound as fallback
/// where the gradient is unbounded); +inf when no finite certificate
/// exists. `value` is always the public objective re-evaluated at argmax.
struct OptResult {
  Dist argmax;
  GainValue value;
  std::size_t iterations = 0;
  double certified_gap = 0.0;
  bool converged = true;
};

/// Exhaustive lattice maximum of ftilde_gain(phi, q, p, alpha) over phi.
/// Dimensions above 4 or resolutions finer than 1/2000 are rejected;
/// larger instances belong to projected ascent.
OptResult brute_force_max_ftilde(const Dist& q, const Dist& p,
                                 const Order& alpha, const GridSpec& spec);

/// First-order ascent on the simplex for the same objective. Finite
/// alpha > 0 only: the inner sum is concave for alpha > 1 and convex for
/// alpha in (0,1), where the search direction flips to minimize it. Steps
/// are accepted only on objective improvement; iterates are floored to a
/// 1e-12 interior before exponentiation. Stops when the duality gap drops
/// below tol; when iterations run out the best iterate is returned with
/// converged = false.
OptResult projected_ascent_max_ftilde(const Dist& q, const Dist& p,
                                      const Order& alpha, double tol,
                                      std::size_t max_iter);

/// Lattice minimum over output distributions Q_Y of the f-mean (weights =
/// prior) of D_alpha(P_{Y|X=x} || Q_Y): the information-radius
/// characterization of Sibson mutual information. Finite alpha > 0.
OptResult sibson_infradius_check(const Dist& prior, const Channel& channel,
                                 const Order& alpha, const GridSpec& spec);

/// Reproducible uniform-simplex (flat Dirichlet) sampler built on the
/// standardized mt19937_64 stream, so identical seeds give identical
/// points on every platform.
class SimplexSampler {
 public:
  explicit SimplexSampler(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// One point of the flat Dirichlet on the (dim-1)-simplex.
  std::vector<double> next_point(std::size_t dim);

 private:
  std::mt19937_64 gen_;
};

/// Stream of row-stochastic matrices with per-row flat Dirichlet rows.
class StrategySampler {
 public:
  StrategySampler(std::uint64_t seed, std::vector<std::string> input_labels,
                  std::vector<std::string> output_labels);
  StrategySampler(std::uint64_t seed, std::size_t num_inputs,
                  std::size_t num_outputs);

  Channel next();

 private:
  SimplexSampler sampler_;
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
};

/// `count` reproducible strategies of shape (num_inputs, num_outputs).
std::vector<Channel> random_strategy_sample(std::uint64_t seed,
                                            std::size_t num_inputs,
                                            std::size_t num_outputs,
                                            std::size_t count);
std::vector<Channel> random_strategy_sample(
    std::uint64_t seed, std::vector<std::string> input_labels,
    std::vector<std::string> output_labels, std::size_t count);

}  // namespace alphaleak::oracle
