#include "alphaleak/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "logspace.hpp"

namespace alphaleak::oracle {

using detail::kNegInf;
using detail::kPosInf;
using detail::log_or_neg_inf;

namespace {

// Grid search beyond these caps explodes combinatorially; projected ascent
// covers the larger instances.
constexpr std::size_t kMaxGridDimension = 4;
constexpr std::size_t kMaxGridSteps = 2000;
constexpr double kInteriorFloor = 1e-12;

void check_grid_limits(const GridSpec& spec, const char* where) {
  if (spec.dimension > kMaxGridDimension || spec.steps > kMaxGridSteps) {
    throw InvalidSpec(std::string(where) +
                      ": grid search is limited to dimension <= 4 and "
                      "resolution >= 1/2000");
  }
}

/// Euclidean projection onto the probability simplex.
void project_to_simplex(std::vector<double>& v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
}

void floor_interior(std::vector<double>& v) {
  double sum = 0.0;
  for (double& x : v) {
    x = std::max(x, kInteriorFloor);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

// ---------------------------------------------------------------------------
// The f~-mean objective over candidate beliefs phi, shared by the lattice
// scan and the ascent. Scores are arranged so that larger is always better:
// log S for alpha > 1, -log S for the alpha in (0,1) minimization, and the
// objective itself at the extended orders.
// ---------------------------------------------------------------------------

struct FtildeProblem {
  const Dist& p;
  const Dist& q;
  Order alpha;
  std::vector<std::size_t> supp;  // supp(p)
  std::vector<double> log_p;
  std::vector<double> log_q;
  double c = 0.0;      // exponent (alpha-1)/alpha for the generic branch
  double kappa = 0.0;  // alpha/(alpha-1)
  mutable std::vector<double> scratch_;

  FtildeProblem(const Dist& p_in, const Dist& q_in, const Order& a)
      : p(p_in), q(q_in), alpha(a) {
    if (p.labels() != q.labels()) {
      throw DimensionMismatch("oracle: alphabets differ");
    }
    log_p.resize(p.size());
    log_q.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      log_p[i] = log_or_neg_inf(p.prob(i));
      log_q[i] = log_or_neg_inf(q.prob(i));
      if (p.prob(i) > 0.0) {
        if (q.prob(i) == 0.0) {
          throw AbsoluteContinuityViolation(
              "oracle: reference q vanishes on supp(p)");
        }
        supp.push_back(i);
      }
    }
    scratch_.resize(supp.size());
    if (alpha.is_generic()) {
      c = (alpha.value() - 1.0) / alpha.value();
      kappa = alpha.value() / (alpha.value() - 1.0);
    }
  }

  double score(std::span<const double> phi) const {
    if (alpha.is_zero()) {
      double worst = kPosInf;
      for (std::size_t i : supp) {
        worst = std::min(worst, log_or_neg_inf(phi[i]) - log_q[i]);
      }
      return worst;
    }
    if (alpha.is_one()) {
      double sum = 0.0;
      for (std::size_t i : supp) {
        if (phi[i] == 0.0) return kNegInf;
        sum += p.prob(i) * (std::log(phi[i]) - log_q[i]);
      }
      return sum;
    }
    if (alpha.is_infinite()) {
      std::size_t n = 0;
      for (std::size_t i : supp) {
        scratch_[n++] = log_p[i] + log_or_neg_inf(phi[i]) - log_q[i];
      }
      return detail::log_sum_exp(scratch_);
    }
    const double log_s = log_inner_sum(phi);
    return c > 0.0 ? log_s : -log_s;
  }

  // log S with S = sum over supp(p) of p (phi/q)^c.
  double log_inner_sum(std::span<const double> phi) const {
    std::size_t n = 0;
    for (std::size_t i : supp) {
      const double lphi = log_or_neg_inf(phi[i]);
      scratch_[n++] = lphi == kNegInf ? (c > 0.0 ? kNegInf : kPosInf)
                                      : log_p[i] + c * (lphi - log_q[i]);
    }
    return detail::log_sum_exp(scratch_);
  }

  // Certified bound, in nats, on how far the objective at the incumbent
  // sits below the true simplex maximum. `resolution` > 0 additionally
  // admits lattice-rounding (Holder) bounds; pass 0 for a continuous
  // incumbent.
  double gap_nats(std::span<const double> phi, double score_at_phi,
                  double resolution) const {
    if (std::isinf(score_at_phi)) return kPosInf;

    if (alpha.is_zero()) {
      // min_x phi/q is Lipschitz with constant max 1/q over supp(p).
      if (resolution <= 0.0) return kPosInf;
      const double m_best = std::exp(score_at_phi);
      double lip = 0.0;
      for (std::size_t i : supp) lip = std::max(lip, 1.0 / q.prob(i));
      return std::log1p(lip * resolution / m_best);
    }

    if (alpha.is_one()) {
      // Concave objective, gradient p/phi: Frank-Wolfe duality gap.
      double dot = 0.0;
      double mx = 0.0;
      for (std::size_t i : supp) {
        const double g = p.prob(i) / phi[i];
        dot += g * phi[i];
        mx = std::max(mx, g);
      }
      return std::max(0.0, mx - dot);
    }

    if (alpha.is_infinite()) {
      // log of a linear form: the simplex maximum is the best vertex,
      // and vertices are lattice points.
      double log_t_star = kNegInf;
      for (std::size_t i : supp) {
        log_t_star = std::max(log_t_star, log_p[i] - log_q[i]);
      }
      return std::max(0.0, log_t_star - score_at_phi);
    }

    const double log_s = c > 0.0 ? score_at_phi : -score_at_phi;
    const double s_best = std::exp(log_s);
    bool boundary = false;
    double dot = 0.0;
    double mx = 0.0;
    double mn = 0.0;
    for (std::size_t i : supp) {
      if (phi[i] <= 0.0) {
        boundary = true;
        continue;
      }
      const double g =
          c * std::exp(log_p[i] + (c - 1.0) * std::log(phi[i]) - c * log_q[i]);
      dot += g * phi[i];
      mx = std::max(mx, g);
      mn = std::min(mn, g);
    }

    if (c > 0.0) {
      // Concave maximization of S. |S(u) - S(v)| <= A ||u - v||_inf^c
      // globally, which covers lattice incumbents pinned to the boundary
      // where the gradient blows up.
      double holder = kPosInf;
      if (resolution > 0.0) {
        double a_const = 0.0;
        for (std::size_t i : supp) {
          a_const += std::exp(log_p[i] - c * log_q[i]);
        }
        holder =
            kappa * std::log1p(a_const * std::pow(resolution, c) / s_best);
      }
      if (boundary) return holder;
      const double fw = kappa * std::log1p(std::max(0.0, mx - dot) / s_best);
      return std::min(fw, holder);
    }

    // Convex minimization of S; a finite score implies an interior
    // incumbent on supp(p).
    if (boundary) return kPosInf;
    const double gap_s = std::max(0.0, dot - mn);
    if (gap_s >= s_best) return kPosInf;
    return -kappa * (std::log(s_best) - std::log(s_best - gap_s));
  }

  // Gradient of the maximized quantity (S, -S, or the alpha = 1 sum).
  void ascent_gradient(std::span<const double> phi,
                       std::vector<double>& grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    if (alpha.is_one()) {
      for (std::size_t i : supp) grad[i] = p.prob(i) / phi[i];
      return;
    }
    for (std::size_t i : supp) {
      const double g =
          c * std::exp(log_p[i] + (c - 1.0) * std::log(phi[i]) - c * log_q[i]);
      grad[i] = c > 0.0 ? g : -g;
    }
  }
};

}  // namespace

GridSpec GridSpec::make(std::size_t dimension, double resolution) {
  if (dimension == 0) {
    throw DimensionMismatch("GridSpec: dimension must be positive");
  }
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw ResolutionNotUnitFraction("GridSpec: resolution must be in (0, 1]");
  }
  const double k_real = 1.0 / resolution;
  const double k_round = std::round(k_real);
  if (std::abs(k_real - k_round) > 1e-9 * k_real) {
    throw ResolutionNotUnitFraction(
        "GridSpec: resolution must be 1/k for integer k");
  }
  GridSpec spec;
  spec.dimension = dimension;
  spec.steps = static_cast<std::size_t>(k_round);
  spec.resolution = 1.0 / static_cast<double>(spec.steps);
  return spec;
}

std::size_t SimplexGrid::size() const {
  // C(k + d - 1, d - 1) via interleaved multiply/divide.
  const std::size_t k = spec_.steps;
  const std::size_t r = spec_.dimension - 1;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    result = result * (k + i) / i;
  }
  return result;
}

bool SimplexGrid::advance(std::vector<std::size_t>& comp) {
  const std::size_t d = comp.size();
  if (d == 1) return false;
  for (std::size_t i = d - 1; i-- > 0;) {
    std::size_t right_mass = 0;
    for (std::size_t j = i + 1; j < d; ++j) right_mass += comp[j];
    if (right_mass > 0) {
      comp[i] += 1;
      for (std::size_t j = i + 1; j < d; ++j) comp[j] = 0;
      comp[d - 1] = right_mass - 1;
      return true;
    }
  }
  return false;
}

SimplexStream::SimplexStream(const GridSpec& spec,
                             std::vector<std::string> labels)
    : spec_(spec), labels_(std::move(labels)), comp_(spec.dimension, 0) {
  if (labels_.empty()) labels_ = default_labels(spec.dimension, "p");
  if (labels_.size() != spec_.dimension) {
    throw DimensionMismatch("SimplexStream: labels vs dimension");
  }
  comp_[spec_.dimension - 1] = spec_.steps;
}

std::optional<Dist> SimplexStream::next() {
  if (done_) return std::nullopt;
  std::vector<double> probs(spec_.dimension);
  const double inv_k = 1.0 / static_cast<double>(spec_.steps);
  for (std::size_t i = 0; i < spec_.dimension; ++i) {
    probs[i] = static_cast<double>(comp_[i]) * inv_k;
  }
  done_ = !SimplexGrid::advance(comp_);
  return Dist::make(labels_, std::move(probs));
}

SimplexStream enumerate_simplex(const GridSpec& spec,
                                std::vector<std::string> labels) {
  return SimplexStream(spec, std::move(labels));
}

OptResult brute_force_max_ftilde(const Dist& q, const Dist& p,
                                 const Order& alpha, const GridSpec& spec) {
  if (spec.dimension != p.size()) {
    throw DimensionMismatch(
        "brute_force_max_ftilde: grid dimension vs alphabet size");
  }
  check_grid_limits(spec, "brute_force_max_ftilde");
  const FtildeProblem problem(p, q, alpha);

  double best_score = kNegInf;
  std::vector<double> best_phi(p.size(), 0.0);
  std::size_t visited = 0;
  SimplexGrid grid(spec);
  grid.for_each([&](std::span<const double> phi) {
    ++visited;
    const double s = problem.score(phi);
    if (s > best_score || visited == 1) {
      best_score = s;
      std::copy(phi.begin(), phi.end(), best_phi.begin());
    }
  });

  OptResult result{Dist::make(p.labels(), best_phi, 1e-6),
                   {0.0},
                   visited,
                   problem.gap_nats(best_phi, best_score, spec.resolution),
                   true};
  result.value = ftilde_gain(result.argmax, q, p, alpha);
  return result;
}

OptResult projected_ascent_max_ftilde(const Dist& q, const Dist& p,
                                      const Order& alpha, double tol,
                                      std::size_t max_iter) {
  if (alpha.is_infinite() || alpha.is_zero()) {
    throw UnsupportedOrder(
        "projected_ascent_max_ftilde: finite alpha > 0 only");
  }
  const FtildeProblem problem(p, q, alpha);
  const std::size_t d = p.size();

  std::vector<double> phi(d, 1.0 / static_cast<double>(d));
  double score = problem.score(phi);
  std::vector<double> grad(d), candidate(d);
  double step = 1.0;
  std::size_t iter = 0;
  bool converged = false;

  for (; iter < max_iter; ++iter) {
    if (problem.gap_nats(phi, score, 0.0) <= tol) {
      converged = true;
      break;
    }
    problem.ascent_gradient(phi, grad);
    bool improved = false;
    while (step > 1e-18) {
      for (std::size_t i = 0; i < d; ++i) {
        candidate[i] = phi[i] + step * grad[i];
      }
      project_to_simplex(candidate);
      floor_interior(candidate);
      const double cand_score = problem.score(candidate);
      if (cand_score > score) {
        phi.swap(candidate);
        score = cand_score;
        step = std::min(step * 2.0, 1e6);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;  // line search exhausted at this iterate
  }

  const double gap = problem.gap_nats(phi, score, 0.0);
  OptResult result{Dist::make(p.labels(), phi, 1e-6),
                   {0.0},
                   iter,
                   gap,
                   converged || gap <= tol};
  result.value = ftilde_gain(result.argmax, q, p, alpha);
  return result;
}

OptResult sibson_infradius_check(const Dist& prior, const Channel& channel,
                                 const Order& alpha, const GridSpec& spec) {
  if (alpha.is_zero() || alpha.is_infinite()) {
    throw UnsupportedOrder("sibson_infradius_check: finite alpha > 0 only");
  }
  if (prior.labels() != channel.input_labels()) {
    throw DimensionMismatch("sibson_infradius_check: prior vs channel");
  }
  if (spec.dimension != channel.num_outputs()) {
    throw DimensionMismatch(
        "sibson_infradius_check: grid dimension vs output alphabet");
  }
  check_grid_limits(spec, "sibson_infradius_check");

  const std::size_t ny = channel.num_outputs();
  const double a = alpha.value();

  // Collapsed objective: the f-mean over rows of D_alpha(row || Q) equals
  //   (1/(alpha-1)) log sum_y M_y Q_y^(1-alpha),
  //   M_y = sum_x p(x) P(y|x)^alpha,
  // for generic alpha, and C - sum_y P_Y(y) log Q_y at alpha = 1.
  std::vector<double> log_m(ny, kNegInf);
  std::vector<double> py(ny, 0.0);
  double alpha_one_const = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    detail::LogSumExpAccumulator acc;
    for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
      const double px = prior.prob(x);
      const double pyx = channel.prob(x, y);
      if (px == 0.0 || pyx == 0.0) continue;
      py[y] += px * pyx;
      if (alpha.is_one()) {
        alpha_one_const += px * pyx * std::log(pyx);
      } else {
        acc.add(std::log(px) + a * std::log(pyx));
      }
    }
    if (!alpha.is_one()) log_m[y] = acc.result();
  }

  const bool minimize = alpha.is_one() || a > 1.0;
  std::vector<double> terms(ny);
  auto objective = [&](std::span<const double> q_point) -> double {
    if (alpha.is_one()) {
      double value = alpha_one_const;
      for (std::size_t y = 0; y < ny; ++y) {
        if (py[y] == 0.0) continue;
        if (q_point[y] == 0.0) return kPosInf;
        value -= py[y] * std::log(q_point[y]);
      }
      return value;
    }
    for (std::size_t y = 0; y < ny; ++y) {
      if (log_m[y] == kNegInf) {
        terms[y] = kNegInf;
        continue;
      }
      const double lq = log_or_neg_inf(q_point[y]);
      terms[y] =
          (lq == kNegInf && a > 1.0) ? kPosInf : log_m[y] + (1.0 - a) * lq;
    }
    return detail::log_sum_exp(terms);
  };

  double best_obj = minimize ? kPosInf : kNegInf;
  std::vector<double> best_q(ny, 0.0);
  std::size_t visited = 0;
  SimplexGrid grid(spec);
  grid.for_each([&](std::span<const double> q_point) {
    ++visited;
    const double obj = objective(q_point);
    if ((minimize ? obj < best_obj : obj > best_obj) || visited == 1) {
      best_obj = obj;
      std::copy(q_point.begin(), q_point.end(), best_q.begin());
    }
  });

  // Certified gap at the incumbent, in nats.
  double gap = kPosInf;
  if (alpha.is_one()) {
    if (std::isfinite(best_obj)) {
      double worst_ratio = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        if (py[y] > 0.0) worst_ratio = std::max(worst_ratio, py[y] / best_q[y]);
      }
      gap = std::max(0.0, worst_ratio - 1.0);
    }
  } else if (std::isfinite(best_obj)) {
    // best_obj = log g at the incumbent; gradients are taken relative to g.
    double rel_dot = 0.0;
    double rel_mx = 0.0;
    double rel_mn = 0.0;
    bool unbounded = false;
    for (std::size_t y = 0; y < ny; ++y) {
      if (log_m[y] == kNegInf) continue;
      if (best_q[y] == 0.0) {
        unbounded = true;  // only reachable in the concave alpha < 1 case
        continue;
      }
      const double rel_g =
          (1.0 - a) * std::exp(log_m[y] - a * std::log(best_q[y]) - best_obj);
      rel_dot += rel_g * best_q[y];
      rel_mx = std::max(rel_mx, rel_g);
      rel_mn = std::min(rel_mn, rel_g);
    }
    if (a > 1.0) {
      const double rel_gap = std::max(0.0, rel_dot - rel_mn);
      gap = rel_gap < 1.0 ? -std::log1p(-rel_gap) / (a - 1.0) : kPosInf;
    } else {
      double fw = kPosInf;
      if (!unbounded) {
        fw = std::log1p(std::max(0.0, rel_mx - rel_dot)) / (1.0 - a);
      }
      // Global Holder fallback: |g(u) - g(v)| <= (sum M_y) ||u - v||^(1-a).
      double m_total = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        if (log_m[y] != kNegInf) m_total += std::exp(log_m[y]);
      }
      const double holder =
          std::log1p(m_total * std::pow(spec.resolution, 1.0 - a) /
                     std::exp(best_obj)) /
          (1.0 - a);
      gap = std::min(fw, holder);
    }
  }

  OptResult result{Dist::make(channel.output_labels(), best_q, 1e-6),
                   {0.0},
                   visited,
                   gap,
                   true};
  // Re-evaluate through the public composition the check certifies.
  std::vector<GainValue> divergences;
  divergences.reserve(channel.num_inputs());
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    divergences.push_back(
        prior.prob(x) > 0.0
            ? renyi_divergence(channel.row_dist(x), result.argmax, alpha)
            : GainValue{0.0});
  }
  result.value = kn_mean(divergences, prior, KNMeanSpec::f(alpha));
  return result;
}

std::vector<double> SimplexSampler::next_point(std::size_t dim) {
  std::vector<double> w(dim);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& v : w) {
      v = -std::log1p(-next_uniform());
      total += v;
    }
  } while (total == 0.0);
  for (double& v : w) v /= total;
  return w;
}

StrategySampler::StrategySampler(std::uint64_t seed,
                                 std::vector<std::string> input_labels,
                                 std::vector<std::string> output_labels)
    : sampler_(seed),
      input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)) {}

StrategySampler::StrategySampler(std::uint64_t seed, std::size_t num_inputs,
                                 std::size_t num_outputs)
    : StrategySampler(seed, default_labels(num_inputs, "y"),
                      default_labels(num_outputs, "x")) {}

Channel StrategySampler::next() {
  std::vector<std::vector<double>> rows;
  rows.reserve(input_labels_.size());
  for (std::size_t i = 0; i < input_labels_.size(); ++i) {
    rows.push_back(sampler_.next_point(output_labels_.size()));
  }
  return Channel::make(input_labels_, output_labels_, std::move(rows), 1e-6);
}

std::vector<Channel> random_strategy_sample(std::uint64_t seed,
                                            std::size_t num_inputs,
                                            std::size_t num_outputs,
                                            std::size_t count) {
  return random_strategy_sample(seed, default_labels(num_inputs, "y"),
                                default_labels(num_outputs, "x"), count);
}

std::vector<Channel> random_strategy_sample(
    std::uint64_t seed, std::vector<std::string> input_labels,
    std::vector<std::string> output_labels, std::size_t count) {
  StrategySampler sampler(seed, std::move(input_labels),
                          std::move(output_labels));
  std::vector<Channel> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace alphaleak::oracle
