#include "alphaleak/simplex.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "testutil.hpp"

namespace alphaleak {
namespace {

using test::bsc;

TEST(DistTest, MakeValidatesAndKeepsSymmetricCase) {
  const Dist d = Dist::make({"a", "b"}, {0.5, 0.5}, 1e-9);
  EXPECT_DOUBLE_EQ(d.prob(0), 0.5);
  EXPECT_DOUBLE_EQ(d.prob(1), 0.5);
}

TEST(DistTest, RejectsUnnormalized) {
  EXPECT_THROW(Dist::make({"a", "b"}, {0.5, 0.6}, 1e-9), NotNormalized);
}

TEST(DistTest, RenormalizesWithinTolerance) {
  const Dist d = Dist::make({"a", "b"}, {0.500000001, 0.499999999}, 1e-6);
  double sum = 0.0;
  for (double p : d.probs()) sum += p;
  EXPECT_EQ(sum, 1.0);
}

TEST(DistTest, RejectsNegativeMass) {
  EXPECT_THROW(Dist::make({"a", "b"}, {1.1, -0.1}, 1e-9), NegativeMass);
}

TEST(DistTest, RejectsDuplicateLabels) {
  EXPECT_THROW(Dist::make({"a", "a"}, {0.5, 0.5}, 1e-9), DuplicateLabel);
}

TEST(DistTest, RejectsLengthMismatch) {
  EXPECT_THROW(Dist::make({"a"}, {0.5, 0.5}, 1e-9), DimensionMismatch);
}

TEST(ChannelTest, RowsMustBeDistributions) {
  EXPECT_THROW(Channel::make({{0.5, 0.6}, {0.5, 0.5}}), NotNormalized);
  EXPECT_THROW(Channel::make({{1.2, -0.2}, {0.5, 0.5}}), NegativeMass);
}

TEST(OutputMarginalTest, IdentityChannelKeepsUniform) {
  const Dist out = output_marginal(Dist::uniform(2), Channel::identity(2));
  EXPECT_DOUBLE_EQ(out.prob(0), 0.5);
  EXPECT_DOUBLE_EQ(out.prob(1), 0.5);
}

TEST(OutputMarginalTest, BscOnSkewedPrior) {
  const Dist out = output_marginal(Dist::make({0.8, 0.2}), bsc(0.25));
  EXPECT_NEAR(out.prob(0), 0.65, 1e-15);
  EXPECT_NEAR(out.prob(1), 0.35, 1e-15);
}

TEST(OutputMarginalTest, RejectsLabelMismatch) {
  EXPECT_THROW(output_marginal(Dist::make({0.5, 0.5}, "z"), bsc(0.25)),
               DimensionMismatch);
}

TEST(PosteriorTest, NoiselessChannelIsCertain) {
  const Dist post = posterior(Dist::uniform(2), Channel::identity(2), 0);
  EXPECT_DOUBLE_EQ(post.prob(0), 1.0);
  EXPECT_DOUBLE_EQ(post.prob(1), 0.0);
}

TEST(PosteriorTest, BayesRuleOnBsc) {
  const Dist post = posterior(Dist::uniform(2), bsc(0.25), 0);
  EXPECT_NEAR(post.prob(0), 0.75, 1e-15);
  EXPECT_NEAR(post.prob(1), 0.25, 1e-15);
}

TEST(PosteriorTest, DegeneratePriorStaysDegenerate) {
  const Dist prior = Dist::make({1.0, 0.0});
  for (std::size_t y = 0; y < 2; ++y) {
    const Dist post = posterior(prior, bsc(0.25), y);
    EXPECT_DOUBLE_EQ(post.prob(0), 1.0);
    EXPECT_DOUBLE_EQ(post.prob(1), 0.0);
  }
}

TEST(PosteriorTest, ZeroMassOutputThrows) {
  // Output y1 is unreachable: both rows put everything on y0.
  const Channel ch = Channel::make({{1.0, 0.0}, {1.0, 0.0}});
  EXPECT_THROW(posterior(Dist::uniform(2), ch, 1), ZeroProbabilityOutput);
}

TEST(JointTest, EntrywiseProduct) {
  const Joint j = joint(Dist::uniform(2), bsc(0.25));
  EXPECT_NEAR(j.mass(0, 0), 0.375, 1e-15);
  EXPECT_NEAR(j.mass(0, 1), 0.125, 1e-15);
  EXPECT_NEAR(j.mass(1, 0), 0.125, 1e-15);
  EXPECT_NEAR(j.mass(1, 1), 0.375, 1e-15);
}

TEST(JointTest, DegeneratePrior) {
  const Joint j = joint(Dist::make({1.0, 0.0}), bsc(0.25));
  EXPECT_NEAR(j.mass(0, 0), 0.75, 1e-15);
  EXPECT_NEAR(j.mass(0, 1), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(j.mass(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(j.mass(1, 1), 0.0);
}

TEST(JointTest, RowSumsMatchPrior) {
  test::RandomInstances rng(7);
  for (int t = 0; t < 50; ++t) {
    const Dist prior = rng.dist(3);
    const Channel ch = rng.channel(3, 4);
    const Joint j = joint(prior, ch);
    for (std::size_t x = 0; x < 3; ++x) {
      double row = 0.0;
      for (std::size_t y = 0; y < 4; ++y) row += j.mass(x, y);
      EXPECT_NEAR(row, prior.prob(x), 1e-12);
    }
  }
}

TEST(ScaledDistTest, IdentityAtOne) {
  const Dist p = Dist::make({0.8, 0.2});
  const Dist scaled = scaled_dist(p, Order(1.0));
  EXPECT_DOUBLE_EQ(scaled.prob(0), 0.8);
  EXPECT_DOUBLE_EQ(scaled.prob(1), 0.2);
}

TEST(ScaledDistTest, SquareTilt) {
  const Dist scaled = scaled_dist(Dist::make({0.8, 0.2}), Order(2.0));
  EXPECT_NEAR(scaled.prob(0), 16.0 / 17.0, 1e-12);
  EXPECT_NEAR(scaled.prob(1), 1.0 / 17.0, 1e-12);
}

TEST(ScaledDistTest, UniformIsFixedPoint) {
  const Dist scaled = scaled_dist(Dist::uniform(2), Order(7.0));
  EXPECT_NEAR(scaled.prob(0), 0.5, 1e-15);
  EXPECT_NEAR(scaled.prob(1), 0.5, 1e-15);
}

TEST(ScaledDistTest, ZeroOrderIsUniformOverSupport) {
  const Dist scaled = scaled_dist(Dist::make({0.7, 0.0, 0.3}), Order(0.0));
  EXPECT_DOUBLE_EQ(scaled.prob(0), 0.5);
  EXPECT_DOUBLE_EQ(scaled.prob(1), 0.0);
  EXPECT_DOUBLE_EQ(scaled.prob(2), 0.5);
}

TEST(ScaledDistTest, InfiniteOrderRejected) {
  EXPECT_THROW(scaled_dist(Dist::uniform(2), Order::infinity()),
               UnsupportedOrder);
}

TEST(SupportTest, ExactPositiveEntries) {
  const Dist p = Dist::make({"a", "b", "c"}, {0.5, 0.5, 0.0});
  const EventSubset s = support(p);
  EXPECT_TRUE(s.contains("a"));
  EXPECT_TRUE(s.contains("b"));
  EXPECT_FALSE(s.contains("c"));
  EXPECT_EQ(support(Dist::make({1.0, 0.0})).members(),
            std::vector<std::string>{"x0"});
  EXPECT_EQ(support(Dist::uniform(4)).members().size(), 4u);
}

TEST(EventSubsetTest, EmptyRejected) {
  EXPECT_THROW(EventSubset::of(std::vector<std::string>{}),
               EmptyConditioningSet);
}

// Bayes decomposition: sum_y P_Y(y) P_{X|Y=y}(x) recovers the prior.
TEST(SimplexProperty, PosteriorMarginalReconstructsPrior) {
  test::RandomInstances rng(11);
  for (int t = 0; t < 100; ++t) {
    const Dist prior = rng.dist(4);
    const Channel ch = rng.channel(4, 3);
    const Dist py = output_marginal(prior, ch);
    std::vector<double> recovered(4, 0.0);
    for (std::size_t y = 0; y < 3; ++y) {
      if (py.prob(y) == 0.0) continue;
      const Dist post = posterior(prior, ch, y);
      for (std::size_t x = 0; x < 4; ++x) {
        recovered[x] += py.prob(y) * post.prob(x);
      }
    }
    for (std::size_t x = 0; x < 4; ++x) {
      EXPECT_NEAR(recovered[x], prior.prob(x), 1e-12);
    }
  }
}

// Tilting commutes with normalization of unnormalized weights.
TEST(SimplexProperty, TiltCommutesWithNormalization) {
  test::RandomInstances rng(13);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> weights(3);
    double sum = 0.0;
    for (double& w : weights) {
      w = 10.0 * rng.uniform() + 0.01;
      sum += w;
    }
    std::vector<double> normalized = weights;
    for (double& w : normalized) w /= sum;

    const double a = 3.0 * rng.uniform() + 0.1;
    const Dist tilted = scaled_dist(Dist::make(normalized, "x", 1e-6), Order(a));

    std::vector<double> tilted_raw(3);
    double tilted_sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      tilted_raw[i] = std::pow(weights[i], a);
      tilted_sum += tilted_raw[i];
    }
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(tilted.prob(i), tilted_raw[i] / tilted_sum, 1e-12);
    }
  }
}

// scaled_dist(scaled_dist(p, a), b) = scaled_dist(p, a*b).
TEST(SimplexProperty, TiltComposesMultiplicatively) {
  test::RandomInstances rng(17);
  for (int t = 0; t < 50; ++t) {
    const Dist p = rng.dist(4);
    const double a = 2.5 * rng.uniform() + 0.2;
    const double b = 2.5 * rng.uniform() + 0.2;
    const Dist twice = scaled_dist(scaled_dist(p, Order(a)), Order(b));
    const Dist once = scaled_dist(p, Order(a * b));
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(twice.prob(i), once.prob(i), 1e-12);
    }
  }
}

TEST(ComposeTest, MatrixProduct) {
  const Channel attr = Channel::make(default_labels(2, "u"),
                                     default_labels(2, "x"),
                                     {{0.9, 0.1}, {0.1, 0.9}});
  const Channel composed = compose(attr, bsc(0.25));
  EXPECT_NEAR(composed.prob(0, 0), 0.7, 1e-15);
  EXPECT_NEAR(composed.prob(0, 1), 0.3, 1e-15);
  EXPECT_NEAR(composed.prob(1, 0), 0.3, 1e-15);
  EXPECT_NEAR(composed.prob(1, 1), 0.7, 1e-15);
}

}  // namespace
}  // namespace alphaleak
