#include <gtest/gtest.h>

#include <random>

#include "lmo/approximations.hpp"
#include "lmo/profile.hpp"
#include "support/fixtures.hpp"

namespace lmo {
namespace {

using test::example_density;

void expect_row(const ComplexityProfile& p, std::size_t t0, std::size_t t1, std::size_t t2, std::size_t t3) {
  EXPECT_EQ(p.hypotheses, t0);
  EXPECT_EQ(p.t(1), t1);
  EXPECT_EQ(p.t(2), t2);
  EXPECT_EQ(p.t(3), t3);
}

TEST(Profile, ExampleDensity) {
  const auto p = profile(example_density());
  expect_row(p, 8, 3, 3, 1);
  EXPECT_FALSE(p.correlation_loss);
}

TEST(Profile, DeltaGlmbApproximation) {
  expect_row(profile(dglmb_approximate(example_density())), 8, 12, 0, 0);
}

TEST(Profile, CaFactorization) {
  const auto p = profile(ca_factorize(example_density()));
  expect_row(p, 4, 3, 1, 0);
  EXPECT_FALSE(p.correlation_loss);
}

TEST(Profile, CaFactorizationOfDeltaGlmb) {
  expect_row(profile(ca_factorize(dglmb_approximate(example_density()))), 4, 5, 0, 0);
}

TEST(Profile, OutOfRangeDimensionsAreZero) {
  const auto p = profile(example_density());
  EXPECT_EQ(p.t(0), 0u);
  EXPECT_EQ(p.t(7), 0u);
}

TEST(Profile, CaFactorizationNeverStoresMoreComponentsPerDimension) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = test::random_density(rng, {.max_components = 1});
    const auto original = profile(d);
    for (double threshold : {1e-6, 0.2, 1.0}) {
      const auto f = profile(ca_factorize(d, {}, threshold));
      for (std::size_t k = 2; k <= d.label_space().size(); ++k) EXPECT_LE(f.t(k), original.t(k));
    }
  }
}

TEST(LossChecks, ProductForm) {
  EXPECT_TRUE(product_form_loses_correlation(example_density()));
  const auto diag = to_labeled(dglmb_approximate(example_density()));
  EXPECT_FALSE(product_form_loses_correlation(diag));
}

TEST(LossChecks, Partition) {
  const auto d = example_density();
  EXPECT_FALSE(partition_loses_correlation(analyze(d)));
  EXPECT_TRUE(partition_loses_correlation(analyze(d, {}, 1.0)));
}

TEST(LossChecks, Grouping) {
  const auto a = GaussianMixtureBlock::single(test::block({"1"}, {0}, {{1}}));
  const auto b = GaussianMixtureBlock::single(test::block({"2"}, {3}, {{1}}));
  const auto c = GaussianMixtureBlock::single(test::block({"2"}, {-3}, {{1}}));
  DeltaGlmbDensity d{{"1", "2"}, 1, {}};
  d.hypotheses.push_back({{"1", "2"}, "x", 0.5, {{"1", a}, {"2", b}}});
  d.hypotheses.push_back({{"1", "2"}, "y", 0.5, {{"1", a}, {"2", b}}});
  EXPECT_FALSE(grouping_loses_correlation(d));
  d.hypotheses[1].densities.at("2") = c;
  EXPECT_TRUE(grouping_loses_correlation(d));
  // With one object per hypothesis, mixing over histories is exact.
  DeltaGlmbDensity single{{"1"}, 1, {{{"1"}, "x", 0.5, {{"1", a}}}, {{"1"}, "y", 0.5, {{"1", a}}}}};
  single.hypotheses[1].densities.at("1") = GaussianMixtureBlock::single(test::block({"1"}, {5}, {{1}}));
  EXPECT_FALSE(grouping_loses_correlation(single));
}

}  // namespace
}  // namespace lmo
