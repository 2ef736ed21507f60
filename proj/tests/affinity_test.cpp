#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "pkt/affinity.hpp"
#include "pkt/rng.hpp"
#include "support/oracles.hpp"

namespace pkt {
namespace {

FeatureMatrix random_features(Rng& rng, Eigen::Index n, Eigen::Index d) {
  FeatureMatrix x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x;
}

TEST(JointDensity, Examples) {
  FeatureMatrix same2(2, 2);
  same2 << 1, 2, 1, 2;
  Eigen::MatrixXd j = joint_density(same2, KernelSpec::cosine());
  EXPECT_DOUBLE_EQ(j(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(j(0, 0), 0.0);

  FeatureMatrix same3(3, 2);
  same3 << 1, 1, 1, 1, 1, 1;
  j = joint_density(same3, KernelSpec::cosine());
  EXPECT_NEAR(j(0, 1), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(j(2, 0), 1.0 / 3.0, 1e-15);

  FeatureMatrix ortho(2, 2);
  ortho << 1, 0, 0, 1;
  j = joint_density(ortho, KernelSpec::cosine());
  EXPECT_DOUBLE_EQ(j(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(j(1, 0), 0.25);
}

TEST(JointDensity, RejectsSingleRow) {
  EXPECT_THROW(joint_density(FeatureMatrix::Ones(1, 3), KernelSpec::cosine()),
               std::invalid_argument);
}

TEST(Conditional, IdenticalRowsAreUniform) {
  FeatureMatrix x(3, 2);
  x << 2, 1, 2, 1, 2, 1;
  const auto p = conditional_probabilities(x, KernelSpec::cosine());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(p(i, j), i == j ? 0.0 : 0.5);
  }
}

TEST(Conditional, HandEvaluatedThreePointExample) {
  FeatureMatrix x(3, 2);
  x << 1, 0, 0, 1, std::sqrt(2.0) / 2, std::sqrt(2.0) / 2;
  const auto p = conditional_probabilities(x, KernelSpec::cosine());
  // Column 0 conditions on x1. Frozen from an independent scalar evaluation.
  EXPECT_NEAR(p(1, 0), 0.3693980625181293, 1e-12);
  EXPECT_NEAR(p(2, 0), 0.6306019374818708, 1e-12);
}

TEST(Conditional, TwoSamplesAlwaysSwap) {
  Rng rng(5);
  for (const auto& spec : {KernelSpec::cosine(), KernelSpec::gaussian(4.0)}) {
    const auto p = conditional_probabilities(random_features(rng, 2, 4), spec);
    EXPECT_EQ(p(0, 1), 1.0);
    EXPECT_EQ(p(1, 0), 1.0);
    EXPECT_EQ(p(0, 0), 0.0);
  }
}

TEST(Conditional, MatchesBruteForce) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_features(rng, 2 + static_cast<Eigen::Index>(rng.below(15)), 3);
    for (const auto& spec : {KernelSpec::cosine(), KernelSpec::gaussian(2.0)}) {
      const auto p = conditional_probabilities(x, spec);
      const auto ref = oracle::conditional(x, spec);
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.rows(); ++j) EXPECT_NEAR(p(i, j), ref[i][j], 1e-14);
      }
    }
  }
}

TEST(Conditional, SlotsSumToOne) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_features(rng, 2 + static_cast<Eigen::Index>(rng.below(40)),
                                   2 + static_cast<Eigen::Index>(rng.below(9)));
    EXPECT_LE(conditional_probabilities(x, KernelSpec::cosine()).max_slot_error(), 1e-9);
    EXPECT_LE(conditional_probabilities(x, KernelSpec::gaussian(4.0)).max_slot_error(), 1e-9);
  }
}

TEST(Conditional, PermutationEquivariant) {
  Rng rng(8);
  const auto x = random_features(rng, 9, 4);
  const auto perm = epoch_permutation(9, 3, 0);
  const auto px = gather_rows(x, perm);
  const auto p = conditional_probabilities(x, KernelSpec::cosine());
  const auto pp = conditional_probabilities(px, KernelSpec::cosine());
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      EXPECT_NEAR(pp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                  p(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])),
                  1e-12);
    }
  }
}

TEST(Conditional, DegenerateGaussianSlotThrows) {
  FeatureMatrix x(3, 1);
  x << 0, 1000, 2000;
  EXPECT_THROW(conditional_probabilities(x, KernelSpec::gaussian(1.0)), std::invalid_argument);
}

TEST(Conditional, RejectsNonFinite) {
  FeatureMatrix x = FeatureMatrix::Ones(3, 2);
  x(1, 1) = std::nan("");
  EXPECT_THROW(conditional_probabilities(x, KernelSpec::cosine()), std::invalid_argument);
}

TEST(SampleBatch, PartitionsEveryIndexOnce) {
  const auto chunks = sample_batches(4, 2, 1, 0);
  ASSERT_EQ(chunks.size(), 2u);
  std::multiset<std::size_t> seen;
  for (const auto& c : chunks) seen.insert(c.begin(), c.end());
  EXPECT_EQ(seen, (std::multiset<std::size_t>{0, 1, 2, 3}));
}

TEST(SampleBatch, DeterministicPerSeedAndEpoch) {
  EXPECT_EQ(sample_batches(50, 8, 42, 3), sample_batches(50, 8, 42, 3));
  EXPECT_NE(epoch_permutation(16, 42, 0), epoch_permutation(16, 42, 1));
  EXPECT_NE(epoch_permutation(16, 42, 0), epoch_permutation(16, 43, 0));
}

TEST(SampleBatch, TailHandling) {
  // 11 = 5 + 5 + 1: the single leftover sample is dropped.
  auto chunks = sample_batches(11, 5, 0, 0);
  ASSERT_EQ(chunks.size(), 2u);
  // 12 = 5 + 5 + 2: a two-sample tail is kept.
  chunks = sample_batches(12, 5, 0, 0);
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks.back().size(), 2u);
}

TEST(SampleBatch, Errors) {
  EXPECT_THROW(sample_batches(10, 1, 0, 0), std::invalid_argument);
  EXPECT_THROW(sample_batches(10, 11, 0, 0), std::invalid_argument);
}

}  // namespace
}  // namespace pkt
