#include "oracles.hpp"

#include <rolextract/generators.hpp>
#include <rolextract/linalg.hpp>
#include <rolextract/similarity.hpp>

#include <gtest/gtest.h>

using namespace rolextract;

namespace {

Adjacency binary(const Eigen::MatrixXd& m) { return Adjacency(m, GraphKind::Unweighted); }

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace

TEST(Gamma, MatchesDefinition) {
  const Eigen::MatrixXd a = oracle::random_binary(5, 0.4, 1);
  const Eigen::MatrixXd x = oracle::random_binary(5, 0.5, 2);
  const Eigen::MatrixXd xs = (x + x.transpose()) / 2;
  EXPECT_LT(rel_diff(gamma(a, xs), a * xs * a.transpose() + a.transpose() * xs * a), 1e-14);
  EXPECT_THROW(gamma(a, Eigen::MatrixXd::Zero(4, 4)), std::invalid_argument);
}

TEST(BetaBound, SingleEdgeHasRadiusOne) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = 1;
  EXPECT_NEAR(beta_bound(binary(a)), 1.0, 1e-9);
  EXPECT_NEAR(oracle::kronecker_radius(a), 1.0, 1e-12);
}

TEST(BetaBound, SymmetricTwoCycleHasRadiusTwo) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  EXPECT_NEAR(beta_bound(binary(a)), 2.0, 1e-9);
}

TEST(BetaBound, MatchesKroneckerEigensolve) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 11);
    const Eigen::MatrixXd a = oracle::random_nonzero_binary(n, 0.35, 100 + seed);
    const double expected = oracle::kronecker_radius(a);
    EXPECT_NEAR(beta_bound(binary(a)), expected, 1e-8 * std::max(1.0, expected)) << "seed " << seed;
  }
}

TEST(BetaBound, ZeroGraphIsRejected) {
  EXPECT_THROW(beta_bound(binary(Eigen::MatrixXd::Zero(3, 3))), std::invalid_argument);
}

TEST(Iterate, MatchesSeriesOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const Eigen::MatrixXd a = oracle::random_nonzero_binary(n, 0.4, seed);
    const double beta2 = 0.5 / oracle::kronecker_radius(a);
    for (int k = 1; k <= 5; ++k) {
      EXPECT_LT(rel_diff(iterate(binary(a), beta2, k).S, oracle::series_similarity(a, beta2, k)), 1e-12);
    }
  }
}

TEST(Iterate, RankDeficientExample) {
  Eigen::MatrixXd b(3, 3);
  b << 0, 0, 0, 1, 0, 1, 1, 0, 1;
  Eigen::MatrixXd s1(3, 3);
  s1 << 2, 0, 2, 0, 2, 2, 2, 2, 4;
  EXPECT_EQ(iterate(binary(b), 0.1, 1).S, s1);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(linalg::numerical_rank(iterate(binary(b), 0.1, k).S), 2);
}

TEST(PatternCounts, PartialSums) {
  const Eigen::MatrixXd a = oracle::random_nonzero_binary(6, 0.3, 9);
  const double beta2 = 0.3 / oracle::kronecker_radius(a);
  const auto counts = pattern_counts(binary(a), 4);
  ASSERT_EQ(counts.size(), 4u);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(6, 6);
  double w = 1.0;
  for (const auto& c : counts) {
    sum += w * c.N;
    w *= beta2;
    EXPECT_LT(rel_diff(sum, iterate(binary(a), beta2, c.ell).S), 1e-12);
  }
  EXPECT_EQ(counts[0].N, a * a.transpose() + a.transpose() * a);
}

TEST(FixedPoint, ConvergesBelowBoundAndSolvesFixedPointEquation) {
  const Eigen::MatrixXd a = oracle::random_nonzero_binary(8, 0.3, 5);
  const double beta2 = 0.9 / beta_bound(binary(a));
  const SimilarityState s = fixed_point(binary(a), beta2);
  EXPECT_TRUE(s.converged);
  const Eigen::MatrixXd rhs = gamma(a, Eigen::MatrixXd::Identity(8, 8) + beta2 * s.S);
  EXPECT_LT(rel_diff(s.S, rhs), 1e-8);
}

TEST(FixedPoint, RejectsInadmissibleBeta) {
  const Eigen::MatrixXd a = oracle::random_nonzero_binary(6, 0.4, 3);
  const double rho = beta_bound(binary(a));
  EXPECT_THROW(fixed_point(binary(a), 1.1 / rho), InadmissibleBeta);
  try {
    fixed_point(binary(a), 1.1 / rho);
  } catch (const InadmissibleBeta& e) {
    EXPECT_NEAR(e.bound(), 1.0 / rho, 1e-12);
  }
}

TEST(FixedPoint, ReportsNonConvergenceWithLastState) {
  const Eigen::MatrixXd a = oracle::random_nonzero_binary(6, 0.4, 3);
  const double beta2 = 0.99 / beta_bound(binary(a));
  try {
    fixed_point(binary(a), beta2, 1e-14, 3);
    FAIL() << "expected SimilarityNotConverged";
  } catch (const SimilarityNotConverged& e) {
    EXPECT_EQ(e.last_state().k, 3);
    EXPECT_FALSE(e.last_state().converged);
  }
}

TEST(Iterate, MonotoneInLoewnerOrder) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd a = oracle::random_nonzero_binary(7, 0.3, 50 + seed);
    const double beta2 = 0.8 / beta_bound(binary(a));
    Eigen::MatrixXd prev = iterate(binary(a), beta2, 1).S;
    for (int k = 2; k <= 6; ++k) {
      const Eigen::MatrixXd next = iterate(binary(a), beta2, k).S;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(next - prev);
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9 * linalg::singular_values(next).front());
      prev = next;
    }
  }
}

TEST(Structures, BipartiteSimilarityIsBlockDiagonal) {
  const GroundTruth g = generate_structure(StructureKind::BipartiteCommunities, {{3, 4, 2, 5}, {}, {}});
  const Eigen::MatrixXd s = iterate(g.adjacency, 0.5 / beta_bound(g.adjacency), 4).S;
  // Left side = roles 0,1 (7 nodes), right side = roles 2,3.
  EXPECT_TRUE(s.topRightCorner(7, 7).isZero(0.0));
  EXPECT_TRUE(s.bottomLeftCorner(7, 7).isZero(0.0));
}

TEST(Structures, CheckerboardSimilarityIsConjugate) {
  const GroundTruth g = generate_structure(StructureKind::SignedExample, {});
  const auto q = checkerboard_signature(g.adjacency);
  ASSERT_TRUE(q);
  const double beta2 = 0.5 / beta_bound(g.adjacency);
  for (int k = 1; k <= 5; ++k) {
    const Eigen::MatrixXd s = iterate(g.adjacency, beta2, k).S;
    EXPECT_LT(rel_diff(q->conjugate(s), s.cwiseAbs()), 1e-14);
    EXPECT_LT(rel_diff(iterate(g.adjacency.absolute(), beta2, k).S, s.cwiseAbs()), 1e-14);
  }
}

TEST(Structures, RankOneWeightedScaling) {
  const Eigen::MatrixXd a = oracle::random_nonzero_binary(7, 0.4, 77);
  std::vector<double> d{0.5, 1.0, 2.0, 1.5, 0.75, 3.0, 1.25};
  const Adjacency aw = apply_rank_one_weights(binary(a), d);
  const Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(d.data(), 7);
  const double beta2 = 0.6 / beta_bound(binary(a));
  for (int k = 1; k <= 5; ++k) {
    const Eigen::MatrixXd s = iterate(binary(a), beta2, k).S;
    const Eigen::MatrixXd expected = dv.asDiagonal() * s * dv.asDiagonal();
    EXPECT_LT(rel_diff(scaled_iterate(aw, d, beta2, k).S, expected), 1e-10);
  }
  const SimilarityState fp = scaled_fixed_point(aw, d, beta2);
  const Eigen::MatrixXd expected = dv.asDiagonal() * fixed_point(binary(a), beta2).S * dv.asDiagonal();
  EXPECT_LT(rel_diff(fp.S, expected), 1e-8);
}
