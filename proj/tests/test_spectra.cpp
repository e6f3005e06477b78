#include "oracles.hpp"

#include <rolextract/generators.hpp>
#include <rolextract/linalg.hpp>
#include <rolextract/similarity.hpp>
#include <rolextract/spectra.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace rolextract;

TEST(Perturb, ExtremeProbabilities) {
  const GroundTruth g = generate_structure(StructureKind::BlockCycle, {{3, 4, 2}, {}, {}});
  EXPECT_EQ(perturb(g.adjacency, {0.0, 0.0, 1}).matrix(), g.adjacency.matrix());
  const Eigen::MatrixXd complement = Eigen::MatrixXd::Ones(9, 9) - g.adjacency.matrix();
  EXPECT_EQ(perturb(g.adjacency, {1.0, 1.0, 1}).matrix(), complement);
  EXPECT_THROW(perturb(g.adjacency, {1.5, 0.0, 1}), std::invalid_argument);
  EXPECT_THROW(perturb(generate_structure(StructureKind::SignedExample, {}).adjacency, {0.1, 0.1, 1}),
               std::invalid_argument);
}

TEST(Perturb, DeterministicPerSeed) {
  const GroundTruth g = generate_structure(StructureKind::Community, {{10, 10}, {}, {}});
  EXPECT_EQ(perturb(g.adjacency, {0.2, 0.2, 9}).matrix(), perturb(g.adjacency, {0.2, 0.2, 9}).matrix());
  EXPECT_NE(perturb(g.adjacency, {0.2, 0.2, 9}).matrix(), perturb(g.adjacency, {0.2, 0.2, 10}).matrix());
}

TEST(Perturb, MeanFlipCountMatchesExpectation) {
  const GroundTruth g = generate_structure(StructureKind::BlockCycle, {{50, 50, 50, 50}, {}, {}});
  const double ones = static_cast<double>(g.adjacency.edge_count());
  const double expected = 0.05 * ones + 0.05 * (200.0 * 200.0 - ones);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    total += (perturb(g.adjacency, {0.05, 0.05, seed}).matrix() - g.adjacency.matrix()).squaredNorm();
  EXPECT_NEAR(total / 200.0, expected, 0.05 * expected);
}

TEST(ExpectedAdjacency, Conventions) {
  const RoleMatrix b = structure_role_matrix(StructureKind::BlockCycle, 4);
  const std::vector<int> sizes{5, 5, 5, 5};
  const Adjacency ideal = build_ideal(b, sizes);
  EXPECT_EQ(expected_adjacency(b, sizes, 1.0, 0.0, ProbabilityConvention::Occupancy), ideal.matrix());
  EXPECT_EQ(expected_adjacency(b, sizes, 0.0, 0.0, ProbabilityConvention::Flip), ideal.matrix());
  const Eigen::MatrixXd flat = expected_adjacency(b, sizes, 0.3, 0.3, ProbabilityConvention::Occupancy);
  EXPECT_TRUE(flat.isApprox(0.3 * Eigen::MatrixXd::Ones(20, 20)));
  EXPECT_EQ(linalg::numerical_rank(flat), 1);

  const Eigen::MatrixXd e = expected_adjacency(b, sizes, 0.9, 0.1, ProbabilityConvention::Occupancy);
  EXPECT_EQ(linalg::numerical_rank(e), 4);
  const auto ours = linalg::singular_values(e);
  const auto ref = oracle::singular_values(e);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ours[i], ref[i], 1e-10 * ref[0]);
  // Flip with p_in = 0.1 is the same matrix as occupancy with p_in = 0.9.
  EXPECT_TRUE(expected_adjacency(b, sizes, 0.1, 0.1, ProbabilityConvention::Flip).isApprox(e));
}

TEST(ExpectedPerturbation, EmpiricalMeanLiesInRoleSpace) {
  const RoleMatrix b = structure_role_matrix(StructureKind::BlockCycle, 4);
  const std::vector<int> sizes{5, 5, 5, 5};
  const Assignment z = Assignment::from_blocks(sizes);
  const Adjacency a = build_ideal(b, sizes);
  const int trials = 600;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(20, 20);
  for (int t = 0; t < trials; ++t) mean += perturb(a, {0.2, 0.1, static_cast<std::uint64_t>(t)}).matrix() - a.matrix();
  mean /= trials;
  const double noise = 0.5 / std::sqrt(static_cast<double>(trials)) * 20.0;
  EXPECT_LE((mean - expected_perturbation(b, z, 0.2, 0.1)).norm(), 5.0 * noise);

  // Orthogonal complement of range(Z).
  const Eigen::MatrixXd uq = linalg::range_basis(z.indicator());
  const Eigen::MatrixXd projector = Eigen::MatrixXd::Identity(20, 20) - uq * uq.transpose();
  const double leak = (projector * mean).norm() / mean.norm();
  // Each entry of the mean has standard error at most 0.5 / sqrt(trials).
  const double sampling = noise / mean.norm();
  EXPECT_LE(leak, 5.0 * sampling);
  EXPECT_LT((projector * expected_perturbation(b, z, 0.2, 0.1)).norm(), 1e-12);
}

TEST(IdealSingularValues, KnownCases) {
  const auto cycle = ideal_singular_values(structure_role_matrix(StructureKind::BlockCycle, 4),
                                           std::vector<int>{200, 100, 100, 200});
  EXPECT_NEAR(cycle[0], 200.0, 1e-9);
  EXPECT_NEAR(cycle[1], std::sqrt(20000.0), 1e-9);
  EXPECT_NEAR(cycle[2], std::sqrt(20000.0), 1e-9);
  EXPECT_NEAR(cycle[3], 100.0, 1e-9);
  const auto ident = ideal_singular_values(RoleMatrix::identity(3), std::vector<int>{7, 7, 7});
  for (double s : ident) EXPECT_NEAR(s, 7.0, 1e-12);
  const auto bip = ideal_singular_values(structure_role_matrix(StructureKind::BipartiteCommunities, 2),
                                         std::vector<int>{2, 3});
  EXPECT_NEAR(bip[0], std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(bip[1], std::sqrt(6.0), 1e-12);
}

TEST(IdealSingularValues, EqualDenseSpectrum) {
  const RoleMatrix b = structure_role_matrix(StructureKind::Overlapping, 4);
  const std::vector<int> sizes{3, 5, 2, 4};
  const auto dense = oracle::singular_values(build_ideal(b, sizes).matrix());
  const auto ideal = ideal_singular_values(b, sizes);
  for (std::size_t i = 0; i < ideal.size(); ++i) EXPECT_NEAR(ideal[i], dense[i], 1e-10 * dense[0]);
}

TEST(ClosedForm, Examples) {
  EXPECT_DOUBLE_EQ(iterated_singular_value(2.0, 0.4, 1), 2.0);
  EXPECT_NEAR(iterated_singular_value(2.0, 0.4, 2), 2.0 * std::sqrt(1.64), 1e-15);
  EXPECT_DOUBLE_EQ(iterated_singular_value(3.0, 0.0, 7), 3.0);
  EXPECT_NEAR(iterated_singular_value(2.0, 0.4, 2000), limit_singular_value(2.0, 0.4), 1e-14);
  EXPECT_THROW(iterated_singular_value(2.0, 0.5, 2), std::invalid_argument);
  EXPECT_THROW(iterated_singular_value(2.0, 0.1, 0), std::invalid_argument);
}

TEST(ClosedForm, RatioMonotonicity) {
  EXPECT_TRUE(check_ratio_monotonicity(2.0, 1.0, 0.4, 20));
  EXPECT_THROW(check_ratio_monotonicity(1.0, 1.0, 0.4, 20), std::invalid_argument);
  EXPECT_THROW(check_ratio_monotonicity(2.0, 1.0, 0.5, 20), std::invalid_argument);
  double previous = 1.0;
  for (double beta = 0.05; beta < 0.46; beta += 0.05) {
    const double factor = ratio_scaling_factor(2.0, 1.0, beta);
    EXPECT_NEAR(factor, (1 - beta * beta) / (1 - 4 * beta * beta), 1e-14);
    EXPECT_GT(factor, previous);
    previous = factor;
  }
}

TEST(ClosedForm, AgreesWithUndirectedRecurrence) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Eigen::MatrixXd a = oracle::random_nonzero_binary(8, 0.3, 700 + seed);
    a = ((a + a.transpose()).array() > 0).cast<double>();
    const Adjacency adj(a, GraphKind::Unweighted);
    const auto alpha = oracle::singular_values(a);
    const double beta = 0.9 / (std::sqrt(2.0) * alpha[0]);
    for (int k = 1; k <= 8; ++k) {
      const auto s = oracle::singular_values(iterate(adj, beta * beta, k).S);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double closed = iterated_singular_value(std::sqrt(2.0) * alpha[i], beta, k);
        EXPECT_NEAR(s[i], closed * closed, 1e-10 * s[0]);
      }
    }
  }
}

TEST(SpectrumReport, IdealSmallBlockCycle) {
  const GroundTruth g = generate_structure(StructureKind::BlockCycle, {{20, 10, 10, 20}, {}, {}});
  SpectrumOptions options;
  options.beta2 = 1.17953e-3;
  const SpectrumReport r = spectrum_report(g.adjacency, options);
  ASSERT_EQ(r.sigma_A.size(), 10u);
  EXPECT_NEAR(r.sigma_A[0], 20.0, 1e-9);
  EXPECT_NEAR(r.sigma_A[3], 10.0, 1e-9);
  EXPECT_NEAR(r.sigma_S_half[0], 38.2436, 1e-3 * 38.2436);
  EXPECT_NEAR(r.sigma_S_half[2], 27.0424, 1e-3 * 27.0424);
  EXPECT_EQ(r.gap_index, 4);
  EXPECT_TRUE(r.fixed_point);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(r.sigma_S[i], r.sigma_S_half[i] * r.sigma_S_half[i]);
}
