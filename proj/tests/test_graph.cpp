#include "oracles.hpp"

#include <rolextract/graph.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace rolextract;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

const Eigen::MatrixXd kSigned = mat({{0, 0, -1, 0, 0, 0},
                                     {0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, -1, 1, 1},
                                     {1, -1, 0, 0, 0, 0},
                                     {-1, 1, 0, 0, 0, 0},
                                     {-1, 1, 0, 0, 0, 0}});

}  // namespace

TEST(Adjacency, RejectsMalformedMatrices) {
  EXPECT_THROW(Adjacency(Eigen::MatrixXd::Zero(2, 3), GraphKind::Unweighted), std::invalid_argument);
  EXPECT_THROW(Adjacency(mat({{0, 2}, {0, 0}}), GraphKind::Unweighted), std::invalid_argument);
  EXPECT_THROW(Adjacency(mat({{0, -1}, {0, 0}}), GraphKind::Unweighted), std::invalid_argument);
  EXPECT_THROW(Adjacency(mat({{0, 0.5}, {0, 0}}), GraphKind::Signed), std::invalid_argument);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Adjacency(nan, GraphKind::Weighted), std::invalid_argument);
}

TEST(Adjacency, InferPicksNarrowestKind) {
  EXPECT_EQ(Adjacency::infer(mat({{0, 1}, {1, 0}})).kind(), GraphKind::Unweighted);
  EXPECT_EQ(Adjacency::infer(mat({{0, -1}, {1, 0}})).kind(), GraphKind::Signed);
  EXPECT_EQ(Adjacency::infer(mat({{0, 0.5}, {1, 0}})).kind(), GraphKind::Weighted);
}

TEST(Adjacency, DisconnectedNodesNeedZeroRowAndColumn) {
  const Adjacency a(mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), GraphKind::Unweighted);
  EXPECT_EQ(a.disconnected_nodes(), std::vector<int>{2});
  EXPECT_FALSE(a.ideal_eligible());
  EXPECT_EQ(a.edge_count(), 1u);
}

TEST(Adjacency, AbsoluteAndSupport) {
  const Adjacency a(kSigned, GraphKind::Signed);
  EXPECT_EQ(a.absolute().kind(), GraphKind::Unweighted);
  EXPECT_EQ(a.absolute().matrix(), kSigned.cwiseAbs());
  const Adjacency w(mat({{0, 2.5}, {-0.5, 0}}), GraphKind::Weighted);
  EXPECT_EQ(w.support().matrix(), mat({{0, 1}, {1, 0}}));
}

TEST(RoleMatrix, MustBeSquareBinary) {
  EXPECT_THROW(RoleMatrix(mat({{0, 2}, {0, 0}})), std::invalid_argument);
  EXPECT_THROW(RoleMatrix(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  EXPECT_EQ(RoleMatrix::identity(3).matrix(), Eigen::MatrixXd::Identity(3, 3));
}

TEST(Assignment, ValidatesLabelsAndSigns) {
  EXPECT_THROW(Assignment({0, 2}, 2), std::invalid_argument);
  EXPECT_THROW(Assignment({0, 0}, 2), std::invalid_argument);  // role 1 empty
  EXPECT_THROW(Assignment({0, 1}, 2, {1, 0}), std::invalid_argument);
  EXPECT_THROW(Assignment({0, 1}, 2, {1}), std::invalid_argument);
  const Assignment ok({1, kUnassigned, 0, 1}, 2);
  EXPECT_EQ(ok.sizes(), (std::vector<int>{1, 2}));
  EXPECT_EQ(ok.unassigned(), std::vector<int>{1});
}

TEST(Assignment, FromBlocksPlacesNodesByPermutation) {
  const std::vector<int> sizes{2, 1};
  const std::vector<int> perm{2, 0, 1};
  const Assignment a = Assignment::from_blocks(sizes, perm);
  // Block positions 0,1 are role 0 and hold nodes 2,0; position 2 holds node 1.
  EXPECT_EQ(a.labels(), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(a.permutation(), (std::vector<int>{0, 2, 1}));
  EXPECT_THROW(Assignment::from_blocks(sizes, std::vector<int>{0, 0, 1}), std::invalid_argument);
}

TEST(Assignment, IndicatorCarriesSigns) {
  const Assignment a({0, 0, 1}, 2, {1, -1, -1});
  EXPECT_EQ(a.indicator(), mat({{1, 0}, {-1, 0}, {0, -1}}));
  EXPECT_EQ(a.unsigned_copy().indicator(), mat({{1, 0}, {1, 0}, {0, 1}}));
}

TEST(Assignment, CanonicalAndPartitionEquality) {
  const Assignment a({1, 1, 0, 2}, 3);
  const Assignment c = a.canonical();
  EXPECT_EQ(c.labels(), (std::vector<int>{0, 0, 1, 2}));
  EXPECT_TRUE(a.same_partition(c));
  EXPECT_FALSE(a.same_partition(Assignment({0, 1, 1, 2}, 3)));
}

TEST(IdealMatrix, MatchesExplicitProduct) {
  const RoleMatrix b(mat({{0, 1}, {1, 1}}));
  const Assignment z({1, 0, 1, 0}, 2);
  const Eigen::MatrixXd expected = z.indicator() * b.matrix() * z.indicator().transpose();
  EXPECT_EQ(ideal_matrix(b, z), expected);
  const std::vector<int> sizes{2, 2};
  EXPECT_EQ(build_ideal(b, sizes).matrix(), mat({{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}}));
}

TEST(IdealMatrix, RequireConnectedRejectsIsolatedRoles) {
  const RoleMatrix b(mat({{1, 0}, {0, 0}}));
  const std::vector<int> sizes{1, 1};
  EXPECT_NO_THROW(build_ideal(b, sizes));
  EXPECT_THROW(build_ideal(b, sizes, {}, {}, true), std::invalid_argument);
}

TEST(MinimalRoleMatrix, DetectsZeroAndEqualRows) {
  EXPECT_TRUE(is_minimal_role_matrix(mat({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}})));
  EXPECT_TRUE(is_minimal_role_matrix(mat({{0, 0, 0}, {1, 0, 1}, {1, 0, 1}})));
  // Roles 0 and 1 have the same row and the same column.
  EXPECT_FALSE(is_minimal_role_matrix(mat({{1, 1}, {1, 1}})));
  // Role 1 has a zero row and a zero column.
  EXPECT_FALSE(is_minimal_role_matrix(mat({{1, 0}, {0, 0}})));
  // Non-binary parallel rows of [B B^T].
  EXPECT_FALSE(is_minimal_role_matrix(mat({{1, 2}, {2, 4}})));
}

TEST(MinimalRoleMatrix, MinimalizeKeepsIdealMatrix) {
  const RoleMatrix b(mat({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}));
  const Assignment z({0, 1, 2, 0}, 3);
  const MinimalForm m = minimalize(b, z);
  EXPECT_TRUE(is_minimal_role_matrix(m.roles));
  EXPECT_EQ(m.roles.size(), 1);
  EXPECT_EQ(m.assignment.unassigned(), std::vector<int>{2});
  EXPECT_EQ(ideal_matrix(m.roles, m.assignment), ideal_matrix(b, z));
}

TEST(Checkerboard, SixNodeSignedExample) {
  const auto q = checkerboard_signature(Adjacency(kSigned, GraphKind::Signed));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->diagonal(), (std::vector<int>{1, -1, -1, 1, -1, -1}));
  EXPECT_EQ(q->conjugate(kSigned), kSigned.cwiseAbs());
}

TEST(Checkerboard, RejectsOddNegativeCycle) {
  EXPECT_FALSE(checkerboard_signature(Adjacency(mat({{0, -1, 0}, {0, 0, -1}, {-1, 0, 0}}), GraphKind::Signed)));
  EXPECT_FALSE(checkerboard_signature(Adjacency(mat({{-1, 0}, {0, 0}}), GraphKind::Signed)));
}

TEST(Checkerboard, AgreesWithExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    rolextract::CounterRng rng(seed);
    const int n = 2 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u = rng.uniform();
        a(i, j) = u < 0.2 ? -1.0 : (u < 0.45 ? 1.0 : 0.0);
      }
    // Half the trials start from a balanced graph so both outcomes are covered.
    if (seed % 2 == 0) {
      std::vector<int> s(static_cast<std::size_t>(n));
      for (auto& v : s) v = rng.uniform() < 0.5 ? 1 : -1;
      a = SignMatrix(s).conjugate(a.cwiseAbs());
    }
    const auto found = checkerboard_signature(Adjacency(a, GraphKind::Signed));
    const auto brute = oracle::brute_force_signature(a);
    ASSERT_EQ(found.has_value(), brute.has_value()) << "seed " << seed;
    if (found) {
      EXPECT_EQ(found->conjugate(a), a.cwiseAbs()) << "seed " << seed;
    }
  }
}

TEST(RankOneWeights, ScalesRowsAndColumns) {
  const Adjacency a(mat({{0, 1}, {1, 1}}), GraphKind::Unweighted);
  const std::vector<double> d{2.0, 0.5};
  const Adjacency w = apply_rank_one_weights(a, d);
  EXPECT_EQ(w.kind(), GraphKind::Weighted);
  EXPECT_EQ(w.matrix(), mat({{0, 1}, {1, 0.25}}));
  EXPECT_THROW(apply_rank_one_weights(a, std::vector<double>{1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(apply_rank_one_weights(a, std::vector<double>{1.0}), std::invalid_argument);
}
