#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rolextract::linalg {

/// Singular values in descending order.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

/// Count of singular values above rel_tol * largest.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

/// Orthonormal basis of the column space, truncated at rel_tol * largest singular value.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

/// Largest principal angle (radians) between the spans of two orthonormal bases.
/// Returns pi/2 when the dimensions differ.
double max_principal_angle(const Eigen::MatrixXd& basis_a, const Eigen::MatrixXd& basis_b);

/// ||U U^T - V V^T||_F without forming either product, accurate even when the
/// two Gram matrices agree to many digits.
double gram_difference_norm(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

/// Thin SVD M = left * diag(values) * right^T, truncated at rel_tol * largest.
struct ThinSvd {
  Eigen::MatrixXd left;
  Eigen::VectorXd values;
  Eigen::MatrixXd right;
};
ThinSvd thin_svd(const Eigen::MatrixXd& m, double rel_tol);

/// Returns U = Q diag(sigma) with U U^T = F F^T, dropping singular values of F
/// below rel_tol * largest. Cost O(rows * cols^2) when F is tall.
struct GramFactor {
  Eigen::MatrixXd factor;
  Eigen::VectorXd sigma;
};
GramFactor compress_gram_factor(const Eigen::MatrixXd& f, double rel_tol);

}  // namespace rolextract::linalg
