#pragma once

#include "rolextract/errors.hpp"
#include "rolextract/graph.hpp"

#include <Eigen/Dense>

#include <span>

namespace rolextract {

/// Factored similarity iterate S_k ~= U U^T with U = Q diag(sigma), Q^T Q = I
/// and sigma descending. sigma are the singular values of S_k^{1/2}.
struct LowRankState {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  int k = 0;
  double beta2 = 0.0;
  double trunc_tol = 0.0;
  bool converged = false;

  int rank() const { return static_cast<int>(U.cols()); }
  /// Q, the orthonormal column basis of U.
  Eigen::MatrixXd basis() const;
  /// U U^T.
  Eigen::MatrixXd dense() const;
};

class LowRankNotConverged : public ConvergenceError {
 public:
  LowRankNotConverged(LowRankState last, double relative_change);
  const LowRankState& last_state() const noexcept { return last_; }

 private:
  LowRankState last_;
};

/// Runs k steps of the factored recurrence. With A = W S V^T truncated at
/// trunc_tol, S_1 = F_1 F_1^T for F_1 = [W S, V S], and
///   S_{j+1} = F F^T,  F = [W S, V S, beta A U_j, beta A^T U_j],
/// recompressed every step by QR + SVD, discarding singular values below
/// trunc_tol * sigma_max.
LowRankState lowrank_iterate(const Adjacency& a, double beta2, int k, double trunc_tol = 1e-10);

/// Factored iteration until ||U_{k+1} U_{k+1}^T - U_k U_k^T||_F <= tol ||U_k U_k^T||_F.
/// Throws InadmissibleBeta like fixed_point and LowRankNotConverged after max_k steps.
LowRankState lowrank_fixed_point(const Adjacency& a, double beta2, double tol = 1e-10, int max_k = 10000,
                                 double trunc_tol = 1e-10);

/// Role count suggested by a descending spectrum: the largest r (1-based) with
/// sigma[r+1] / sigma[r] < gap_ratio, i.e. the last sharp drop. A dominant
/// leading value does not hide the gap that follows it. Pairs of zeros are
/// skipped; the full length is returned when no ratio qualifies.
int estimate_rank(std::span<const double> sigma, double gap_ratio);

}  // namespace rolextract
