#pragma once

#include "rolextract/errors.hpp"
#include "rolextract/graph.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace rolextract {

/// Dense neighborhood pattern similarity iterate S_k.
struct SimilarityState {
  Eigen::MatrixXd S;
  int k = 0;
  double beta2 = 0.0;
  bool converged = false;
};

/// Number of common target nodes over all neighborhood patterns of length ell.
struct PatternCount {
  Eigen::MatrixXd N;
  int ell = 0;
};

class SimilarityNotConverged : public ConvergenceError {
 public:
  SimilarityNotConverged(SimilarityState last, double relative_change);
  const SimilarityState& last_state() const noexcept { return last_; }

 private:
  SimilarityState last_;
};

/// Gamma_A[X] = A X A^T + A^T X A.
Eigen::MatrixXd gamma(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x);
inline Eigen::MatrixXd gamma(const Adjacency& a, const Eigen::MatrixXd& x) {
  return gamma(a.matrix(), x);
}

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iterations = 10000;
};

/// Spectral radius of X -> A X A^T + A^T X A, i.e. rho(A (x) A + A^T (x) A^T).
/// Power iteration on symmetric iterates from X0 = I with Frobenius
/// normalization. The operator is symmetric, so its radius is read off two
/// consecutive steps, which stays correct when -rho is also an eigenvalue.
/// Iterates live in span{range A, range A^T}, so the iteration runs on the
/// compression of A to that subspace. Admissible beta^2 are those below 1/rho.
double beta_bound(const Adjacency& a, const PowerIterationOptions& options = {});

/// 0.81 / beta_bound(a): beta at 90% of its admissible limit.
double default_beta2(const Adjacency& a);

/// S_1 = Gamma_A[I], S_{j+1} = Gamma_A[I + beta2 S_j], run for k steps.
SimilarityState iterate(const Adjacency& a, double beta2, int k);

/// Iterates until ||S_{k+1} - S_k||_F <= tol ||S_k||_F. Throws InadmissibleBeta
/// when beta2 >= 1 / beta_bound(a) and SimilarityNotConverged after max_k steps.
SimilarityState fixed_point(const Adjacency& a, double beta2, double tol = 1e-10, int max_k = 10000);

/// N_1 = A A^T + A^T A, N_l = A N_{l-1} A^T + A^T N_{l-1} A for l <= ell_max.
std::vector<PatternCount> pattern_counts(const Adjacency& a, int ell_max);

/// Similarity of a rank-one weighted graph A_W = D A D, keeping S^D_k = D S_k D:
///   S^D_1     = A_W D^-2 A_W^T + A_W^T D^-2 A_W
///   S^D_{k+1} = A_W M A_W^T + A_W^T M A_W,  M = D^-2 + beta2 D^-2 S^D_k D^-2.
SimilarityState scaled_iterate(const Adjacency& weighted, std::span<const double> weights, double beta2,
                               int k);
SimilarityState scaled_fixed_point(const Adjacency& weighted, std::span<const double> weights, double beta2,
                                   double tol = 1e-10, int max_k = 10000);

}  // namespace rolextract
