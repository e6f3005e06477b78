#pragma once

#include "rolextract/graph.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rolextract {

/// Independent entrywise flips of a binary graph: a 1 becomes 0 with
/// probability p_in, a 0 becomes 1 with probability p_out.
struct PerturbationModel {
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

/// A + Delta under the model. Entry (i, j) uses draw i * n + j of
/// CounterRng(seed), so the result does not depend on evaluation order.
Adjacency perturb(const Adjacency& a, const PerturbationModel& model);

/// How p_in and p_out are read when forming an expectation.
///   Occupancy: p_in is the edge probability inside B = 1 blocks, p_out the edge
///              probability inside B = 0 blocks.
///   Flip:      the perturbation reading, where p_in removes and p_out adds edges,
///              so B = 1 blocks have edge probability 1 - p_in.
enum class ProbabilityConvention { Occupancy, Flip };

/// (PZ)[a B + p_out (11^T - B)](PZ)^T with a = p_in (Occupancy) or 1 - p_in (Flip).
Eigen::MatrixXd expected_adjacency(const RoleMatrix& roles, const Assignment& assignment, double p_in,
                                   double p_out, ProbabilityConvention convention);
Eigen::MatrixXd expected_adjacency(const RoleMatrix& roles, std::span<const int> sizes, double p_in,
                                   double p_out, ProbabilityConvention convention);

/// E(Delta) = (PZ)[-p_in B + p_out (11^T - B)](PZ)^T under the flip model.
Eigen::MatrixXd expected_perturbation(const RoleMatrix& roles, const Assignment& assignment, double p_in,
                                      double p_out);

struct SpectrumOptions {
  /// nullopt selects 0.81 / rho.
  std::optional<double> beta2;
  /// Recurrence depth; nullopt iterates to the fixed point.
  std::optional<int> steps;
  int top_m = 10;
  double gap_ratio = 0.5;
  double trunc_tol = 1e-10;
  double fixed_point_tol = 1e-10;
  int max_k = 10000;
};

struct SpectrumReport {
  /// Leading top_m singular values, descending, zero padded.
  std::vector<double> sigma_A;
  std::vector<double> sigma_S_half;
  std::vector<double> sigma_S;
  /// estimate_rank applied to sigma_S.
  int gap_index = 0;
  double beta2 = 0.0;
  int depth = 0;
  bool fixed_point = false;
};

/// Singular values of A (dense SVD) and of S^{1/2} and S, read off the
/// factored iterate: sigma(S^{1/2}) = sigma(U) and sigma(S) = sigma(U)^2.
SpectrumReport spectrum_report(const Adjacency& a, const SpectrumOptions& options = {});

/// Singular values of N^{1/2} B N^{1/2}, N = diag(sizes): the nonzero singular
/// values of the ideal graph built from B and these role sizes.
std::vector<double> ideal_singular_values(const RoleMatrix& roles, std::span<const int> sizes);

/// Undirected closed form lambda^(k) = lambda sqrt((1 - x^k) / (1 - x)),
/// x = (beta lambda)^2. Requires beta >= 0, lambda >= 0, beta lambda < 1, k >= 1.
double iterated_singular_value(double lambda, double beta, int k);

/// lambda / sqrt(1 - (beta lambda)^2), the k -> infinity value of the above.
double limit_singular_value(double lambda, double beta);

/// (1 - (beta lambda_j)^2) / (1 - (beta lambda_i)^2): the factor by which the
/// squared ratio lambda_i / lambda_j grows between k = 1 and the limit.
double ratio_scaling_factor(double lambda_i, double lambda_j, double beta);

/// For 0 < lambda_j < lambda_i and beta lambda_i < 1, checks that
/// lambda_i^(k) / lambda_j^(k) strictly increases for k = 1..k_max, that the
/// scaling factor exceeds 1, and that its derivative in beta is positive.
/// Throws std::invalid_argument when the preconditions fail.
bool check_ratio_monotonicity(double lambda_i, double lambda_j, double beta, int k_max);

}  // namespace rolextract
