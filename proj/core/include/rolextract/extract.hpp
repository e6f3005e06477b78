#pragma once

#include "rolextract/graph.hpp"
#include "rolextract/lowrank.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace rolextract {

/// Groups rows of a factor by the lines they span. Rows are scaled to unit
/// length with their largest-magnitude entry made positive; a row joins the
/// earliest-created cluster whose representative lies within angle_tol
/// radians (comparing lines, so u and -u coincide), else it opens a new one.
/// Rows with norm below 1e-9 of the largest row norm are left unassigned.
/// Labels follow the first node of each cluster.
Assignment cluster_rows(const Eigen::MatrixXd& factor, double angle_tol = 1e-6);

/// Spherical k-means on the unit-normalized rows of `embedding` with k-means++
/// seeding from a CounterRng stream, best of `restarts` runs by total cosine
/// similarity. Zero rows are left unassigned; labels follow the first node of
/// each cluster, and clusters that end up empty are dropped.
Assignment spherical_kmeans(const Eigen::MatrixXd& embedding, int clusters, std::uint64_t seed = 0,
                            int restarts = 8);

/// B_IJ = 1 iff the signed block sum z_I^T A_IJ z_J exceeds n_I n_J / 2; a tie gives 0.
/// This minimizes the extraction cost over binary B for a fixed assignment.
RoleMatrix reconstruct_role_matrix(const Adjacency& a, const Assignment& assignment);

/// ||A - (PZ) B (PZ)^T||_F^2.
double extraction_cost(const Adjacency& a, const Assignment& assignment, const RoleMatrix& roles);

enum class ClusterMethod { Auto, Angular, SphericalKMeans };

std::string_view to_string(ClusterMethod method);

struct ExtractOptions {
  /// beta^2 for the similarity recurrence; nullopt selects 0.81 / rho.
  std::optional<double> beta2;
  /// Number of recurrence steps; nullopt iterates to the fixed point.
  std::optional<int> steps = 6;
  double fixed_point_tol = 1e-10;
  int max_k = 10000;
  double trunc_tol = 1e-10;
  double angle_tol = 1e-6;
  /// Gap threshold on sigma(S) used to centre the k-means sweep.
  double gap_ratio = 0.5;
  /// Largest role count the k-means sweep considers.
  int max_roles = 32;
  ClusterMethod method = ClusterMethod::Auto;
  std::uint64_t seed = 0;
  int kmeans_restarts = 8;
};

struct ExtractionResult {
  int q_est = 0;
  Assignment assignment;
  RoleMatrix roles;
  double residual = 0.0;
  std::vector<int> unassigned;

  double beta2 = 0.0;
  int steps = 0;
  bool fixed_point = false;
  int factor_rank = 0;
  ClusterMethod method_used = ClusterMethod::Angular;
  bool checkerboard = false;
};

/// Similarity factor -> row clustering -> role matrix -> cost.
///
/// Signed input with a checkerboard signature Q is processed as |A| = QAQ and
/// the signs of Q are attached to the returned assignment. Weighted input is
/// clustered on its weights, while the role matrix and residual are fitted to
/// its {0,1} support. Disconnected nodes are reported in `unassigned`.
///
/// ClusterMethod::Auto uses angular grouping when it yields an exact
/// (zero-residual) fit that is a genuine compression: fewer roles than
/// connected nodes, or a similarity of deficient rank. Otherwise it sweeps
/// spherical k-means over role counts estimate_rank +- 2, merges roles that
/// come out structurally equivalent, and keeps the cheapest fit (ties go to
/// fewer roles).
ExtractionResult extract_roles(const Adjacency& a, const ExtractOptions& options = {});

/// Roles whose members carry both signs are split in two (+ part first).
struct SignedRoles {
  /// Generalized role matrix B^ = Z^ B Z^T, entries in {-1, 0, 1}.
  Eigen::MatrixXd role_matrix;
  /// Representative rows Z^: row s of split role (r, sign) is sign * e_r.
  Eigen::MatrixXd representatives;
  /// Unsigned assignment of nodes to split roles; A = Z' B^ Z'^T.
  Assignment assignment;
  std::vector<int> parent_role;
  std::vector<int> role_sign;
};

SignedRoles split_signed_roles(const Assignment& assignment, const RoleMatrix& roles);

}  // namespace rolextract
