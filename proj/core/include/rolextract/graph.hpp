#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rolextract {

enum class GraphKind { Unweighted, Signed, Weighted };

std::string_view to_string(GraphKind kind);

/// Dense adjacency matrix of a directed graph. Entry (i, j) is the weight of
/// the edge i -> j. The kind tag constrains the admissible entries:
/// {0,1} for Unweighted, {-1,0,1} for Signed, any finite real for Weighted.
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(Eigen::MatrixXd entries, GraphKind kind);

  /// Tags the matrix with the narrowest kind its entries allow.
  static Adjacency infer(Eigen::MatrixXd entries);

  Eigen::Index size() const { return entries_.rows(); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  GraphKind kind() const { return kind_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// Nodes whose row and column are both entirely zero.
  std::vector<int> disconnected_nodes() const;
  bool ideal_eligible() const { return disconnected_nodes().empty(); }

  std::size_t edge_count() const;
  bool is_zero() const;

  /// Entrywise absolute value, tagged Unweighted when the result is binary.
  Adjacency absolute() const;
  /// The {0,1} pattern of nonzero entries.
  Adjacency support() const;

 private:
  Eigen::MatrixXd entries_;
  GraphKind kind_ = GraphKind::Unweighted;
};

/// Binary q x q matrix describing which roles point to which.
class RoleMatrix {
 public:
  RoleMatrix() = default;
  explicit RoleMatrix(Eigen::MatrixXd entries);

  static RoleMatrix identity(int q);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  friend bool operator==(const RoleMatrix& a, const RoleMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
};

inline constexpr int kUnassigned = -1;

/// Node-to-role map. Labels are 0-based role indices, or kUnassigned for nodes
/// left out of every role (disconnected nodes). Optional per-node signs in
/// {-1,+1} describe signed ideal graphs, where the indicator matrix carries the
/// sign of each node in its single nonzero.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::vector<int> labels, int num_roles, std::vector<int> signs = {});

  /// Builds the assignment of an ideal graph given in block form: block
  /// position p (0-based, roles laid out consecutively by `sizes`) holds node
  /// perm[p]. An empty perm means the identity. Signs, when given, are listed
  /// in block position order like the rows of the indicator matrix.
  static Assignment from_blocks(std::span<const int> sizes, std::span<const int> perm = {},
                                std::span<const int> signs = {});

  int num_nodes() const { return static_cast<int>(labels_.size()); }
  int num_roles() const { return num_roles_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(int node) const { return labels_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& sizes() const { return sizes_; }

  bool is_signed() const { return !signs_.empty(); }
  const std::vector<int>& signs() const { return signs_; }
  int sign(int node) const { return signs_.empty() ? 1 : signs_[static_cast<std::size_t>(node)]; }
  Assignment with_signs(std::vector<int> signs) const;
  Assignment unsigned_copy() const;

  std::vector<int> unassigned() const;
  /// Members of each role in increasing node order.
  std::vector<std::vector<int>> members() const;
  /// Assigned nodes ordered by role, then by node index (the permutation P).
  std::vector<int> permutation() const;
  /// The n x q indicator PZ, signed when signs are present; unassigned rows are zero.
  Eigen::MatrixXd indicator() const;

  /// Same grouping of nodes up to relabeling of roles; signs are ignored.
  bool same_partition(const Assignment& other) const;
  /// Relabels roles in order of their first member.
  Assignment canonical() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> labels_;
  std::vector<int> sizes_;
  std::vector<int> signs_;
  int num_roles_ = 0;
};

/// Diagonal +-1 matrix Q stored as its diagonal.
class SignMatrix {
 public:
  explicit SignMatrix(std::vector<int> diagonal);

  const std::vector<int>& diagonal() const { return diagonal_; }
  int operator[](std::size_t i) const { return diagonal_[i]; }
  std::size_t size() const { return diagonal_.size(); }
  /// Q M Q.
  Eigen::MatrixXd conjugate(const Eigen::MatrixXd& m) const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::vector<int> diagonal_;
};

/// (PZ) B (PZ)^T for an assignment; rows and columns of unassigned nodes are zero.
Eigen::MatrixXd ideal_matrix(const RoleMatrix& roles, const Assignment& assignment);

/// A = (PZ) B (PZ)^T from block sizes, a permutation (empty = identity) and
/// optional signs in block position order. Rejects empty roles and a perm that
/// is not a bijection; with require_connected, also rejects results that have
/// disconnected nodes.
Adjacency build_ideal(const RoleMatrix& roles, std::span<const int> sizes,
                      std::span<const int> perm = {}, std::span<const int> signs = {},
                      bool require_connected = false);

/// True when [B B^T] has no zero row and no two parallel rows. Non-binary input
/// is tested for parallelism within relative tolerance 1e-12.
bool is_minimal_role_matrix(const Eigen::MatrixXd& roles);
inline bool is_minimal_role_matrix(const RoleMatrix& roles) {
  return is_minimal_role_matrix(roles.matrix());
}

struct MinimalForm {
  RoleMatrix roles;
  Assignment assignment;
};

/// Drops roles with an all-zero row and column in B (their nodes become
/// unassigned) and merges roles with identical rows of [B B^T]. The ideal
/// matrix (PZ)B(PZ)^T is unchanged and the returned role matrix is minimal.
MinimalForm minimalize(const RoleMatrix& roles, const Assignment& assignment);

/// Finds Q with |A| = QAQ by 2-coloring the graph of nonzero entries, where an
/// entry A_ij forces q_i q_j = sign(A_ij). The lowest-numbered node of each
/// connected component gets +1. Returns nullopt on an inconsistent cycle.
std::optional<SignMatrix> checkerboard_signature(const Adjacency& adjacency);

/// DAD with D = diag(d); every d_i must be strictly positive.
Adjacency apply_rank_one_weights(const Adjacency& adjacency, std::span<const double> weights);

}  // namespace rolextract
