#include "rolextract/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace rolextract {

namespace {

bool all_in(const Eigen::MatrixXd& m, std::initializer_list<double> values) {
  if (m.size() == 0) return true;
  return m.unaryExpr([&](double x) {
            return std::find(values.begin(), values.end(), x) != values.end() ? 1.0 : 0.0;
          })
             .minCoeff() > 0.0;
}

void check_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + " must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Unweighted: return "unweighted";
    case GraphKind::Signed: return "signed";
    case GraphKind::Weighted: return "weighted";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Adjacency

Adjacency::Adjacency(Eigen::MatrixXd entries, GraphKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  check_square(entries_, "adjacency matrix");
  if (!entries_.allFinite()) throw std::invalid_argument("adjacency matrix has non-finite entries");
  switch (kind_) {
    case GraphKind::Unweighted:
      if (!all_in(entries_, {0.0, 1.0}))
        throw std::invalid_argument("unweighted adjacency entries must be 0 or 1");
      break;
    case GraphKind::Signed:
      if (!all_in(entries_, {-1.0, 0.0, 1.0}))
        throw std::invalid_argument("signed adjacency entries must be -1, 0 or 1");
      break;
    case GraphKind::Weighted:
      break;
  }
}

Adjacency Adjacency::infer(Eigen::MatrixXd entries) {
  check_square(entries, "adjacency matrix");
  GraphKind kind = GraphKind::Weighted;
  if (all_in(entries, {0.0, 1.0})) {
    kind = GraphKind::Unweighted;
  } else if (all_in(entries, {-1.0, 0.0, 1.0})) {
    kind = GraphKind::Signed;
  }
  return Adjacency(std::move(entries), kind);
}

std::vector<int> Adjacency::disconnected_nodes() const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < size(); ++i) {
    if ((entries_.row(i).array() == 0.0).all() && (entries_.col(i).array() == 0.0).all()) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::size_t Adjacency::edge_count() const {
  return static_cast<std::size_t>((entries_.array() != 0.0).count());
}

bool Adjacency::is_zero() const { return (entries_.array() == 0.0).all(); }

Adjacency Adjacency::absolute() const { return infer(entries_.cwiseAbs()); }

Adjacency Adjacency::support() const {
  return Adjacency((entries_.array() != 0.0).cast<double>().matrix(), GraphKind::Unweighted);
}

// ---------------------------------------------------------------------------
// RoleMatrix

RoleMatrix::RoleMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  check_square(entries_, "role matrix");
  if (!all_in(entries_, {0.0, 1.0})) throw std::invalid_argument("role matrix entries must be 0 or 1");
}

RoleMatrix RoleMatrix::identity(int q) { return RoleMatrix(Eigen::MatrixXd::Identity(q, q)); }

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::vector<int> labels, int num_roles, std::vector<int> signs)
    : labels_(std::move(labels)), signs_(std::move(signs)), num_roles_(num_roles) {
  if (num_roles_ < 0) throw std::invalid_argument("negative role count");
  sizes_.assign(static_cast<std::size_t>(num_roles_), 0);
  for (int l : labels_) {
    if (l == kUnassigned) continue;
    if (l < 0 || l >= num_roles_) {
      throw std::invalid_argument("role label " + std::to_string(l) + " outside [0, " +
                                  std::to_string(num_roles_) + ")");
    }
    ++sizes_[static_cast<std::size_t>(l)];
  }
  for (std::size_t r = 0; r < sizes_.size(); ++r) {
    if (sizes_[r] == 0) throw std::invalid_argument("role " + std::to_string(r) + " is empty");
  }
  if (!signs_.empty()) {
    if (signs_.size() != labels_.size())
      throw std::invalid_argument("signs must have one entry per node");
    for (int s : signs_) {
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    }
  }
}

Assignment Assignment::from_blocks(std::span<const int> sizes, std::span<const int> perm,
                                   std::span<const int> signs) {
  int n = 0;
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("every role needs at least one node");
    n += s;
  }
  std::vector<int> p = perm.empty() ? identity_perm(n) : std::vector<int>(perm.begin(), perm.end());
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("permutation length does not match the node count");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation is not a bijection on 0..n-1");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  if (!signs.empty() && static_cast<int>(signs.size()) != n)
    throw std::invalid_argument("signs must have one entry per node");

  std::vector<int> labels(static_cast<std::size_t>(n));
  std::vector<int> node_signs;
  if (!signs.empty()) node_signs.assign(static_cast<std::size_t>(n), 1);
  int pos = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    for (int j = 0; j < sizes[r]; ++j, ++pos) {
      const auto node = static_cast<std::size_t>(p[static_cast<std::size_t>(pos)]);
      labels[node] = static_cast<int>(r);
      if (!signs.empty()) node_signs[node] = signs[static_cast<std::size_t>(pos)];
    }
  }
  return Assignment(std::move(labels), static_cast<int>(sizes.size()), std::move(node_signs));
}

Assignment Assignment::with_signs(std::vector<int> signs) const {
  return Assignment(labels_, num_roles_, std::move(signs));
}

Assignment Assignment::unsigned_copy() const { return Assignment(labels_, num_roles_); }

std::vector<int> Assignment::unassigned() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == kUnassigned) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> Assignment::members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_roles_));
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != kUnassigned) out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Assignment::permutation() const {
  std::vector<int> out;
  out.reserve(labels_.size());
  for (const auto& group : members()) out.insert(out.end(), group.begin(), group.end());
  return out;
}

Eigen::MatrixXd Assignment::indicator() const {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(num_nodes(), num_roles_);
  for (int i = 0; i < num_nodes(); ++i) {
    if (label(i) != kUnassigned) z(i, label(i)) = sign(i);
  }
  return z;
}

bool Assignment::same_partition(const Assignment& other) const {
  return labels_.size() == other.labels_.size() && canonical().labels_ == other.canonical().labels_;
}

Assignment Assignment::canonical() const {
  std::vector<int> relabel(static_cast<std::size_t>(num_roles_), kUnassigned);
  int next = 0;
  std::vector<int> labels(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int l = labels_[i];
    if (l == kUnassigned) {
      labels[i] = kUnassigned;
      continue;
    }
    auto& mapped = relabel[static_cast<std::size_t>(l)];
    if (mapped == kUnassigned) mapped = next++;
    labels[i] = mapped;
  }
  return Assignment(std::move(labels), num_roles_, signs_);
}

// ---------------------------------------------------------------------------
// SignMatrix

SignMatrix::SignMatrix(std::vector<int> diagonal) : diagonal_(std::move(diagonal)) {
  for (int s : diagonal_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign matrix entries must be +1 or -1");
  }
}

Eigen::MatrixXd SignMatrix::conjugate(const Eigen::MatrixXd& m) const {
  if (static_cast<std::size_t>(m.rows()) != diagonal_.size() || m.rows() != m.cols())
    throw std::invalid_argument("sign matrix dimension mismatch");
  Eigen::VectorXd q(m.rows());
  for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = diagonal_[static_cast<std::size_t>(i)];
  return q.asDiagonal() * m * q.asDiagonal();
}

// ---------------------------------------------------------------------------
// Ideal graphs

Eigen::MatrixXd ideal_matrix(const RoleMatrix& roles, const Assignment& assignment) {
  if (roles.size() != assignment.num_roles())
    throw std::invalid_argument("role matrix size does not match the assignment's role count");
  const int n = assignment.num_nodes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int ri = assignment.label(i);
    if (ri == kUnassigned) continue;
    for (int j = 0; j < n; ++j) {
      const int rj = assignment.label(j);
      if (rj == kUnassigned) continue;
      a(i, j) = assignment.sign(i) * assignment.sign(j) * roles(ri, rj);
    }
  }
  return a;
}

Adjacency build_ideal(const RoleMatrix& roles, std::span<const int> sizes, std::span<const int> perm,
                      std::span<const int> signs, bool require_connected) {
  if (static_cast<int>(sizes.size()) != roles.size())
    throw std::invalid_argument("need one size per role");
  const Assignment assignment = Assignment::from_blocks(sizes, perm, signs);
  Adjacency a(ideal_matrix(roles, assignment), signs.empty() ? GraphKind::Unweighted : GraphKind::Signed);
  if (require_connected && !a.ideal_eligible())
    throw std::invalid_argument("ideal graph has disconnected nodes");
  return a;
}

bool is_minimal_role_matrix(const Eigen::MatrixXd& roles) {
  if (roles.rows() != roles.cols()) throw std::invalid_argument("role matrix must be square");
  const Eigen::Index q = roles.rows();
  Eigen::MatrixXd compound(q, 2 * q);
  compound << roles, roles.transpose();
  constexpr double kTol = 1e-12;
  for (Eigen::Index i = 0; i < q; ++i) {
    const double ni = compound.row(i).squaredNorm();
    if (ni == 0.0) return false;
    for (Eigen::Index j = i + 1; j < q; ++j) {
      const double nj = compound.row(j).squaredNorm();
      const double dot = compound.row(i).dot(compound.row(j));
      // Cauchy-Schwarz slack; exactly zero for equal binary rows.
      if (ni * nj - dot * dot <= kTol * ni * nj) return false;
    }
  }
  return true;
}

MinimalForm minimalize(const RoleMatrix& roles, const Assignment& assignment) {
  if (roles.size() != assignment.num_roles())
    throw std::invalid_argument("role matrix size does not match the assignment's role count");
  const Eigen::MatrixXd& b = roles.matrix();
  const int q = roles.size();

  // target[r] = new role index, or kUnassigned when the role is dropped.
  std::vector<int> target(static_cast<std::size_t>(q), kUnassigned);
  std::vector<int> kept;
  for (int r = 0; r < q; ++r) {
    if ((b.row(r).array() == 0.0).all() && (b.col(r).array() == 0.0).all()) continue;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const int s = kept[k];
      if (b.row(r) == b.row(s) && b.col(r) == b.col(s)) {
        target[static_cast<std::size_t>(r)] = static_cast<int>(k);
        break;
      }
    }
    if (target[static_cast<std::size_t>(r)] == kUnassigned) {
      target[static_cast<std::size_t>(r)] = static_cast<int>(kept.size());
      kept.push_back(r);
    }
  }

  const auto q_new = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd reduced(q_new, q_new);
  for (Eigen::Index i = 0; i < q_new; ++i) {
    for (Eigen::Index j = 0; j < q_new; ++j) {
      reduced(i, j) = b(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]);
    }
  }

  std::vector<int> labels(assignment.labels().size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = assignment.labels()[i];
    labels[i] = l == kUnassigned ? kUnassigned : target[static_cast<std::size_t>(l)];
  }
  return {RoleMatrix(std::move(reduced)),
          Assignment(std::move(labels), static_cast<int>(q_new), assignment.signs())};
}

std::optional<SignMatrix> checkerboard_signature(const Adjacency& adjacency) {
  const Eigen::MatrixXd& a = adjacency.matrix();
  const auto n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    if (a(i, i) < 0.0) return std::nullopt;  // q_i^2 = 1 can never equal -1
  }
  std::vector<int> q(static_cast<std::size_t>(n), 0);
  std::queue<int> frontier;
  for (int root = 0; root < n; ++root) {
    if (q[static_cast<std::size_t>(root)] != 0) continue;
    q[static_cast<std::size_t>(root)] = 1;
    frontier.push(root);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      const int qu = q[static_cast<std::size_t>(u)];
      for (int v = 0; v < n; ++v) {
        if (v == u) continue;
        // Edges in either direction constrain the pair.
        for (double w : {a(u, v), a(v, u)}) {
          if (w == 0.0) continue;
          const int want = w > 0.0 ? qu : -qu;
          int& qv = q[static_cast<std::size_t>(v)];
          if (qv == 0) {
            qv = want;
            frontier.push(v);
          } else if (qv != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return SignMatrix(std::move(q));
}

Adjacency apply_rank_one_weights(const Adjacency& adjacency, std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != adjacency.size())
    throw std::invalid_argument("need one weight per node");
  Eigen::VectorXd d(adjacency.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double w = weights[static_cast<std::size_t>(i)];
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be strictly positive");
    d(i) = w;
  }
  return Adjacency(d.asDiagonal() * adjacency.matrix() * d.asDiagonal(), GraphKind::Weighted);
}

}  // namespace rolextract
