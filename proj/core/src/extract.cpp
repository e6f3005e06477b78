#include "rolextract/extract.hpp"

#include "rolextract/linalg.hpp"
#include "rolextract/rng.hpp"
#include "rolextract/similarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rolextract {

namespace {

constexpr double kZeroRow = 1e-9;

// Indices of rows whose norm is not negligible against the largest row.
std::vector<int> live_rows(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd norms = m.rowwise().norm();
  const double cut = norms.size() > 0 ? kZeroRow * norms.maxCoeff() : 0.0;
  std::vector<int> out;
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (norms(i) > cut) out.push_back(static_cast<int>(i));
  }
  return out;
}

// Angle between the lines spanned by unit vectors u and v.
double line_angle(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double angle = 2.0 * std::atan2((u - v).norm(), (u + v).norm());
  return std::min(angle, std::numbers::pi - angle);
}

Assignment compact(std::vector<int> labels) {
  int max_label = -1;
  for (int l : labels) max_label = std::max(max_label, l);
  std::vector<int> relabel(static_cast<std::size_t>(max_label + 1), kUnassigned);
  int next = 0;
  for (int& l : labels) {
    if (l == kUnassigned) continue;
    auto& mapped = relabel[static_cast<std::size_t>(l)];
    if (mapped == kUnassigned) mapped = next++;
    l = mapped;
  }
  return Assignment(std::move(labels), next);
}

}  // namespace

std::string_view to_string(ClusterMethod method) {
  switch (method) {
    case ClusterMethod::Auto: return "auto";
    case ClusterMethod::Angular: return "angular";
    case ClusterMethod::SphericalKMeans: return "spherical_kmeans";
  }
  return "unknown";
}

Assignment cluster_rows(const Eigen::MatrixXd& factor, double angle_tol) {
  std::vector<int> labels(static_cast<std::size_t>(factor.rows()), kUnassigned);
  std::vector<Eigen::VectorXd> representatives;
  for (int i : live_rows(factor)) {
    Eigen::VectorXd u = factor.row(i).transpose().normalized();
    Eigen::Index lead = 0;
    u.cwiseAbs().maxCoeff(&lead);
    if (u(lead) < 0.0) u = -u;
    int chosen = kUnassigned;
    for (std::size_t c = 0; c < representatives.size(); ++c) {
      if (line_angle(u, representatives[c]) <= angle_tol) {
        chosen = static_cast<int>(c);
        break;
      }
    }
    if (chosen == kUnassigned) {
      chosen = static_cast<int>(representatives.size());
      representatives.push_back(std::move(u));
    }
    labels[static_cast<std::size_t>(i)] = chosen;
  }
  return Assignment(std::move(labels), static_cast<int>(representatives.size()));
}

Assignment spherical_kmeans(const Eigen::MatrixXd& embedding, int clusters, std::uint64_t seed, int restarts) {
  if (clusters < 1) throw std::invalid_argument("spherical_kmeans needs at least one cluster");
  const std::vector<int> rows = live_rows(embedding);
  const auto m = static_cast<int>(rows.size());
  std::vector<int> labels(static_cast<std::size_t>(embedding.rows()), kUnassigned);
  if (m == 0) return Assignment(std::move(labels), 0);
  const int k = std::min(clusters, m);

  Eigen::MatrixXd points(m, embedding.cols());
  for (int i = 0; i < m; ++i) points.row(i) = embedding.row(rows[static_cast<std::size_t>(i)]).normalized();

  const CounterRng root(seed);
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<int> best;

  for (int run = 0; run < std::max(1, restarts); ++run) {
    CounterRng rng = root.substream(static_cast<std::uint64_t>(run));
    // k-means++ seeding with cosine distance 1 - <x, c>.
    Eigen::MatrixXd centers(k, points.cols());
    centers.row(0) = points.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m))));
    Eigen::VectorXd dist = (1.0 - (points * centers.row(0).transpose()).array()).max(0.0).matrix();
    for (int c = 1; c < k; ++c) {
      const double total = dist.sum();
      int pick = 0;
      if (total > 0.0) {
        double target = rng.uniform() * total;
        for (pick = 0; pick < m - 1; ++pick) {
          target -= dist(pick);
          if (target < 0.0) break;
        }
      } else {
        pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
      }
      centers.row(c) = points.row(pick);
      dist = dist.cwiseMin((1.0 - (points * centers.row(c).transpose()).array()).max(0.0).matrix());
    }

    std::vector<int> assign(static_cast<std::size_t>(m), -1);
    double score = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      const Eigen::MatrixXd sims = points * centers.transpose();
      bool changed = false;
      score = 0.0;
      for (int i = 0; i < m; ++i) {
        Eigen::Index c = 0;
        score += sims.row(i).maxCoeff(&c);
        if (assign[static_cast<std::size_t>(i)] != static_cast<int>(c)) {
          assign[static_cast<std::size_t>(i)] = static_cast<int>(c);
          changed = true;
        }
      }
      if (!changed && iter > 0) break;
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
      for (int i = 0; i < m; ++i) sums.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
      for (int c = 0; c < k; ++c) {
        const double norm = sums.row(c).norm();
        if (norm > 0.0) centers.row(c) = sums.row(c) / norm;
        // An emptied cluster keeps its old center.
      }
    }
    if (score > best_score + 1e-12) {
      best_score = score;
      best = assign;
    }
  }

  for (int i = 0; i < m; ++i) labels[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])] = best[static_cast<std::size_t>(i)];
  return compact(std::move(labels));
}

RoleMatrix reconstruct_role_matrix(const Adjacency& a, const Assignment& assignment) {
  if (assignment.num_nodes() != a.size()) throw std::invalid_argument("assignment does not cover the graph");
  const Eigen::MatrixXd z = assignment.indicator();
  const Eigen::MatrixXd block_sums = z.transpose() * a.matrix() * z;
  const auto& sizes = assignment.sizes();
  const int q = assignment.num_roles();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const double half = 0.5 * sizes[static_cast<std::size_t>(i)] * sizes[static_cast<std::size_t>(j)];
      b(i, j) = block_sums(i, j) > half ? 1.0 : 0.0;
    }
  }
  return RoleMatrix(std::move(b));
}

double extraction_cost(const Adjacency& a, const Assignment& assignment, const RoleMatrix& roles) {
  if (assignment.num_nodes() != a.size()) throw std::invalid_argument("assignment does not cover the graph");
  return (a.matrix() - ideal_matrix(roles, assignment)).squaredNorm();
}

namespace {

struct Fit {
  Assignment assignment;
  RoleMatrix roles;
  double cost = 0.0;
};

Fit fit(const Adjacency& target, Assignment assignment) {
  RoleMatrix roles = reconstruct_role_matrix(target, assignment);
  const double cost = extraction_cost(target, assignment, roles);
  return {std::move(assignment), std::move(roles), cost};
}

Fit kmeans_sweep(const Adjacency& target, const LowRankState& state, int live_nodes, const ExtractOptions& options) {
  const int r = state.rank();
  const int considered = std::min({r, options.max_roles, live_nodes});
  std::vector<double> spectrum(static_cast<std::size_t>(considered));
  for (int i = 0; i < considered; ++i) spectrum[static_cast<std::size_t>(i)] = state.sigma(i) * state.sigma(i);
  const int centre = spectrum.empty() ? 1 : estimate_rank(spectrum, options.gap_ratio);

  std::optional<Fit> best;
  for (int c = std::max(1, centre - 2); c <= std::min(centre + 2, live_nodes); ++c) {
    const Eigen::MatrixXd embedding = state.U.leftCols(std::min(c, r));
    Assignment clusters = spherical_kmeans(embedding, c, options.seed, options.kmeans_restarts);
    Fit candidate = fit(target, std::move(clusters));
    // Split halves of one role reconstruct identical rows; merge them back.
    MinimalForm merged = minimalize(candidate.roles, candidate.assignment);
    if (merged.assignment.unassigned().size() == candidate.assignment.unassigned().size()) {
      candidate = fit(target, merged.assignment.canonical());
    }
    if (!best || candidate.cost < best->cost ||
        (candidate.cost == best->cost && candidate.assignment.num_roles() < best->assignment.num_roles())) {
      best = std::move(candidate);
    }
  }
  return std::move(*best);
}

}  // namespace

ExtractionResult extract_roles(const Adjacency& a, const ExtractOptions& options) {
  if (a.size() == 0 || a.is_zero()) throw std::invalid_argument("extract_roles needs a nonzero adjacency matrix");

  ExtractionResult result;
  Adjacency work = a;
  std::optional<SignMatrix> signature;
  if (a.kind() == GraphKind::Signed) {
    signature = checkerboard_signature(a);
    if (signature) {
      work = Adjacency(signature->conjugate(a.matrix()), GraphKind::Unweighted);
      result.checkerboard = true;
    }
  }
  // Role matrix and residual are fitted on a {0,1} or {-1,0,1} target.
  const Adjacency target = work.kind() == GraphKind::Weighted ? work.support() : work;

  result.beta2 = options.beta2 ? *options.beta2 : default_beta2(work);
  LowRankState state;
  if (options.steps) {
    state = lowrank_iterate(work, result.beta2, *options.steps, options.trunc_tol);
  } else {
    state = lowrank_fixed_point(work, result.beta2, options.fixed_point_tol, options.max_k, options.trunc_tol);
    result.fixed_point = true;
  }
  result.steps = state.k;
  result.factor_rank = state.rank();

  const auto live_nodes = static_cast<int>(work.size() - static_cast<Eigen::Index>(work.disconnected_nodes().size()));

  std::optional<Fit> chosen;
  if (options.method != ClusterMethod::SphericalKMeans) {
    Fit angular = fit(target, cluster_rows(state.U, options.angle_tol));
    if (angular.cost == 0.0) {
      MinimalForm merged = minimalize(angular.roles, angular.assignment);
      if (merged.assignment.num_roles() < angular.assignment.num_roles() &&
          merged.assignment.unassigned().size() == angular.assignment.unassigned().size()) {
        angular = fit(target, merged.assignment.canonical());
      }
    }
    bool accept = options.method == ClusterMethod::Angular;
    if (!accept && angular.cost == 0.0) {
      accept = angular.assignment.num_roles() < live_nodes;
      if (!accept) {
        Eigen::MatrixXd compound(work.size(), 2 * work.size());
        compound << work.matrix(), work.matrix().transpose();
        accept = linalg::numerical_rank(compound, 1e-10) < live_nodes;
      }
    }
    if (accept) {
      chosen = std::move(angular);
      result.method_used = ClusterMethod::Angular;
    }
  }
  if (!chosen) {
    chosen = kmeans_sweep(target, state, live_nodes, options);
    result.method_used = ClusterMethod::SphericalKMeans;
  }

  result.assignment = std::move(chosen->assignment);
  result.roles = std::move(chosen->roles);
  if (signature) {
    result.assignment = result.assignment.with_signs(signature->diagonal());
    result.residual = extraction_cost(a, result.assignment, result.roles);
  } else {
    result.residual = chosen->cost;
  }
  result.q_est = result.assignment.num_roles();
  result.unassigned = result.assignment.unassigned();
  return result;
}

SignedRoles split_signed_roles(const Assignment& assignment, const RoleMatrix& roles) {
  if (roles.size() != assignment.num_roles())
    throw std::invalid_argument("role matrix size does not match the assignment's role count");
  const int q = assignment.num_roles();
  // has[r][0] for +1 members, has[r][1] for -1 members.
  std::vector<std::array<bool, 2>> has(static_cast<std::size_t>(q), {false, false});
  for (int i = 0; i < assignment.num_nodes(); ++i) {
    const int r = assignment.label(i);
    if (r == kUnassigned) continue;
    has[static_cast<std::size_t>(r)][assignment.sign(i) > 0 ? 0 : 1] = true;
  }

  SignedRoles out;
  std::vector<std::array<int, 2>> index(static_cast<std::size_t>(q), {kUnassigned, kUnassigned});
  for (int r = 0; r < q; ++r) {
    for (int part = 0; part < 2; ++part) {
      if (!has[static_cast<std::size_t>(r)][static_cast<std::size_t>(part)]) continue;
      index[static_cast<std::size_t>(r)][static_cast<std::size_t>(part)] = static_cast<int>(out.parent_role.size());
      out.parent_role.push_back(r);
      out.role_sign.push_back(part == 0 ? 1 : -1);
    }
  }

  const auto split = static_cast<Eigen::Index>(out.parent_role.size());
  out.representatives = Eigen::MatrixXd::Zero(split, q);
  for (Eigen::Index s = 0; s < split; ++s) {
    out.representatives(s, out.parent_role[static_cast<std::size_t>(s)]) = out.role_sign[static_cast<std::size_t>(s)];
  }
  out.role_matrix = out.representatives * roles.matrix() * out.representatives.transpose();

  std::vector<int> labels(static_cast<std::size_t>(assignment.num_nodes()), kUnassigned);
  for (int i = 0; i < assignment.num_nodes(); ++i) {
    const int r = assignment.label(i);
    if (r == kUnassigned) continue;
    labels[static_cast<std::size_t>(i)] = index[static_cast<std::size_t>(r)][assignment.sign(i) > 0 ? 0 : 1];
  }
  out.assignment = Assignment(std::move(labels), static_cast<int>(split));
  return out;
}

}  // namespace rolextract
