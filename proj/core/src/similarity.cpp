#include "rolextract/similarity.hpp"

#include "rolextract/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rolextract {

SimilarityNotConverged::SimilarityNotConverged(SimilarityState last, double relative_change)
    : ConvergenceError("similarity iteration did not converge after " + std::to_string(last.k) +
                           " steps (relative change " + std::to_string(relative_change) + ")",
                       last.k, relative_change),
      last_(std::move(last)) {}

Eigen::MatrixXd gamma(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x) {
  if (a.rows() != a.cols() || x.rows() != a.rows() || x.cols() != a.cols()) {
    throw std::invalid_argument("gamma: dimension mismatch between A (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ") and X (" + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ")");
  }
  Eigen::MatrixXd out = a * x * a.transpose();
  out.noalias() += a.transpose() * x * a;
  // Symmetric in exact arithmetic; remove rounding asymmetry.
  return 0.5 * (out + out.transpose());
}

namespace {

void check_beta2(double beta2) {
  if (!(beta2 >= 0.0) || !std::isfinite(beta2)) throw std::invalid_argument("beta^2 must be finite and >= 0");
}

// A restricted to an orthonormal basis of span{range A, range A^T}.
Eigen::MatrixXd compress_operator(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd compound(a.rows(), 2 * a.cols());
  compound << a, a.transpose();
  const Eigen::MatrixXd basis = linalg::range_basis(compound, 1e-14);
  if (basis.cols() >= a.rows()) return a;
  return basis.transpose() * a * basis;
}

}  // namespace

double beta_bound(const Adjacency& a, const PowerIterationOptions& options) {
  if (a.size() == 0 || a.is_zero()) throw std::invalid_argument("beta_bound needs a nonzero adjacency matrix");
  const Eigen::MatrixXd c = compress_operator(a.matrix());

  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(c.rows(), c.cols());
  x /= x.norm();
  double previous_gain = 0.0;
  double estimate = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd y = gamma(c, x);
    const double gain = y.norm();
    if (gain == 0.0) return 0.0;  // nilpotent operator
    x = y / gain;
    if (it == 1) {
      previous_gain = gain;
      continue;
    }
    // ||Gamma^2 X|| / ||X|| converges to rho^2 for a symmetric operator.
    const double next = std::sqrt(gain * previous_gain);
    previous_gain = gain;
    if (it > 2 && std::abs(next - estimate) <= options.tol * next) return next;
    estimate = next;
  }
  throw ConvergenceError("beta_bound power iteration did not converge", options.max_iterations, estimate);
}

double default_beta2(const Adjacency& a) { return 0.81 / beta_bound(a); }

SimilarityState iterate(const Adjacency& a, double beta2, int k) {
  check_beta2(beta2);
  if (k < 1) throw std::invalid_argument("iterate needs k >= 1");
  const Eigen::MatrixXd& m = a.matrix();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  SimilarityState state{gamma(m, identity), 1, beta2, false};
  for (; state.k < k; ++state.k) state.S = gamma(m, identity + beta2 * state.S);
  return state;
}

namespace {

template <typename Step>
SimilarityState iterate_to_fixed_point(Eigen::MatrixXd s1, double beta2, double tol, int max_k, Step step) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
  SimilarityState state{std::move(s1), 1, beta2, false};
  double change = 0.0;
  while (state.k < max_k) {
    Eigen::MatrixXd next = step(state.S);
    const double base = state.S.norm();
    change = (next - state.S).norm();
    state.S = std::move(next);
    ++state.k;
    if (change <= tol * base) {
      state.converged = true;
      return state;
    }
    change = base > 0.0 ? change / base : change;
  }
  throw SimilarityNotConverged(std::move(state), change);
}

}  // namespace

SimilarityState fixed_point(const Adjacency& a, double beta2, double tol, int max_k) {
  check_beta2(beta2);
  const Eigen::MatrixXd& m = a.matrix();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  if (beta2 > 0.0) {
    const double bound = 1.0 / beta_bound(a);
    if (beta2 >= bound) throw InadmissibleBeta(beta2, bound);
  }
  return iterate_to_fixed_point(gamma(m, identity), beta2, tol, max_k,
                                [&](const Eigen::MatrixXd& s) { return gamma(m, identity + beta2 * s); });
}

std::vector<PatternCount> pattern_counts(const Adjacency& a, int ell_max) {
  if (ell_max < 1) throw std::invalid_argument("pattern_counts needs ell_max >= 1");
  std::vector<PatternCount> out;
  out.reserve(static_cast<std::size_t>(ell_max));
  out.push_back({gamma(a, Eigen::MatrixXd::Identity(a.size(), a.size())), 1});
  for (int ell = 2; ell <= ell_max; ++ell) out.push_back({gamma(a, out.back().N), ell});
  return out;
}

namespace {

struct ScaledOperator {
  Eigen::MatrixXd aw;
  Eigen::VectorXd inv_d2;

  // A_W M A_W^T + A_W^T M A_W with M = D^-2 + beta2 D^-2 S D^-2.
  Eigen::MatrixXd apply(const Eigen::MatrixXd* s, double beta2) const {
    Eigen::MatrixXd m = inv_d2.asDiagonal();
    if (s != nullptr) m += beta2 * (inv_d2.asDiagonal() * (*s) * inv_d2.asDiagonal());
    return gamma(aw, m);
  }
};

ScaledOperator make_scaled(const Adjacency& weighted, std::span<const double> weights) {
  if (static_cast<Eigen::Index>(weights.size()) != weighted.size())
    throw std::invalid_argument("need one weight per node");
  ScaledOperator op{weighted.matrix(), Eigen::VectorXd(weighted.size())};
  for (Eigen::Index i = 0; i < op.inv_d2.size(); ++i) {
    const double d = weights[static_cast<std::size_t>(i)];
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("weights must be strictly positive");
    op.inv_d2(i) = 1.0 / (d * d);
  }
  return op;
}

}  // namespace

SimilarityState scaled_iterate(const Adjacency& weighted, std::span<const double> weights, double beta2,
                               int k) {
  check_beta2(beta2);
  if (k < 1) throw std::invalid_argument("scaled_iterate needs k >= 1");
  const ScaledOperator op = make_scaled(weighted, weights);
  SimilarityState state{op.apply(nullptr, beta2), 1, beta2, false};
  for (; state.k < k; ++state.k) state.S = op.apply(&state.S, beta2);
  return state;
}

SimilarityState scaled_fixed_point(const Adjacency& weighted, std::span<const double> weights, double beta2,
                                   double tol, int max_k) {
  check_beta2(beta2);
  const ScaledOperator op = make_scaled(weighted, weights);
  if (beta2 > 0.0) {
    // Admissibility is that of the unweighted graph D^-1 A_W D^-1.
    const Eigen::VectorXd inv_d = op.inv_d2.cwiseSqrt();
    const Adjacency base = Adjacency::infer(inv_d.asDiagonal() * op.aw * inv_d.asDiagonal());
    const double bound = 1.0 / beta_bound(base);
    if (beta2 >= bound) throw InadmissibleBeta(beta2, bound);
  }
  return iterate_to_fixed_point(op.apply(nullptr, beta2), beta2, tol, max_k,
                                [&](const Eigen::MatrixXd& s) { return op.apply(&s, beta2); });
}

}  // namespace rolextract
