#include "rolextract/lowrank.hpp"

#include "rolextract/linalg.hpp"
#include "rolextract/similarity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rolextract {

Eigen::MatrixXd LowRankState::basis() const {
  return U * sigma.cwiseInverse().asDiagonal();
}

Eigen::MatrixXd LowRankState::dense() const { return U * U.transpose(); }

LowRankNotConverged::LowRankNotConverged(LowRankState last, double relative_change)
    : ConvergenceError("factored similarity iteration did not converge after " + std::to_string(last.k) +
                           " steps (relative change " + std::to_string(relative_change) + ")",
                       last.k, relative_change),
      last_(std::move(last)) {}

namespace {

class FactoredRecurrence {
 public:
  FactoredRecurrence(const Adjacency& a, double beta2, double trunc_tol)
      : a_(a.matrix()), beta_(std::sqrt(beta2)), trunc_tol_(trunc_tol) {
    if (!(beta2 >= 0.0) || !std::isfinite(beta2)) throw std::invalid_argument("beta^2 must be finite and >= 0");
    if (!(trunc_tol > 0.0 && trunc_tol < 1.0)) throw std::invalid_argument("trunc_tol must lie in (0, 1)");
    const linalg::ThinSvd svd = linalg::thin_svd(a_, trunc_tol);
    const Eigen::Index r = svd.values.size();
    base_.resize(a_.rows(), 2 * r);
    base_ << svd.left * svd.values.asDiagonal(), svd.right * svd.values.asDiagonal();
  }

  linalg::GramFactor first() const { return linalg::compress_gram_factor(base_, trunc_tol_); }

  linalg::GramFactor next(const Eigen::MatrixXd& u) const {
    Eigen::MatrixXd f(a_.rows(), base_.cols() + 2 * u.cols());
    f << base_, beta_ * (a_ * u), beta_ * (a_.transpose() * u);
    return linalg::compress_gram_factor(f, trunc_tol_);
  }

 private:
  const Eigen::MatrixXd& a_;
  double beta_;
  double trunc_tol_;
  Eigen::MatrixXd base_;
};

void assign(LowRankState& state, linalg::GramFactor&& g) {
  state.U = std::move(g.factor);
  state.sigma = std::move(g.sigma);
}

}  // namespace

LowRankState lowrank_iterate(const Adjacency& a, double beta2, int k, double trunc_tol) {
  if (k < 1) throw std::invalid_argument("lowrank_iterate needs k >= 1");
  const FactoredRecurrence rec(a, beta2, trunc_tol);
  LowRankState state;
  state.beta2 = beta2;
  state.trunc_tol = trunc_tol;
  assign(state, rec.first());
  for (state.k = 1; state.k < k; ++state.k) assign(state, rec.next(state.U));
  return state;
}

LowRankState lowrank_fixed_point(const Adjacency& a, double beta2, double tol, int max_k, double trunc_tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_k < 1) throw std::invalid_argument("max_k must be >= 1");
  if (beta2 > 0.0 && !a.is_zero()) {
    const double bound = 1.0 / beta_bound(a);
    if (beta2 >= bound) throw InadmissibleBeta(beta2, bound);
  }
  const FactoredRecurrence rec(a, beta2, trunc_tol);
  LowRankState state;
  state.beta2 = beta2;
  state.trunc_tol = trunc_tol;
  assign(state, rec.first());
  state.k = 1;
  double change = 0.0;
  while (state.k < max_k) {
    linalg::GramFactor next = rec.next(state.U);
    const double base = state.sigma.array().square().matrix().norm();  // ||U U^T||_F
    const double diff = linalg::gram_difference_norm(next.factor, state.U);
    assign(state, std::move(next));
    ++state.k;
    if (diff <= tol * base) {
      state.converged = true;
      return state;
    }
    change = diff / base;
  }
  throw LowRankNotConverged(std::move(state), change);
}

int estimate_rank(std::span<const double> sigma, double gap_ratio) {
  if (sigma.empty()) throw std::invalid_argument("estimate_rank needs at least one singular value");
  int rank = static_cast<int>(sigma.size());
  for (std::size_t r = 0; r + 1 < sigma.size(); ++r) {
    if (sigma[r] < 0.0 || sigma[r + 1] > sigma[r]) {
      throw std::invalid_argument("estimate_rank needs a descending nonnegative sequence");
    }
  }
  if (sigma.back() < 0.0) throw std::invalid_argument("estimate_rank needs nonnegative values");
  for (std::size_t r = 0; r + 1 < sigma.size(); ++r) {
    if (sigma[r] == 0.0) break;  // only zeros follow
    if (sigma[r + 1] / sigma[r] < gap_ratio) rank = static_cast<int>(r) + 1;
  }
  return rank;
}

}  // namespace rolextract
