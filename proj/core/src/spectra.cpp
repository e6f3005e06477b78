#include "rolextract/spectra.hpp"

#include "rolextract/linalg.hpp"
#include "rolextract/lowrank.hpp"
#include "rolextract/rng.hpp"
#include "rolextract/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rolextract {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

std::vector<double> top(const std::vector<double>& values, int m) {
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  std::copy_n(values.begin(), std::min<std::size_t>(values.size(), out.size()), out.begin());
  return out;
}

}  // namespace

Adjacency perturb(const Adjacency& a, const PerturbationModel& model) {
  check_probability(model.p_in, "p_in");
  check_probability(model.p_out, "p_out");
  if (a.kind() != GraphKind::Unweighted) throw std::invalid_argument("perturb needs a binary graph");
  const Eigen::Index n = a.size();
  const CounterRng rng(model.seed);
  Eigen::MatrixXd out = a.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto counter = static_cast<std::uint64_t>(i * n + j);
      const double u = static_cast<double>(rng.at(counter) >> 11) * 0x1.0p-53;
      if (out(i, j) == 1.0) {
        if (u < model.p_in) out(i, j) = 0.0;
      } else if (u < model.p_out) {
        out(i, j) = 1.0;
      }
    }
  }
  return Adjacency(std::move(out), GraphKind::Unweighted);
}

Eigen::MatrixXd expected_adjacency(const RoleMatrix& roles, const Assignment& assignment, double p_in,
                                   double p_out, ProbabilityConvention convention) {
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");
  const double on = convention == ProbabilityConvention::Occupancy ? p_in : 1.0 - p_in;
  const Eigen::MatrixXd& b = roles.matrix();
  const Eigen::MatrixXd blocks = on * b + p_out * (Eigen::MatrixXd::Ones(b.rows(), b.cols()) - b);
  const Eigen::MatrixXd z = assignment.unsigned_copy().indicator();
  return z * blocks * z.transpose();
}

Eigen::MatrixXd expected_adjacency(const RoleMatrix& roles, std::span<const int> sizes, double p_in,
                                   double p_out, ProbabilityConvention convention) {
  if (static_cast<int>(sizes.size()) != roles.size())
    throw std::invalid_argument("need one size per role");
  return expected_adjacency(roles, Assignment::from_blocks(sizes), p_in, p_out, convention);
}

Eigen::MatrixXd expected_perturbation(const RoleMatrix& roles, const Assignment& assignment, double p_in,
                                      double p_out) {
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");
  const Eigen::MatrixXd& b = roles.matrix();
  const Eigen::MatrixXd blocks = -p_in * b + p_out * (Eigen::MatrixXd::Ones(b.rows(), b.cols()) - b);
  const Eigen::MatrixXd z = assignment.unsigned_copy().indicator();
  return z * blocks * z.transpose();
}

SpectrumReport spectrum_report(const Adjacency& a, const SpectrumOptions& options) {
  if (options.top_m < 1) throw std::invalid_argument("top_m must be positive");
  SpectrumReport report;
  report.beta2 = options.beta2 ? *options.beta2 : default_beta2(a);

  LowRankState state;
  if (options.steps) {
    state = lowrank_iterate(a, report.beta2, *options.steps, options.trunc_tol);
  } else {
    state = lowrank_fixed_point(a, report.beta2, options.fixed_point_tol, options.max_k, options.trunc_tol);
    report.fixed_point = true;
  }
  report.depth = state.k;

  report.sigma_A = top(linalg::singular_values(a.matrix()), options.top_m);
  const std::vector<double> half(state.sigma.data(), state.sigma.data() + state.sigma.size());
  report.sigma_S_half = top(half, options.top_m);
  report.sigma_S.resize(report.sigma_S_half.size());
  std::transform(report.sigma_S_half.begin(), report.sigma_S_half.end(), report.sigma_S.begin(),
                 [](double s) { return s * s; });
  report.gap_index = estimate_rank(report.sigma_S, options.gap_ratio);
  return report;
}

std::vector<double> ideal_singular_values(const RoleMatrix& roles, std::span<const int> sizes) {
  if (static_cast<int>(sizes.size()) != roles.size())
    throw std::invalid_argument("need one size per role");
  Eigen::VectorXd root(roles.size());
  for (int i = 0; i < roles.size(); ++i) {
    if (sizes[static_cast<std::size_t>(i)] < 1) throw std::invalid_argument("role sizes must be positive");
    root(i) = std::sqrt(static_cast<double>(sizes[static_cast<std::size_t>(i)]));
  }
  return linalg::singular_values(root.asDiagonal() * roles.matrix() * root.asDiagonal());
}

double iterated_singular_value(double lambda, double beta, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (lambda < 0.0 || beta < 0.0) throw std::invalid_argument("lambda and beta must be nonnegative");
  const double x = (beta * lambda) * (beta * lambda);
  if (!(x < 1.0)) throw std::invalid_argument("beta * lambda must be below 1");
  if (x == 0.0) return lambda;
  // (1 - x^k) / (1 - x), with 1 - x^k formed without cancellation.
  const double series = -std::expm1(k * std::log(x)) / (1.0 - x);
  return lambda * std::sqrt(series);
}

double limit_singular_value(double lambda, double beta) {
  if (lambda < 0.0 || beta < 0.0) throw std::invalid_argument("lambda and beta must be nonnegative");
  const double x = (beta * lambda) * (beta * lambda);
  if (!(x < 1.0)) throw std::invalid_argument("beta * lambda must be below 1");
  return lambda / std::sqrt(1.0 - x);
}

double ratio_scaling_factor(double lambda_i, double lambda_j, double beta) {
  const double xi = (beta * lambda_i) * (beta * lambda_i);
  const double xj = (beta * lambda_j) * (beta * lambda_j);
  if (!(xi < 1.0) || !(xj < 1.0)) throw std::invalid_argument("beta * lambda must be below 1");
  return (1.0 - xj) / (1.0 - xi);
}

bool check_ratio_monotonicity(double lambda_i, double lambda_j, double beta, int k_max) {
  if (!(lambda_j > 0.0 && lambda_i > lambda_j)) throw std::invalid_argument("need 0 < lambda_j < lambda_i");
  if (!(beta > 0.0 && beta * lambda_i < 1.0)) throw std::invalid_argument("need 0 < beta * lambda_i < 1");
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");

  const double xi = (beta * lambda_i) * (beta * lambda_i);
  const double xj = (beta * lambda_j) * (beta * lambda_j);
  const double t = xj / xi;
  // ratio^2 grows from k to k+1 iff (1 - xi^{k+1})(1 - xj^k) > (1 - xi^k)(1 - xj^{k+1});
  // the difference divided by xi^k is
  //   (1 - xi) - t^k (1 - xj) + xj^k (xi - xj),  t = xj / xi,
  // which stays representable where xi^k alone would underflow.
  for (int k = 1; k < k_max; ++k) {
    const double step = (1.0 - xi) - std::pow(t, k) * (1.0 - xj) + std::pow(xj, k) * (xi - xj);
    if (!(step > 0.0)) return false;
  }
  if (!(ratio_scaling_factor(lambda_i, lambda_j, beta) > 1.0)) return false;
  // d/dbeta of (1 - beta^2 lj^2) / (1 - beta^2 li^2) = 2 beta (li^2 - lj^2) / (1 - beta^2 li^2)^2.
  const double derivative = 2.0 * beta * (lambda_i * lambda_i - lambda_j * lambda_j) / ((1.0 - xi) * (1.0 - xi));
  return derivative > 0.0;
}

}  // namespace rolextract
