#include "rolextract/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rolextract::linalg {

namespace {

struct FullSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd s;
  Eigen::MatrixXd v;
};

// BDCSVD in Eigen 3.4.0 can return wrong singular vectors when singular
// values repeat. Accept its answer only if it reconstructs m with orthonormal
// factors, otherwise recompute with one-sided Jacobi.
FullSvd checked_svd(const Eigen::MatrixXd& m) {
  const auto acceptable = [&](const FullSvd& d) {
    const double scale = m.norm();
    const Eigen::Index r = d.s.size();
    const auto eye = Eigen::MatrixXd::Identity(r, r);
    return d.s.allFinite() && (m - d.u * d.s.asDiagonal() * d.v.transpose()).norm() <= 1e-11 * scale &&
           (d.u.transpose() * d.u - eye).norm() <= 1e-11 && (d.v.transpose() * d.v - eye).norm() <= 1e-11;
  };
  {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    FullSvd d{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    if (acceptable(d)) return d;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  const Eigen::VectorXd s = checked_svd(m).s;
  return {s.data(), s.data() + s.size()};
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cut = rel_tol * s.front();
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cut; }));
}

ThinSvd thin_svd(const Eigen::MatrixXd& m, double rel_tol) {
  FullSvd svd;
  // Column-pivoted QR, m P = Q R, exposes low rank cheaply. When the rank is
  // small, only the k x cols block R_k P^T needs an SVD. Its pivot threshold
  // sits well below rel_tol so no direction above the final cut is lost.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-3 * rel_tol);
  const Eigen::Index k = qr.rank();
  if (m.size() > 0 && 2 * k < std::min(m.rows(), m.cols())) {
    const Eigen::MatrixXd rk = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const FullSvd small = checked_svd(rk * qr.colsPermutation().transpose());
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(m.rows(), k);
    padded.topRows(k) = small.u;
    svd = {qr.householderQ() * padded, small.s, small.v};
  } else {
    svd = checked_svd(m);
  }
  const Eigen::VectorXd& s = svd.s;
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rel_tol * s(0);
    while (r < s.size() && s(r) > cut) ++r;
  }
  return {svd.u.leftCols(r), s.head(r), svd.v.leftCols(r)};
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rel_tol) {
  return thin_svd(m, rel_tol).left;
}

double max_principal_angle(const Eigen::MatrixXd& basis_a, const Eigen::MatrixXd& basis_b) {
  if (basis_a.cols() != basis_b.cols()) return std::numbers::pi / 2;
  if (basis_a.cols() == 0) return 0.0;
  // sin of the largest angle = ||(I - Qa Qa^T) Qb||_2.
  const Eigen::MatrixXd residual = basis_b - basis_a * (basis_a.transpose() * basis_b);
  const auto s = singular_values(residual);
  const double sine = std::min(1.0, s.empty() ? 0.0 : s.front());
  return std::asin(sine);
}

double gram_difference_norm(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.cols() + v.cols() == 0) return 0.0;
  Eigen::MatrixXd stacked(u.rows(), u.cols() + v.cols());
  stacked << u, v;
  // U U^T - V V^T = W J W^T with W = [U V], J = diag(I, -I); with W = Q R only
  // the small matrix R J R^T matters.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
  const Eigen::Index k = std::min(stacked.rows(), stacked.cols());
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::VectorXd j(stacked.cols());
  j.head(u.cols()).setOnes();
  j.tail(v.cols()).setConstant(-1.0);
  return (r * j.asDiagonal() * r.transpose()).norm();
}

GramFactor compress_gram_factor(const Eigen::MatrixXd& f, double rel_tol) {
  const Eigen::Index n = f.rows();
  if (f.cols() == 0 || n == 0) return {Eigen::MatrixXd::Zero(n, 0), Eigen::VectorXd()};

  Eigen::MatrixXd q;
  Eigen::VectorXd s;
  if (f.cols() < n) {
    // F = Q R, F F^T = Q R R^T Q^T, so the left singular pairs of R suffice.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(f);
    const Eigen::Index m = f.cols();
    const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    const FullSvd svd = checked_svd(r);
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, m);
    padded.topRows(m) = svd.u;
    q = qr.householderQ() * padded;
    s = svd.s;
  } else {
    // Wide F: F^T = Q R gives F F^T = R^T R, an n x n problem.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(f.transpose());
    const Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    const FullSvd svd = checked_svd(r.transpose());
    q = svd.u;
    s = svd.s;
  }

  Eigen::Index keep = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rel_tol * s(0);
    while (keep < s.size() && s(keep) >= cut) ++keep;
  }
  GramFactor out;
  out.sigma = s.head(keep);
  out.factor = q.leftCols(keep) * out.sigma.asDiagonal();
  return out;
}

}  // namespace rolextract::linalg
