#include "mvhp/decoupling.hpp"

#include "mvhp/error.hpp"
#include "mvhp/scalar_ma2.hpp"

#include <cmath>
#include <limits>

namespace mvhp {

double snr_zero_threshold(const Vector& delta) {
  const double top = delta.size() ? delta.maxCoeff() : 0.0;
  return kSnrZeroTol * std::max(1.0, top);
}

Decoupling Decoupling::from_transform(const Matrix& p, const Vector& delta) {
  if (p.rows() != p.cols() || p.rows() != delta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "transform and signal-noise ratios disagree in dimension");
  }
  Eigen::FullPivLU<Matrix> lu(p);
  if (!lu.isInvertible()) throw Error(ErrorCode::NotPositiveDefinite, "decoupling transform is singular");
  Decoupling out;
  out.p = p;
  out.p_inv = lu.inverse();
  out.delta = delta;
  const double tol = snr_zero_threshold(delta);
  out.cointegration_rank = static_cast<int>((delta.array() <= tol).count());
  return out;
}

Decoupling decouple(const StructuralParams& sp) {
  if (sp.sigma_eps.order() != sp.sigma_xi.order()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance orders differ");
  }
  const Eigen::Index d = sp.sigma_eps.order();
  const Matrix m = cholesky(sp.sigma_eps);
  const EigenPair eig = sym_eig(whiten(m, sp.sigma_xi));

  Matrix q = eig.vectors;
  Matrix p = m.transpose() * q;
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(p(i, k)) > std::abs(p(imax, k))) imax = i;
    if (p(imax, k) < 0.0) {
      p.col(k) = -p.col(k);
      q.col(k) = -q.col(k);
    }
  }

  Decoupling out;
  out.delta = eig.values;
  const double tol = snr_zero_threshold(out.delta);
  for (Eigen::Index k = 0; k < d; ++k) {
    double& dk = out.delta(k);
    if (dk < -tol) {
      throw Error(ErrorCode::NegativeSnrEigenvalue,
                  "signal-noise eigenvalue " + std::to_string(dk) + " is negative; regularize sigma_xi first");
    }
    if (dk <= tol) {
      dk = 0.0;
      ++out.cointegration_rank;
    }
  }
  const Matrix mt_inv = m.transpose().triangularView<Eigen::Lower>().solve(Matrix::Identity(d, d));
  out.p = p;
  out.p_inv = q.transpose() * mt_inv;
  return out;
}

ReducedForm reduced_form(const Decoupling& dec) {
  const Eigen::Index d = dec.dim();
  ReducedForm rf;
  rf.alpha.resize(d);
  rf.beta.resize(d);
  rf.min_root_modulus = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < d; ++k) {
    const ThetaPair t = theta_from_snr(dec.delta(k));
    rf.alpha(k) = t.theta1;
    rf.beta(k) = t.theta2;
    const double margin = invertibility_margin({t.theta1, t.theta2, 1.0});
    rf.min_root_modulus = std::min(rf.min_root_modulus, margin);
    if (dec.delta(k) == 0.0) ++rf.unit_roots;
  }
  rf.theta1 = dec.p * rf.alpha.asDiagonal() * dec.p_inv;
  rf.theta2 = dec.p * rf.beta.asDiagonal() * dec.p_inv;
  rf.omega = SymMatrix::symmetrized(dec.p * rf.beta.cwiseInverse().asDiagonal() * dec.p.transpose());
  return rf;
}

ReducedForm reduced_form(const StructuralParams& p) { return reduced_form(decouple(p)); }

SnrMatrix snr_matrix(const StructuralParams& p) {
  const Matrix m = cholesky(p.sigma_eps);
  // sigma_eps^{-1} sigma_xi = M^{-1} (M')^{-1} sigma_xi; the ratio is its transpose.
  const Matrix x = m.transpose().triangularView<Eigen::Lower>().solve(p.sigma_xi.matrix());
  const Matrix y = m.triangularView<Eigen::Upper>().solve(x);
  return {y.transpose(), decouple(p)};
}

Matrix snr_matrix_from_gammas(const AutocovSet& g) {
  const Eigen::Index d = g.gamma0.order();
  const Matrix x = g.gamma2.matrix().partialPivLu().solve(g.gamma0.matrix());
  return x.transpose() - 6.0 * Matrix::Identity(d, d);
}

GammaResiduals gamma_residuals(const ReducedForm& rf, const StructuralParams& p) {
  const Matrix& om = rf.omega.matrix();
  const Matrix& e = p.sigma_eps.matrix();
  const Matrix& x = p.sigma_xi.matrix();
  const Matrix g0 = om + rf.theta1 * om * rf.theta1.transpose() + rf.theta2 * om * rf.theta2.transpose();
  const Matrix g1 = rf.theta1 * om + rf.theta2 * om * rf.theta1.transpose();
  const Matrix g2 = rf.theta2 * om;
  return {relative_frobenius(g0, 6.0 * e + x), relative_frobenius(g1, -4.0 * e), relative_frobenius(g2, e)};
}

}  // namespace mvhp
