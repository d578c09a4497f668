#pragma once

#include "mvhp/meta_estimator.hpp"
#include "mvhp/numerics.hpp"

#include <algorithm>

namespace mvhp {

inline constexpr double kSnrZeroTol = 1e-12;

/// Change of variables P with P^{-1} sigma_eps P'^{-1} = I and
/// P^{-1} sigma_xi P'^{-1} = diag(delta). P = M'Q where sigma_eps = M'M and
/// (M')^{-1} sigma_xi M^{-1} = Q diag(delta) Q'. Columns of P are signed so
/// that their largest-magnitude entry is positive; they are not rescaled.
struct Decoupling {
  Matrix p;
  Matrix p_inv;
  Vector delta;  // descending, entries within tolerance of zero clamped to 0
  int cointegration_rank = 0;

  Eigen::Index dim() const noexcept { return delta.size(); }

  /// Decoupling with the given transform; p_inv is computed by LU.
  static Decoupling from_transform(const Matrix& p, const Vector& delta);
};

/// Invertible VMA(2) reduced form z_t = (I + Theta1 L + Theta2 L^2) u_t, var(u_t) = Omega.
struct ReducedForm {
  Matrix theta1;
  Matrix theta2;
  SymMatrix omega;
  Vector alpha;  // eigenvalues of theta1, paired with Decoupling::delta
  Vector beta;   // eigenvalues of theta2
  double min_root_modulus = 0.0;  // of det(I + Theta1 z + Theta2 z^2)
  int unit_roots = 0;             // number of scalar factors on the unit circle
};

/// Absolute clamp threshold for the signal-noise ratios: kSnrZeroTol * max(1, max delta).
double snr_zero_threshold(const Vector& delta);

Decoupling decouple(const StructuralParams& p);
ReducedForm reduced_form(const StructuralParams& p);
ReducedForm reduced_form(const Decoupling& dec);

struct SnrMatrix {
  Matrix ratio;  // sigma_xi * sigma_eps^{-1}
  Decoupling decoupling;
};

SnrMatrix snr_matrix(const StructuralParams& p);

/// Gamma0 Gamma2^{-1} - 6 I, the same ratio expressed through the autocovariances.
Matrix snr_matrix_from_gammas(const AutocovSet& g);

/// Relative Frobenius residuals of the three autocovariance identities
///   Omega + T1 Omega T1' + T2 Omega T2' = 6 S_eps + S_xi
///   T1 Omega + T2 Omega T1'             = -4 S_eps
///   T2 Omega                            = S_eps
struct GammaResiduals {
  double gamma0;
  double gamma1;
  double gamma2;
  double max() const { return std::max({gamma0, gamma1, gamma2}); }
};

GammaResiduals gamma_residuals(const ReducedForm& rf, const StructuralParams& p);

}  // namespace mvhp
