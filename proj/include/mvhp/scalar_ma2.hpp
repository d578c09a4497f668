#pragma once

// Closed-form link between the scalar signal-noise ratio of the smooth-trend
// model and its constrained MA(2) reduced form
//
//   z_t = (1 + theta1 L + theta2 L^2) u_t,  theta2 = -theta1 / (4 + theta1),
//
// together with the implied autocovariances
//   gamma2 = theta2 * omega             = sigma_eps
//   gamma1 = theta1 (1 + theta2) omega  = -4 sigma_eps
//   gamma0 = omega (1 + theta1^2 + theta2^2) = 6 sigma_eps + sigma_xi.

namespace mvhp {

struct ScalarMA2 {
  double theta1 = -2.0;
  double theta2 = 1.0;
  double omega = 1.0;
};

struct ScalarAutocov {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct ThetaPair {
  double theta1;
  double theta2;
};

/// theta2 as a function of theta1 under the smooth-trend constraint.
double constrained_theta2(double theta1);

/// Invertible MA(2) coefficients for signal-noise ratio delta >= 0.
/// delta = 0 gives the unit-root boundary pair (-2, 1).
ThetaPair theta_from_snr(double delta);

/// Inverse of theta_from_snr on [-2, 0]; theta1 = 0 maps to +infinity.
double snr_from_theta(double theta1);

/// MA(2) model implied by scalar structural variances; omega = sigma_eps / theta2.
ScalarMA2 model_from_structural(double sigma_eps, double sigma_xi);

ScalarAutocov autocov_from_fit(const ScalarMA2& fit);

/// Minimum modulus of the roots of 1 + theta1 z + theta2 z^2
/// (+infinity when the polynomial is constant).
double invertibility_margin(const ScalarMA2& fit);

}  // namespace mvhp
