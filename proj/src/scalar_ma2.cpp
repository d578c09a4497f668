#include "mvhp/scalar_ma2.hpp"

#include "mvhp/error.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace mvhp {

double constrained_theta2(double theta1) { return -theta1 / (4.0 + theta1); }

ThetaPair theta_from_snr(double delta) {
  if (std::isnan(delta) || delta < 0.0) {
    throw Error(ErrorCode::NegativeSnr, "signal-noise ratio must be non-negative");
  }
  if (delta == 0.0) return {-2.0, 1.0};
  if (std::isinf(delta)) return {0.0, 0.0};
  // theta1 = -2 + sqrt(s)/2 with s = -2 delta + 2 sqrt(delta^2 + 16 delta),
  // rewritten so that neither s nor theta1 is formed as a difference of
  // nearly equal terms:
  //   s      = 32 delta / (R + delta),             R = sqrt(delta^2 + 16 delta)
  //   theta1 = (s - 16) / (2 (sqrt(s) + 4))
  //          = -128 delta / ((R + delta)^2 (sqrt(s) + 4)).
  const double r = std::sqrt(delta) * std::sqrt(delta + 16.0);
  const double rd = r + delta;
  const double s = 32.0 * delta / rd;
  const double theta1 = -128.0 * (delta / rd) / (rd * (std::sqrt(s) + 4.0));
  return {theta1, constrained_theta2(theta1)};
}

double snr_from_theta(double theta1) {
  if (std::isnan(theta1) || theta1 < -2.0 || theta1 > 0.0) {
    throw Error(ErrorCode::OutOfInvertibleRange, "theta1 must lie in [-2, 0]");
  }
  if (theta1 == 0.0) return std::numeric_limits<double>::infinity();
  // (1 + theta1^2 + theta2^2) / theta2 - 6 simplifies to u^4 / (4 - u^2), u = theta1 + 2.
  const double u = theta1 + 2.0;
  const double u2 = u * u;
  return u2 * u2 / (-theta1 * (theta1 + 4.0));
}

ScalarMA2 model_from_structural(double sigma_eps, double sigma_xi) {
  if (!(sigma_eps > 0.0) || !(sigma_xi >= 0.0) || !std::isfinite(sigma_eps) || !std::isfinite(sigma_xi)) {
    throw Error(ErrorCode::InvalidArgument, "need sigma_eps > 0 and sigma_xi >= 0");
  }
  const ThetaPair t = theta_from_snr(sigma_xi / sigma_eps);
  return {t.theta1, t.theta2, sigma_eps / t.theta2};
}

ScalarAutocov autocov_from_fit(const ScalarMA2& fit) {
  ScalarAutocov g;
  g.gamma2 = fit.theta2 * fit.omega;
  g.gamma1 = fit.theta1 * (fit.theta2 + 1.0) * fit.omega;
  g.gamma0 = fit.omega * (1.0 + fit.theta1 * fit.theta1 + fit.theta2 * fit.theta2);
  return g;
}

double invertibility_margin(const ScalarMA2& fit) {
  const double a = fit.theta2;
  const double b = fit.theta1;
  if (a == 0.0) {
    return b == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(b);
  }
  // Roots of a z^2 + b z + 1; their product is 1/a.
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4.0 * a, 0.0));
  const std::complex<double> q = -0.5 * (b + (b >= 0.0 ? disc : -disc));
  if (std::abs(q) == 0.0) return std::sqrt(1.0 / std::abs(a));
  const std::complex<double> z1 = q / a;
  const std::complex<double> z2 = 1.0 / q;
  return std::min(std::abs(z1), std::abs(z2));
}

}  // namespace mvhp
