#include "mvhp/ma2_mle.hpp"

#include "mvhp/error.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace mvhp::ma2 {

namespace {

constexpr int kGridPoints = 40;

struct Sums {
  double vv = 0.0;    // sum v_t^2
  double vdv = 0.0;   // sum v_t v'_t
  double dvdv = 0.0;  // sum v'_t^2
};

// One pass over x producing the residual and derivative sums.
Sums accumulate(std::span<const double> x, double theta1) {
  const double phi = theta1 / (4.0 + theta1);  // = -theta2
  const double dphi = 4.0 / ((4.0 + theta1) * (4.0 + theta1));
  double v1 = 0.0, v2 = 0.0, d1 = 0.0, d2 = 0.0;
  Sums s;
  for (double xt : x) {
    const double v = xt - theta1 * v1 + phi * v2;
    const double dv = -theta1 * d1 + phi * d2 - v1 + dphi * v2;
    s.vv += v * v;
    s.vdv += v * dv;
    s.dvdv += dv * dv;
    v2 = v1;
    v1 = v;
    d2 = d1;
    d1 = dv;
  }
  return s;
}

void check_theta(double theta1) {
  if (!(theta1 >= -2.0 && theta1 <= 0.0)) {
    throw Error(ErrorCode::OutOfInvertibleRange, "theta1 must lie in [-2, 0]");
  }
}

}  // namespace

std::vector<double> residuals(std::span<const double> x, double theta1) {
  check_theta(theta1);
  const double phi = theta1 / (4.0 + theta1);
  std::vector<double> v(x.size());
  double v1 = 0.0, v2 = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    v[t] = x[t] - theta1 * v1 + phi * v2;
    v2 = v1;
    v1 = v[t];
  }
  return v;
}

std::vector<double> grad_residuals(std::span<const double> x, double theta1) {
  const std::vector<double> v = residuals(x, theta1);
  const double phi = theta1 / (4.0 + theta1);
  const double dphi = 4.0 / ((4.0 + theta1) * (4.0 + theta1));
  std::vector<double> dv(v.size());
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const double vm1 = t >= 1 ? v[t - 1] : 0.0;
    const double vm2 = t >= 2 ? v[t - 2] : 0.0;
    dv[t] = -theta1 * d1 + phi * d2 - vm1 + dphi * vm2;
    d2 = d1;
    d1 = dv[t];
  }
  return dv;
}

Objective neg_loglik(std::span<const double> x, double theta1) {
  check_theta(theta1);
  if (x.empty()) throw Error(ErrorCode::TooShort, "empty series");
  const Sums s = accumulate(x, theta1);
  if (!(s.vv > 0.0)) {
    throw Error(ErrorCode::ZeroResidualVariance, "residuals vanish identically");
  }
  if (!std::isfinite(s.vv)) {
    throw Error(ErrorCode::NoConvergence, "residual recursion overflowed");
  }
  const double omega = s.vv / static_cast<double>(x.size());
  return {0.5 * std::log(omega) + 0.5, omega, s.vdv / s.vv};
}

Fit fit(std::span<const double> x) {
  if (x.size() < kMinLength) {
    throw Error(ErrorCode::TooShort, "MA(2) fit needs at least " + std::to_string(kMinLength) + " observations");
  }
  for (double xt : x) {
    if (!std::isfinite(xt)) throw Error(ErrorCode::InvalidArgument, "series contains non-finite values");
  }

  // Searched objective is log(sum v^2 / sum x^2), which differs from the
  // concentrated likelihood by a constant and is invariant to rescaling x.
  double xx = 0.0;
  for (double xt : x) xx += xt * xt;
  if (!(xx > 0.0)) throw Error(ErrorCode::ZeroResidualVariance, "series is identically zero");
  auto value = [&](double t) { return 0.5 * std::log(accumulate(x, t).vv / xx); };
  auto gradient = [&](double t) { return neg_loglik(x, t).gradient; };

  // Multistart grid, then Brent on the bracket around the best grid point.
  std::array<double, kGridPoints> grid{};
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGridPoints; ++k) {
    grid[k] = kLowerBound + (kUpperBound - kLowerBound) * k / (kGridPoints - 1);
    const double f = value(grid[k]);
    if (f < best_value) {
      best_value = f;
      best = k;
    }
  }
  const double a = grid[std::max(best - 1, 0)];
  const double b = grid[std::min(best + 1, kGridPoints - 1)];
  std::uintmax_t iters = 200;
  auto [theta, f_theta] = boost::math::tools::brent_find_minima(
      value, a, b, std::numeric_limits<double>::digits / 2, iters);
  if (best_value < f_theta) {
    theta = grid[best];
    f_theta = best_value;
  }

  // Polish on the analytic gradient inside the smallest sign-changing bracket.
  for (double h = 1e-9; h < 2.0 * (b - a); h *= 4.0) {
    const double lo = std::max(a, theta - h);
    const double hi = std::min(b, theta + h);
    const double glo = gradient(lo);
    const double ghi = gradient(hi);
    if (glo < 0.0 && ghi > 0.0) {
      std::uintmax_t root_iters = 100;
      auto [r0, r1] = boost::math::tools::toms748_solve(
          gradient, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), root_iters);
      const double root = 0.5 * (r0 + r1);
      if (value(root) <= f_theta + 1e-13) theta = root;
      break;
    }
    if (lo == a && hi == b) break;
  }

  const Objective at = neg_loglik(x, theta);
  const Sums s = accumulate(x, theta);
  Fit out;
  out.model = {theta, constrained_theta2(theta), at.omega_hat};
  out.neg_loglik = at.value;
  out.se_theta1 = s.dvdv > 0.0 ? std::sqrt(at.omega_hat / s.dvdv) : std::numeric_limits<double>::infinity();
  out.n_used = x.size();
  out.boundary = (theta - -2.0) <= kBoundaryWidth || -theta <= kBoundaryWidth;
  return out;
}

}  // namespace mvhp::ma2
