#pragma once

#include "mvhp/scalar_ma2.hpp"

#include <span>
#include <vector>

namespace mvhp {

/// Quasi-likelihood estimation of the constrained MA(2)
///   x_t = v_t + theta1 v_{t-1} + theta2 v_{t-2},  theta2 = -theta1 / (4 + theta1),
/// conditioning on v_0 = v_{-1} = 0. The input is taken as mean zero; no
/// intercept is estimated.
namespace ma2 {

inline constexpr std::size_t kMinLength = 10;
inline constexpr double kLowerBound = -2.0 + 1e-8;
inline constexpr double kUpperBound = -1e-8;
inline constexpr double kBoundaryWidth = 1e-6;

struct Fit {
  ScalarMA2 model;
  double neg_loglik = 0.0;  // concentrated objective at the optimum
  double se_theta1 = 0.0;
  std::size_t n_used = 0;
  bool boundary = false;  // optimum within kBoundaryWidth of -2 or 0
};

struct Objective {
  double value;      // 0.5 log(omega_hat) + 0.5
  double omega_hat;  // mean of v_t^2
  double gradient;   // sum(v v') / sum(v^2)
};

std::vector<double> residuals(std::span<const double> x, double theta1);

/// d v_t / d theta1, by differentiating the residual recursion.
std::vector<double> grad_residuals(std::span<const double> x, double theta1);

/// Concentrated negative log-likelihood. Throws ZeroResidualVariance on an
/// all-zero residual sequence.
Objective neg_loglik(std::span<const double> x, double theta1);

Fit fit(std::span<const double> x);

}  // namespace ma2
}  // namespace mvhp
