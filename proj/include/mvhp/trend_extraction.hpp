#pragma once

#include "mvhp/decoupling.hpp"
#include "mvhp/numerics.hpp"

#include <limits>
#include <span>
#include <vector>

namespace mvhp {

/// lambda value that selects the straight-line (infinitely smooth) trend.
inline constexpr double kInfiniteLambda = std::numeric_limits<double>::infinity();

/// Hodrick-Prescott smoother: argmin sum (x_t - mu_t)^2 + lambda sum (D^2 mu_t)^2,
/// solved as (I + lambda D'D) mu = x with free end points. lambda = infinity
/// returns the least-squares line through x. Needs N >= 4.
std::vector<double> hp_smooth(std::span<const double> x, double lambda);

/// Scratch buffers for repeated smoothing; grown on demand and reused.
struct HpWorkspace {
  std::vector<double> inv_pivot;
  std::vector<double> upper;
};

/// As above, writing into `out` (same length as x, may alias it).
void hp_smooth(std::span<const double> x, double lambda, std::span<double> out, HpWorkspace& ws);

/// Bands of I + lambda D'D, D the (N-2) x N second-difference operator.
PentaBands hp_bands(std::size_t n, double lambda);

struct TrendResult {
  Matrix trend;
  Matrix cycle;
  Vector lambda;  // per transformed component; lambda_k = 1 / delta_k
  Decoupling transform;
};

/// Smooths each component of P^{-1} y_t with its own lambda_k = 1 / delta_k
/// (straight line where delta_k is zero) and maps the trends back with P.
/// The lambda convention: the smoother weight is the noise-to-signal ratio,
/// so a signal-noise ratio of 1/14400 corresponds to the usual monthly 14400.
TrendResult extract_trends(const Matrix& y, const Decoupling& dec, unsigned threads = 1);

/// As extract_trends, with every lambda_k replaced by `lambda`.
TrendResult extract_trends_fixed(const Matrix& y, const Decoupling& dec, double lambda, unsigned threads = 1);

}  // namespace mvhp
