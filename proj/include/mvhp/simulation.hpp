#pragma once

#include "mvhp/numerics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mvhp {

/// xoshiro256** 1.0 seeded through splitmix64. Output depends only on the
/// seed, on every platform. Normal variates use the Marsaglia polar method
/// on top of it, so sequences are reproducible bit-for-bit as well.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();  // in [0, 1), 53 random bits
  double normal();
  double gamma(double shape);  // unit scale, Marsaglia-Tsang
  /// Student t with `df` degrees of freedom, rescaled to unit variance (df > 2).
  double unit_t(double df);

 private:
  std::uint64_t s_[4];
  std::optional<double> spare_;
};

enum class NoiseDist { Gaussian, ScaledT };

struct SimConfig {
  std::size_t n = 0;
  SymMatrix sigma_eps;
  SymMatrix sigma_xi;
  std::uint64_t seed = 0;
  NoiseDist noise = NoiseDist::Gaussian;
  double df = 0.0;  // ScaledT only; must exceed 4
  Vector init_mu;   // empty means zeros
  Vector init_beta;

  Eigen::Index dim() const noexcept { return sigma_eps.order(); }
};

struct Simulation {
  Matrix y;      // N x d observations
  Matrix trend;  // N x d true mu_t
};

void validate(const SimConfig& cfg);

/// y_t = mu_t + eps_t, mu_{t+1} = mu_t + beta_t, beta_{t+1} = beta_t + xi_t,
/// with eps and xi independent. Covariances may be semidefinite.
Simulation simulate(const SimConfig& cfg);

/// Gamma_j = N^{-1} sum_t z_t z_{t-j}', j = 0..max_lag, no mean removal.
/// Requires max_lag < N / 4.
std::vector<Matrix> sample_autocovariances(const Matrix& z, std::size_t max_lag);

/// Square root factor L with L L' = s for a positive semidefinite s.
Matrix covariance_factor(const SymMatrix& s);

}  // namespace mvhp
