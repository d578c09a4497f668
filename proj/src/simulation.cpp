#include "mvhp/simulation.hpp"

#include "mvhp/error.hpp"

#include <cmath>

namespace mvhp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma shape must be positive");
  if (shape < 1.0) {
    double u;
    do u = uniform();
    while (u == 0.0);
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::unit_t(double df) {
  if (!(df > 2.0)) throw Error(ErrorCode::InvalidArgument, "t variance needs df > 2");
  const double z = normal();
  const double chi2 = 2.0 * gamma(0.5 * df);
  return z / std::sqrt(chi2 / df) * std::sqrt((df - 2.0) / df);
}

Matrix covariance_factor(const SymMatrix& s) {
  try {
    return cholesky(s).transpose();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
  }
  const EigenPair eig = sym_eig(s);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (eig.values.minCoeff() < -1e-10 * scale) {
    throw Error(ErrorCode::InvalidArgument, "covariance matrix is not positive semidefinite");
  }
  const Vector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.asDiagonal();
}

void validate(const SimConfig& cfg) {
  if (cfg.n < 12) throw Error(ErrorCode::TooShort, "simulation needs N >= 12");
  if (cfg.sigma_eps.order() < 1 || cfg.sigma_eps.order() != cfg.sigma_xi.order()) {
    throw Error(ErrorCode::DimensionMismatch, "sigma_eps and sigma_xi must have the same positive order");
  }
  const Eigen::Index d = cfg.dim();
  if ((cfg.init_mu.size() && cfg.init_mu.size() != d) || (cfg.init_beta.size() && cfg.init_beta.size() != d)) {
    throw Error(ErrorCode::DimensionMismatch, "initial state length differs from dimension");
  }
  if (cfg.noise == NoiseDist::ScaledT && !(cfg.df > 4.0)) {
    throw Error(ErrorCode::InvalidArgument, "scaled-t noise needs df > 4 (finite fourth moments)");
  }
}

Simulation simulate(const SimConfig& cfg) {
  validate(cfg);
  const Eigen::Index d = cfg.dim();
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const Matrix le = covariance_factor(cfg.sigma_eps);
  const Matrix lx = covariance_factor(cfg.sigma_xi);

  Rng rng(cfg.seed);
  auto draw = [&] {
    Vector e(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      e(i) = cfg.noise == NoiseDist::Gaussian ? rng.normal() : rng.unit_t(cfg.df);
    }
    return e;
  };

  Vector mu = cfg.init_mu.size() ? cfg.init_mu : Vector::Zero(d);
  Vector beta = cfg.init_beta.size() ? cfg.init_beta : Vector::Zero(d);
  Simulation out{Matrix(n, d), Matrix(n, d)};
  for (Eigen::Index t = 0; t < n; ++t) {
    const Vector eps = le * draw();
    const Vector xi = lx * draw();
    out.trend.row(t) = mu.transpose();
    out.y.row(t) = (mu + eps).transpose();
    mu += beta;
    beta += xi;
  }
  return out;
}

std::vector<Matrix> sample_autocovariances(const Matrix& z, std::size_t max_lag) {
  const auto n = static_cast<std::size_t>(z.rows());
  if (4 * max_lag >= n) throw Error(ErrorCode::LagTooLarge, "max_lag must be below N / 4");
  std::vector<Matrix> out;
  for (std::size_t j = 0; j <= max_lag; ++j) {
    const auto m = static_cast<Eigen::Index>(n - j);
    out.push_back(z.bottomRows(m).transpose() * z.topRows(m) / static_cast<double>(n));
  }
  return out;
}

}  // namespace mvhp
