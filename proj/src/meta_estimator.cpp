#include "mvhp/meta_estimator.hpp"

#include "mvhp/error.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace mvhp {

namespace {

constexpr std::size_t kMinPanelLength = 12;

std::string describe(const Aggregate& w) {
  std::string s = "e" + std::to_string(w.first + 1);
  if (w.second) s += "+e" + std::to_string(*w.second + 1);
  return s;
}

}  // namespace

std::vector<double> Aggregate::weights(std::size_t d) const {
  std::vector<double> w(d, 0.0);
  w.at(first) = 1.0;
  if (second) w.at(*second) = 1.0;
  return w;
}

std::vector<Aggregate> aggregation_set(std::size_t d) {
  std::vector<Aggregate> out;
  out.reserve(d * (d + 1) / 2);
  for (std::size_t i = 0; i < d; ++i) out.push_back({i, std::nullopt});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) out.push_back({i, j});
  return out;
}

Matrix difference_twice(const Matrix& y) {
  if (y.rows() < 3) throw Error(ErrorCode::TooShort, "second differences need at least 3 rows");
  const Eigen::Index n = y.rows() - 2;
  return y.bottomRows(n) - 2.0 * y.middleRows(1, n) + y.topRows(n);
}

std::vector<double> aggregate(const Matrix& z, std::span<const double> w) {
  if (w.size() != static_cast<std::size_t>(z.cols())) {
    throw Error(ErrorCode::DimensionMismatch, "aggregation vector length differs from panel width");
  }
  int ones = 0;
  for (double wi : w) {
    if (wi == 1.0) {
      ++ones;
    } else if (wi != 0.0) {
      throw Error(ErrorCode::DimensionMismatch, "aggregation vector must have 0/1 entries");
    }
  }
  if (ones < 1 || ones > 2) {
    throw Error(ErrorCode::DimensionMismatch, "aggregation vector must be e_i or e_i + e_j");
  }
  const Eigen::Map<const Vector> wv(w.data(), static_cast<Eigen::Index>(w.size()));
  const Vector x = z * wv;
  return {x.data(), x.data() + x.size()};
}

std::vector<double> aggregate(const Matrix& z, const Aggregate& w) {
  return aggregate(z, w.weights(static_cast<std::size_t>(z.cols())));
}

AutocovSet reconstruct_gammas(const std::map<Aggregate, ScalarMA2>& models, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  std::map<Aggregate, ScalarAutocov> g;
  for (const Aggregate& w : aggregation_set(d)) {
    auto it = models.find(w);
    if (it == models.end()) throw Error(ErrorCode::MissingAggregate, "no fit for aggregate " + describe(w));
    g.emplace(w, autocov_from_fit(it->second));
  }

  const auto n = static_cast<Eigen::Index>(d);
  Matrix gam[3] = {Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  auto lag = [](const ScalarAutocov& a, int k) { return k == 0 ? a.gamma0 : (k == 1 ? a.gamma1 : a.gamma2); };
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      gam[k](ii, ii) = lag(g.at({i, std::nullopt}), k);
      for (std::size_t j = i + 1; j < d; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double v = 0.5 * (lag(g.at({i, j}), k) - lag(g.at({i, std::nullopt}), k) - lag(g.at({j, std::nullopt}), k));
        gam[k](ii, jj) = gam[k](jj, ii) = v;
      }
    }
  }
  return {SymMatrix(gam[0]), SymMatrix(gam[1]), SymMatrix(gam[2])};
}

StructuralParams extract_structural(const AutocovSet& g) {
  return {g.gamma2, SymMatrix(g.gamma0.matrix() - 6.0 * g.gamma2.matrix()), 0.0, 0.0};
}

double min_snr_eigenvalue(const SymMatrix& sigma_eps, const SymMatrix& sigma_xi) {
  if (sigma_eps.order() != sigma_xi.order()) throw Error(ErrorCode::DimensionMismatch, "covariance orders differ");
  const Matrix m = cholesky(sigma_eps);
  return sym_eig(whiten(m, sigma_xi)).values.minCoeff();
}

StructuralParams regularize(const StructuralParams& p, double target_min_snr) {
  if (!(target_min_snr >= 0.0) || !std::isfinite(target_min_snr)) {
    throw Error(ErrorCode::InvalidArgument, "target signal-noise floor must be finite and non-negative");
  }
  const Matrix m = cholesky(p.sigma_eps);
  auto min_eig = [&](double alpha) { return sym_eig(whiten(m, p.sigma_xi.shifted(alpha))).values.minCoeff(); };

  StructuralParams out = p;
  const double lambda0 = min_eig(0.0);
  if (lambda0 >= target_min_snr) return out;

  // (sigma_xi + a I) sigma_eps^{-1} has smallest eigenvalue at least
  // lambda0 + a / lambda_max(sigma_eps), which gives a feasible upper end.
  const double eps_max = sym_eig(p.sigma_eps).values.maxCoeff();
  double lo = 0.0;
  double hi = (target_min_snr - lambda0) * eps_max;
  for (int k = 0; k < 200 && min_eig(hi) < target_min_snr; ++k) hi *= 2.0;
  for (int k = 0; k < 400 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (min_eig(mid) >= target_min_snr) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.sigma_xi = p.sigma_xi.shifted(hi);
  out.alpha = p.alpha + hi;
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("MVHP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

MetaResult meta_estimate(const Matrix& y, const MetaOptions& options) {
  if (y.cols() < 1) throw Error(ErrorCode::InvalidArgument, "panel has no series");
  if (y.rows() < static_cast<Eigen::Index>(kMinPanelLength)) {
    throw Error(ErrorCode::TooShort, "estimation needs at least " + std::to_string(kMinPanelLength) + " observations");
  }
  if (!y.allFinite()) throw Error(ErrorCode::InvalidArgument, "panel contains non-finite values");

  const auto d = static_cast<std::size_t>(y.cols());
  const Matrix z = difference_twice(y);
  const std::vector<Aggregate> set = aggregation_set(d);

  MetaResult result;
  result.fits.resize(set.size());
  const unsigned threads = options.threads ? options.threads : worker_count();
  detail::parallel_for(set.size(), threads, [&](std::size_t k) {
    try {
      result.fits[k] = {set[k], ma2::fit(aggregate(z, set[k]))};
    } catch (const Error& e) {
      throw Error(e.code(), "aggregate " + describe(set[k]) + ": " + e.what());
    }
  });

  std::map<Aggregate, ScalarMA2> models;
  for (const AggregateFit& f : result.fits) models.emplace(f.w, f.fit.model);
  result.gammas = reconstruct_gammas(models, d);
  result.unregularized = extract_structural(result.gammas);

  StructuralParams p = result.unregularized;
  try {
    cholesky(p.sigma_eps);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    const double floor = 1e-8 * p.sigma_eps.matrix().trace() / static_cast<double>(d);
    if (!(floor > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "estimated sigma_eps has non-positive trace");
    const double shift = floor - sym_eig(p.sigma_eps).values.minCoeff();
    p.sigma_eps = p.sigma_eps.shifted(shift);
    p.eps_alpha = shift;
  }
  result.params = regularize(p, options.target_min_snr);
  return result;
}

}  // namespace mvhp
