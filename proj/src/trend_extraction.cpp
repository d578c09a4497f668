#include "mvhp/trend_extraction.hpp"

#include "mvhp/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace mvhp {

namespace {

std::vector<double> least_squares_line(std::span<const double> x) {
  const std::size_t n = x.size();
  const double tbar = 0.5 * static_cast<double>(n - 1);
  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - tbar;
    sxy += dt * (x[t] - xbar);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;
  std::vector<double> mu(n);
  for (std::size_t t = 0; t < n; ++t) mu[t] = xbar + slope * (static_cast<double>(t) - tbar);
  return mu;
}

TrendResult extract(const Matrix& y, const Decoupling& dec, const Vector& lambda, unsigned threads) {
  const Matrix ytilde = y * dec.p_inv.transpose();
  Matrix mutilde(y.rows(), y.cols());
  detail::parallel_for(static_cast<std::size_t>(y.cols()), threads, [&](std::size_t k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const auto n = static_cast<std::size_t>(y.rows());
    HpWorkspace ws;
    hp_smooth({ytilde.col(kk).data(), n}, lambda(kk), {mutilde.col(kk).data(), n}, ws);
  });
  TrendResult out;
  out.trend = mutilde * dec.p.transpose();
  out.cycle = y - out.trend;
  out.lambda = lambda;
  out.transform = dec;
  return out;
}

void check_dims(const Matrix& y, const Decoupling& dec) {
  if (y.cols() != dec.dim() || dec.p.rows() != dec.dim() || dec.p_inv.rows() != dec.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "decoupling dimension differs from panel width");
  }
}

}  // namespace

PentaBands hp_bands(std::size_t n, double lambda) {
  PentaBands b;
  b.diag.assign(n, 1.0);
  b.lower1.assign(n >= 1 ? n - 1 : 0, 0.0);
  b.lower2.assign(n >= 2 ? n - 2 : 0, 0.0);
  // Accumulate lambda * r r' for each row r = (1, -2, 1) of D.
  constexpr double row[3] = {1.0, -2.0, 1.0};
  for (std::size_t r = 0; r + 2 < n; ++r) {
    for (std::size_t i = 0; i < 3; ++i) {
      b.diag[r + i] += lambda * row[i] * row[i];
      if (i + 1 < 3) b.lower1[r + i] += lambda * row[i] * row[i + 1];
      if (i + 2 < 3) b.lower2[r + i] += lambda * row[i] * row[i + 2];
    }
  }
  b.upper1 = b.lower1;
  b.upper2 = b.lower2;
  return b;
}

void hp_smooth(std::span<const double> x, double lambda, std::span<double> out, HpWorkspace& ws) {
  if (x.size() < 4) throw Error(ErrorCode::TooShort, "HP smoothing needs at least 4 observations");
  if (std::isnan(lambda) || lambda < 0.0) throw Error(ErrorCode::InvalidArgument, "lambda must be non-negative");
  if (out.size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "output length differs from input");
  if (std::isinf(lambda)) {
    const std::vector<double> line = least_squares_line(x);
    std::copy(line.begin(), line.end(), out.begin());
    return;
  }

  // Same elimination as solve_pentadiagonal, with the symmetric bands of
  // I + lambda D'D generated on the fly and reciprocal pivots stored.
  const std::size_t n = x.size();
  const auto diag = [&](std::size_t i) {
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i == 1 || i == n - 2) ? 5.0 : 6.0;
    return 1.0 + lambda * w;
  };
  const auto off1 = [&](std::size_t i) { return lambda * ((i == 0 || i == n - 2) ? -2.0 : -4.0); };
  const double c = lambda;

  ws.inv_pivot.resize(n);
  ws.upper.resize(n - 1);
  double* inv = ws.inv_pivot.data();
  double* e = ws.upper.data();
  double* r = out.data();
  if (r != x.data()) std::copy(x.begin(), x.end(), r);

  inv[0] = 1.0 / diag(0);
  e[0] = off1(0);
  for (std::size_t i = 1; i < n; ++i) {
    double l1 = off1(i - 1);
    double di = diag(i);
    if (i >= 2) {
      const double m = c * inv[i - 2];
      l1 -= m * e[i - 2];
      di -= m * c;
      r[i] -= m * r[i - 2];
    }
    const double m = l1 * inv[i - 1];
    inv[i] = 1.0 / (di - m * e[i - 1]);
    if (i + 1 < n) e[i] = off1(i) - m * c;
    r[i] -= m * r[i - 1];
  }
  r[n - 1] *= inv[n - 1];
  r[n - 2] = (r[n - 2] - e[n - 2] * r[n - 1]) * inv[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) r[k] = (r[k] - e[k] * r[k + 1] - c * r[k + 2]) * inv[k];
}

std::vector<double> hp_smooth(std::span<const double> x, double lambda) {
  std::vector<double> out(x.size());
  HpWorkspace ws;
  hp_smooth(x, lambda, out, ws);
  return out;
}

TrendResult extract_trends(const Matrix& y, const Decoupling& dec, unsigned threads) {
  check_dims(y, dec);
  const double tol = snr_zero_threshold(dec.delta);
  Vector lambda(dec.dim());
  for (Eigen::Index k = 0; k < dec.dim(); ++k) {
    lambda(k) = dec.delta(k) <= tol ? kInfiniteLambda : 1.0 / dec.delta(k);
  }
  return extract(y, dec, lambda, threads);
}

TrendResult extract_trends_fixed(const Matrix& y, const Decoupling& dec, double lambda, unsigned threads) {
  check_dims(y, dec);
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "fixed lambda must be positive");
  return extract(y, dec, Vector::Constant(dec.dim(), lambda), threads);
}

}  // namespace mvhp
