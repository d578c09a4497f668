#include "mvhp/numerics.hpp"

#include "mvhp/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mvhp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

SymMatrix::SymMatrix(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square with order >= 1");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "symmetric matrix has non-finite entries");
  }
  const double scale = max_abs(a);
  const double asym = max_abs(a - a.transpose());
  if (asym > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  m_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::shifted(double alpha) const {
  Matrix b = m_;
  b.diagonal().array() += alpha;
  return SymMatrix(b);
}

SymMatrix SymMatrix::symmetrized(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square with order >= 1");
  }
  SymMatrix out;
  out.m_ = 0.5 * (a + a.transpose());
  return out;
}

SymMatrix whiten(const Matrix& m_upper, const SymMatrix& s) {
  // x = (M')^{-1} s, then (M')^{-1} x' = ((M')^{-1} s M^{-1})'.
  const auto lower = m_upper.transpose().triangularView<Eigen::Lower>();
  const Matrix x = lower.solve(s.matrix());
  const Matrix y = lower.solve(x.transpose());
  return SymMatrix::symmetrized(y);
}

Matrix cholesky(const SymMatrix& sym) {
  const Matrix& a = sym.matrix();
  const Eigen::Index d = a.rows();
  const double threshold = static_cast<double>(d) * kEps * max_abs(a);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= m(k, j) * m(k, j);
    if (!(pivot > threshold)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(pivot) + " at index " + std::to_string(j));
    }
    const double mjj = std::sqrt(pivot);
    m(j, j) = mjj;
    for (Eigen::Index i = j + 1; i < d; ++i) {
      double s = a(j, i);
      for (Eigen::Index k = 0; k < j; ++k) s -= m(k, j) * m(k, i);
      m(j, i) = s / mjj;
    }
  }
  return m;
}

EigenPair sym_eig(const SymMatrix& sym) {
  Matrix a = sym.matrix();
  const Eigen::Index d = a.rows();
  Matrix v = Matrix::Identity(d, d);
  const double norm2 = a.squaredNorm();
  const int max_sweeps = 100 * static_cast<int>(d);

  auto off_norm2 = [&] {
    double s = 0.0;
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = p + 1; q < d; ++q) s += a(p, q) * a(p, q);
    return s;
  };

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm2() <= kEps * kEps * norm2 * 1e-2) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double g = a(r, p);
          const double h = a(r, q);
          a(r, p) = a(p, r) = c * g - s * h;
          a(r, q) = a(q, r) = s * g + c * h;
        }
        for (Eigen::Index r = 0; r < d; ++r) {
          const double g = v(r, p);
          const double h = v(r, q);
          v(r, p) = c * g - s * h;
          v(r, q) = s * g + c * h;
        }
      }
    }
  }
  if (!converged && off_norm2() > kEps * kEps * norm2 * 1e-2) {
    throw Error(ErrorCode::NoConvergence, "Jacobi iteration did not converge");
  }

  // Sign convention: largest-magnitude entry (first one on ties) positive.
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(v(i, k)) > std::abs(v(imax, k))) imax = i;
    if (v(imax, k) < 0.0) v.col(k) = -v.col(k);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (a(x, x) != a(y, y)) return a(x, x) > a(y, y);
    for (Eigen::Index i = 0; i < d; ++i)
      if (v(i, x) != v(i, y)) return v(i, x) > v(i, y);
    return x < y;
  });

  EigenPair out{Vector(d), Matrix(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

std::vector<double> solve_pentadiagonal(const PentaBands& bands, std::span<const double> rhs) {
  const std::size_t n = bands.size();
  const std::size_t n1 = n >= 1 ? n - 1 : 0;
  const std::size_t n2 = n >= 2 ? n - 2 : 0;
  if (n == 0 || rhs.size() != n || bands.lower1.size() != n1 || bands.upper1.size() != n1 ||
      bands.lower2.size() != n2 || bands.upper2.size() != n2) {
    throw Error(ErrorCode::DimensionMismatch, "pentadiagonal band lengths do not match the right-hand side");
  }

  // Working copies of the diagonal and first super-diagonal after elimination;
  // the second super-diagonal is untouched by the sweep.
  std::vector<double> d(bands.diag);
  std::vector<double> e(bands.upper1);
  std::vector<double> r(rhs.begin(), rhs.end());

  for (std::size_t i = 0; i < n; ++i) {
    double l1 = i >= 1 ? bands.lower1[i - 1] : 0.0;
    if (i >= 2) {
      const double m = bands.lower2[i - 2] / d[i - 2];
      l1 -= m * e[i - 2];
      d[i] -= m * bands.upper2[i - 2];
      r[i] -= m * r[i - 2];
    }
    if (i >= 1) {
      const double m = l1 / d[i - 1];
      d[i] -= m * e[i - 1];
      if (i < n1) e[i] -= m * bands.upper2[i - 1];
      r[i] -= m * r[i - 1];
    }
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
      throw Error(ErrorCode::NotPositiveDefinite, "non-positive pivot at row " + std::to_string(i));
    }
  }

  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = r[k];
    if (k + 1 < n) s -= e[k] * x[k + 1];
    if (k + 2 < n) s -= bands.upper2[k] * x[k + 2];
    x[k] = s / d[k];
  }
  return x;
}

std::array<std::complex<double>, 4> quartic_roots(double c0, double c1, double c2, double c3, double c4) {
  if (!(std::abs(c4) >= 1e-300)) {
    throw Error(ErrorCode::DegenerateLeadingCoefficient, "leading quartic coefficient vanishes");
  }
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  companion(0, 3) = -c0 / c4;
  companion(1, 3) = -c1 / c4;
  companion(2, 3) = -c2 / c4;
  companion(3, 3) = -c3 / c4;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "companion matrix eigenvalues did not converge");
  }

  using Cx = std::complex<long double>;
  const std::array<long double, 5> c{c0, c1, c2, c3, c4};
  auto eval = [&](Cx z, Cx& dp) {
    Cx p = c[4];
    dp = 0.0L;
    for (int k = 3; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[static_cast<std::size_t>(k)];
    }
    return p;
  };

  std::array<std::complex<double>, 4> roots;
  for (int k = 0; k < 4; ++k) {
    Cx z(solver.eigenvalues()(k).real(), solver.eigenvalues()(k).imag());
    Cx dp;
    Cx p = eval(z, dp);
    for (int it = 0; it < 30 && std::abs(p) > 0.0L && std::abs(dp) > 0.0L; ++it) {
      const Cx next = z - p / dp;
      Cx dnext;
      const Cx pnext = eval(next, dnext);
      if (!(std::abs(pnext) < std::abs(p))) break;
      z = next;
      p = pnext;
      dp = dnext;
    }
    roots[static_cast<std::size_t>(k)] = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
  return roots;
}

double frobenius(const Matrix& a) { return a.norm(); }

double relative_frobenius(const Matrix& a, const Matrix& b) {
  const double nb = b.norm();
  const double diff = (a - b).norm();
  return nb > 0.0 ? diff / nb : diff;
}

}  // namespace mvhp
