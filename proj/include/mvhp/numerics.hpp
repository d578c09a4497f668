#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace mvhp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Real symmetric matrix. Construction checks symmetry to a relative
/// tolerance of 1e-12 and then stores the exactly symmetric part, so
/// entries(i,j) == entries(j,i) holds bit-for-bit afterwards.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& a);

  static SymMatrix identity(Eigen::Index d) { return SymMatrix(Matrix::Identity(d, d)); }
  static SymMatrix zero(Eigen::Index d) { return SymMatrix(Matrix::Zero(d, d)); }
  static SymMatrix diagonal(const Vector& v) { return SymMatrix(Matrix(v.asDiagonal())); }

  Eigen::Index order() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  SymMatrix shifted(double alpha) const;  // this + alpha * I

  /// Symmetric part of `a` without the asymmetry check; for results of
  /// arithmetic that is symmetric in exact arithmetic only.
  static SymMatrix symmetrized(const Matrix& a);

 private:
  Matrix m_;
};

/// Eigen-decomposition of a symmetric matrix. Values are sorted in
/// descending order and column k of `vectors` belongs to values[k].
struct EigenPair {
  Vector values;
  Matrix vectors;
};

/// Upper-triangular M with a = M'M. Throws NotPositiveDefinite when a pivot
/// falls below d * eps * max|a_ij|.
Matrix cholesky(const SymMatrix& a);

/// Cyclic Jacobi. Vectors are orthonormal; each vector's largest-magnitude
/// entry is made positive. Ties in the values are ordered by the first
/// differing eigenvector entry (larger first).
EigenPair sym_eig(const SymMatrix& a);

/// Bands of a pentadiagonal matrix A. Row i reads
///   lower2[i-2] x[i-2] + lower1[i-1] x[i-1] + diag[i] x[i]
///     + upper1[i] x[i+1] + upper2[i] x[i+2].
/// lower2/upper2 have length N-2, lower1/upper1 length N-1.
struct PentaBands {
  std::vector<double> lower2;
  std::vector<double> lower1;
  std::vector<double> diag;
  std::vector<double> upper1;
  std::vector<double> upper2;

  std::size_t size() const noexcept { return diag.size(); }
};

/// O(N) elimination without pivoting; intended for symmetric positive
/// definite bands. Throws NotPositiveDefinite on a non-positive pivot.
std::vector<double> solve_pentadiagonal(const PentaBands& bands, std::span<const double> rhs);

/// Roots of c0 + c1 z + c2 z^2 + c3 z^3 + c4 z^4, from the eigenvalues of
/// the companion matrix, polished by Newton iteration in extended precision.
std::array<std::complex<double>, 4> quartic_roots(double c0, double c1, double c2, double c3, double c4);

/// (M')^{-1} s M^{-1} for an upper-triangular Cholesky factor M.
SymMatrix whiten(const Matrix& m_upper, const SymMatrix& s);

double frobenius(const Matrix& a);

/// ||a - b||_F / ||b||_F, or the absolute norm when b vanishes.
double relative_frobenius(const Matrix& a, const Matrix& b);

}  // namespace mvhp
