#include "blendkit/matrix.hpp"

#include <cmath>
#include <utility>

namespace blendkit {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> operator*(const DenseMatrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) throw Error("matrix-vector shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

double inf_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::fabs(a(i, j));
    if (s > best) best = s;
  }
  return best;
}

LuFactorization::LuFactorization(const DenseMatrix& a) : lu_(a) {
  if (a.rows() != a.cols()) throw Error("LU factorization needs a square matrix");
  const std::size_t n = a.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
  // singularity threshold is relative to the largest entry of the input
  const double tiny = 1e-13 * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(lu_(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double v = std::fabs(lu_(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best > tiny)) throw SingularMatrix("pivot " + std::to_string(best) + " below threshold at column " + std::to_string(col));
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(piv, j), lu_(col, j));
      std::swap(perm_[piv], perm_[col]);
    }
    const double d = lu_(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = lu_(i, col) / d;
      lu_(i, col) = f;
      for (std::size_t j = col + 1; j < n; ++j) lu_(i, j) -= f * lu_(col, j);
    }
  }
}

std::vector<double> LuFactorization::solve(const std::vector<double>& b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error("solve: right-hand side length mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  // forward substitution with unit lower triangle
  for (std::size_t i = 1; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

DenseMatrix LuFactorization::solve(const DenseMatrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw Error("solve: right-hand side row mismatch");
  DenseMatrix x(n, b.cols());
  std::vector<double> col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const std::vector<double> sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

std::vector<double> LuFactorization::solve_transposed(const std::vector<double>& b) const {
  // A = P^T L U, so A^T x = b becomes U^T y = b, L^T z = y, x = P^T z.
  const std::size_t n = size();
  if (b.size() != n) throw Error("solve_transposed: right-hand side length mismatch");
  std::vector<double> y(b);
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * y[j];
    y[i] = s / lu_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(j, ii) * y[j];
    y[ii] = s;
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b) {
  return LuFactorization(a).solve(b);
}

DenseMatrix invert(const DenseMatrix& a) {
  return LuFactorization(a).solve(DenseMatrix::identity(a.rows()));
}

}  // namespace blendkit
