#ifndef BLENDKIT_MATRIX_HPP
#define BLENDKIT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "blendkit/errors.hpp"

namespace blendkit {

// Dense row-major matrix of doubles. Sizes here are tiny (degree+1 <= 25),
// so everything below is straightforward O(n^3) with no blocking.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, const std::vector<double>& x);

// max absolute row sum
double inf_norm(const DenseMatrix& a);

DenseMatrix transpose(const DenseMatrix& a);

// LU factorization with partial pivoting of a square matrix.
// A pivot smaller than 1e-13 relative to the largest absolute entry of the
// input matrix raises SingularMatrix.
class LuFactorization {
 public:
  explicit LuFactorization(const DenseMatrix& a);

  std::size_t size() const { return lu_.rows(); }

  // solve A x = b
  std::vector<double> solve(const std::vector<double>& b) const;
  // solve A X = B column by column
  DenseMatrix solve(const DenseMatrix& b) const;
  // solve A^T x = b
  std::vector<double> solve_transposed(const std::vector<double>& b) const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix invert(const DenseMatrix& a);

}  // namespace blendkit

#endif
