#ifndef BLENDKIT_BERNSTEIN_HPP
#define BLENDKIT_BERNSTEIN_HPP

#include <vector>

#include "blendkit/matrix.hpp"

namespace blendkit {

// Bernstein basis of one degree on an interval [a,b], together with the
// collocation matrix T[i][j] = B_j(x_i) at the uniform nodes
// x_i = a + (i/degree)(b-a) and its LU factors. Degree 0 is allowed and has
// the single node a.
class BernsteinContext {
 public:
  BernsteinContext(int degree, double a, double b);

  int degree() const { return degree_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const DenseMatrix& collocation() const { return collocation_; }

  // values of all degree+1 basis functions at x
  std::vector<double> basis(double x) const;

  // coefficients v with T v = samples, i.e. the dual functionals applied to
  // the function sampled at the nodes
  std::vector<double> dual_apply(const std::vector<double>& samples) const;

 private:
  int degree_;
  double a_, b_;
  std::vector<double> binom_;
  std::vector<double> nodes_;
  DenseMatrix collocation_;
  LuFactorization collocation_t_lu_;  // factors of T^T, shared by every dual_apply
};

// Matrix E with B^low(x) = B^high(x) E on the shared interval, computed by
// collocating the low basis at the high nodes. Equal degrees give the exact
// identity. low degree above high raises DegreeOrder, different intervals
// raise IntervalMismatch.
DenseMatrix elevation_matrix(const BernsteinContext& low, const BernsteinContext& high);

}  // namespace blendkit

#endif
