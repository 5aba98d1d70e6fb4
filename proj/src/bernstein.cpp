#include "blendkit/bernstein.hpp"

#include <cmath>

namespace blendkit {

namespace {

int checked_degree(int degree) {
  if (degree < 0) throw InvalidSpec("degree must be nonnegative");
  return degree;
}

double checked_lower(double a, double b) {
  if (!(b > a)) throw InvalidSpec("interval must have positive length");
  return a;
}

std::vector<double> binomial_row(int n) {
  // Pascal's triangle row; exact in doubles for the degrees used here.
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 1.0);
  for (int j = 1; j <= n; ++j) c[j] = c[j - 1] * static_cast<double>(n - j + 1) / static_cast<double>(j);
  return c;
}

std::vector<double> uniform_nodes(int degree, double a, double b) {
  std::vector<double> x(static_cast<std::size_t>(degree) + 1);
  if (degree == 0) {
    x[0] = a;
    return x;
  }
  for (int i = 0; i <= degree; ++i)
    x[i] = a + (static_cast<double>(i) * (b - a)) / static_cast<double>(degree);
  return x;
}

std::vector<double> basis_values(int degree, double a, double b, const std::vector<double>& binom, double x) {
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  std::vector<double> out(n);
  if (degree == 0) {
    out[0] = 1.0;
    return out;
  }
  const double s = (x - a) / (b - a);
  const double t = 1.0 - s;
  // powers of s ascending and t descending, combined with the binomials
  double sp = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = binom[j] * sp;
    sp *= s;
  }
  double tp = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    out[j] *= tp;
    tp *= t;
  }
  return out;
}

DenseMatrix collocation_matrix(int degree, double a, double b, const std::vector<double>& binom,
                               const std::vector<double>& nodes) {
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  DenseMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> row = basis_values(degree, a, b, binom, nodes[i]);
    for (std::size_t j = 0; j < n; ++j) t(i, j) = row[j];
  }
  return t;
}

}  // namespace

BernsteinContext::BernsteinContext(int degree, double a, double b)
    : degree_(checked_degree(degree)),
      a_(checked_lower(a, b)),
      b_(b),
      binom_(binomial_row(degree)),
      nodes_(uniform_nodes(degree, a, b)),
      collocation_(collocation_matrix(degree, a, b, binom_, nodes_)),
      collocation_t_lu_(transpose(collocation_)) {}

std::vector<double> BernsteinContext::basis(double x) const {
  return basis_values(degree_, a_, b_, binom_, x);
}

std::vector<double> BernsteinContext::dual_apply(const std::vector<double>& samples) const {
  if (samples.size() != static_cast<std::size_t>(degree_) + 1)
    throw Error("dual_apply: expected " + std::to_string(degree_ + 1) + " samples, got " +
                std::to_string(samples.size()));
  return collocation_t_lu_.solve_transposed(samples);
}

DenseMatrix elevation_matrix(const BernsteinContext& low, const BernsteinContext& high) {
  if (low.degree() > high.degree())
    throw DegreeOrder("elevation needs low degree <= high degree, got " + std::to_string(low.degree()) +
                      " > " + std::to_string(high.degree()));
  if (low.a() != high.a() || low.b() != high.b())
    throw IntervalMismatch("elevation needs matching intervals");
  if (low.degree() == high.degree()) return DenseMatrix::identity(static_cast<std::size_t>(low.degree()) + 1);
  const std::size_t nh = static_cast<std::size_t>(high.degree()) + 1;
  const std::size_t nl = static_cast<std::size_t>(low.degree()) + 1;
  // column j re-expands B_j^low in the high basis: dual_apply of its samples
  // at the high nodes
  DenseMatrix e(nh, nl);
  std::vector<std::vector<double>> low_at_high(nh);
  for (std::size_t i = 0; i < nh; ++i) low_at_high[i] = low.basis(high.nodes()[i]);
  std::vector<double> samples(nh);
  for (std::size_t j = 0; j < nl; ++j) {
    for (std::size_t i = 0; i < nh; ++i) samples[i] = low_at_high[i][j];
    const std::vector<double> col = high.dual_apply(samples);
    for (std::size_t i = 0; i < nh; ++i) e(i, j) = col[i];
  }
  return e;
}

}  // namespace blendkit
