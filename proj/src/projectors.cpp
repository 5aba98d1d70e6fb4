#include "blendkit/projectors.hpp"

#include <utility>

namespace blendkit {

LevelProjector::LevelProjector(BernsteinContext low, BernsteinContext high, std::vector<int> selected,
                               DenseMatrix dual_coeff)
    : low_(std::move(low)),
      high_(std::move(high)),
      selected_(std::move(selected)),
      dual_coeff_(std::move(dual_coeff)) {}

std::vector<double> LevelProjector::project(const std::vector<double>& high_samples) const {
  const std::vector<double> lam = high_.dual_apply(high_samples);
  std::vector<double> c(selected_.size());
  for (std::size_t i = 0; i < selected_.size(); ++i) c[i] = lam[selected_[i]];
  return c;
}

std::vector<double> LevelProjector::eval_dual_basis(double x) const {
  const std::vector<double> b = low_.basis(x);
  // D(x) = B(x) A, one value per selected index
  std::vector<double> d(selected_.size(), 0.0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * dual_coeff_(i, j);
    d[j] = s;
  }
  return d;
}

LevelProjector build_projector(const BlendSpec& spec, Axis axis, int k, double a, double b) {
  if (k < 0 || k > spec.r()) throw InvalidSpec("build_projector: level out of range");
  const std::vector<int>& deg = (axis == Axis::first) ? spec.m() : spec.n();
  const IndexSequences seqs = index_sequences(spec);
  std::vector<int> sel = (axis == Axis::first) ? seqs.alpha[k] : seqs.beta[k];
  BernsteinContext low(deg[k], a, b);
  BernsteinContext high(deg.back(), a, b);
  DenseMatrix coeff;
  if (k == spec.r()) {
    coeff = DenseMatrix::identity(sel.size());
  } else {
    const DenseMatrix e = elevation_matrix(low, high);
    DenseMatrix sub(sel.size(), sel.size());
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::size_t j = 0; j < sel.size(); ++j) sub(i, j) = e(sel[i], j);
    coeff = invert(sub);
  }
  return LevelProjector(std::move(low), std::move(high), std::move(sel), std::move(coeff));
}

}  // namespace blendkit
