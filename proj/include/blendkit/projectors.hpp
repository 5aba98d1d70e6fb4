#ifndef BLENDKIT_PROJECTORS_HPP
#define BLENDKIT_PROJECTORS_HPP

#include <vector>

#include "blendkit/bernstein.hpp"
#include "blendkit/blend_spec.hpp"
#include "blendkit/matrix.hpp"

namespace blendkit {

// Univariate projector P_{m_k} onto degree m_k inside degree m_r: keeps the
// top-level dual coefficients at the node indices alpha^k and re-expresses
// them in the dual basis D^{m_k} = B^{m_k} A with A the inverse of the
// elevation submatrix at rows alpha^k. Level r has A = identity exactly.
class LevelProjector {
 public:
  LevelProjector(BernsteinContext low, BernsteinContext high, std::vector<int> selected,
                 DenseMatrix dual_coeff);

  const BernsteinContext& low() const { return low_; }
  const BernsteinContext& high() const { return high_; }
  const std::vector<int>& selected_indices() const { return selected_; }
  const DenseMatrix& dual_coeff() const { return dual_coeff_; }

  // coefficients of P f from samples of f at the high-degree nodes
  std::vector<double> project(const std::vector<double>& high_samples) const;

  // values of the dual basis functions D_0..D_{m_k} at x
  std::vector<double> eval_dual_basis(double x) const;

 private:
  BernsteinContext low_, high_;
  std::vector<int> selected_;
  DenseMatrix dual_coeff_;
};

LevelProjector build_projector(const BlendSpec& spec, Axis axis, int k, double a, double b);

}  // namespace blendkit

#endif
