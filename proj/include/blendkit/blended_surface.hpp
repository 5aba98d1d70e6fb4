#ifndef BLENDKIT_BLENDED_SURFACE_HPP
#define BLENDKIT_BLENDED_SURFACE_HPP

#include <functional>
#include <iosfwd>
#include <tuple>
#include <vector>

#include "blendkit/blend_spec.hpp"
#include "blendkit/projectors.hpp"

namespace blendkit {

using SampleFn = std::function<double(double, double)>;

struct Rect {
  double a, b, c, d;
};

// Surface in the blended space: coefficients b_{i,j} on the grid G combined
// through the Boolean sum of the level projectors,
//   sum_k P_{m_k} Q_{n_{r-k}} - sum_k P_{m_k} Q_{n_{r-k-1}}.
// Immutable after construction; evaluate is safe to call concurrently.
class BlendedSurface {
 public:
  struct ControlPoint {
    int i, j;
    double x, y, b;
  };

  const BlendSpec& spec() const { return spec_; }
  const Rect& rect() const { return rect_; }
  const QuasiUniformGrid& grid() const { return grid_; }

  double coeff(int i, int j) const;  // NotInGrid off the grid
  double evaluate(double u, double v) const;

  // value of the cardinal surface Phi_{i,j} at (u,v); (i,j) must lie in G
  double dual_basis_eval(int i, int j, double u, double v) const;

  // one record per grid point, lexicographic
  std::vector<ControlPoint> control_net() const;
  void write_control_net_csv(std::ostream& out) const;

  friend BlendedSurface fit(const BlendSpec& spec, const Rect& rect, const SampleFn& f);
  friend BlendedSurface from_coeffs(const BlendSpec& spec, const Rect& rect,
                                    const std::vector<std::tuple<int, int, double>>& entries);

 private:
  BlendedSurface(BlendSpec spec, Rect rect);

  BlendSpec spec_;
  Rect rect_;
  QuasiUniformGrid grid_;
  std::vector<LevelProjector> x_proj_, y_proj_;
  std::vector<double> coeffs_;  // aligned with grid_.points()
};

// least-interpolant fit: dual functionals of the top tensor grid applied to
// samples of f, restricted to G
BlendedSurface fit(const BlendSpec& spec, const Rect& rect, const SampleFn& f);

// rebuild a surface from stored coefficients; entries must cover G exactly
BlendedSurface from_coeffs(const BlendSpec& spec, const Rect& rect,
                           const std::vector<std::tuple<int, int, double>>& entries);

}  // namespace blendkit

#endif
