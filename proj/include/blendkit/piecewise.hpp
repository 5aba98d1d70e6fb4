#ifndef BLENDKIT_PIECEWISE_HPP
#define BLENDKIT_PIECEWISE_HPP

#include <iosfwd>
#include <vector>

#include "blendkit/blended_surface.hpp"

namespace blendkit {

// kx x ky grid of blended surfaces over an axis-aligned partition of the
// rectangle; cell (p,q) covers [a + p hx, a + (p+1) hx] x [c + q hy, ...].
// Points on interior cell boundaries belong to the left/lower cell.
class PiecewiseSurface {
 public:
  PiecewiseSurface(BlendSpec spec, Rect rect, int kx, int ky, std::vector<BlendedSurface> cells);

  const BlendSpec& spec() const { return spec_; }
  const Rect& rect() const { return rect_; }
  int kx() const { return kx_; }
  int ky() const { return ky_; }
  const BlendedSurface& cell(int p, int q) const { return cells_[static_cast<std::size_t>(p) * ky_ + q]; }

  double evaluate(double u, double v) const;

 private:
  BlendSpec spec_;
  Rect rect_;
  int kx_, ky_;
  std::vector<BlendedSurface> cells_;  // row-major, cell (p,q) at p*ky+q
};

// fits all cells; cell fits run concurrently, capped by BLENDKIT_THREADS
PiecewiseSurface fit_piecewise(const BlendSpec& spec, const Rect& rect, const SampleFn& f, int kx,
                               int ky);

// max of |cell(x,y) - f(x,y)| over a samples_per_cell^2 uniform grid on each
// closed cell, boundaries included; deterministic for any thread count
double sup_error(const PiecewiseSurface& s, const SampleFn& f, int samples_per_cell);

struct ConvergenceRow {
  int k;
  double h;
  double error;
};

enum class OrderStatus { fitted, insufficient_data, exact };

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double fitted_order;  // NaN unless status is fitted
  OrderStatus status;
};

// log-log slope through the first and last usable rows; rows with error
// below 1e-13 are excluded, fewer than two usable rows raise InsufficientData
double fit_order(const std::vector<ConvergenceRow>& rows);

// one row per k with kx = ky = k and h = (longest side)/k; tail > 0 fits the
// order on the last tail rows only
ConvergenceTable convergence_study(const BlendSpec& spec, const Rect& rect, const SampleFn& f,
                                   const std::vector<int>& ks, int samples_per_cell = 25,
                                   int tail = 0);

void write_convergence_csv(const ConvergenceTable& table, std::ostream& out);

}  // namespace blendkit

#endif
