#include "blendkit/blended_surface.hpp"

#include <cmath>
#include <ostream>
#include <utility>

#include "blendkit/format.hpp"

namespace blendkit {

namespace {

void check_rect(const Rect& r) {
  if (!(std::isfinite(r.a) && std::isfinite(r.b) && std::isfinite(r.c) && std::isfinite(r.d)))
    throw InvalidSpec("domain bounds must be finite");
  if (!(r.b > r.a) || !(r.d > r.c)) throw InvalidSpec("domain must have positive side lengths");
}

}  // namespace

BlendedSurface::BlendedSurface(BlendSpec spec, Rect rect)
    : spec_(std::move(spec)), rect_(rect), grid_(quasi_uniform_grid(spec_)) {
  for (int k = 0; k <= spec_.r(); ++k) {
    x_proj_.push_back(build_projector(spec_, Axis::first, k, rect_.a, rect_.b));
    y_proj_.push_back(build_projector(spec_, Axis::second, k, rect_.c, rect_.d));
  }
}

double BlendedSurface::coeff(int i, int j) const {
  const int pos = grid_.index_of(i, j);
  if (pos < 0)
    throw NotInGrid("(" + std::to_string(i) + "," + std::to_string(j) + ") is not a grid point");
  return coeffs_[pos];
}

double BlendedSurface::evaluate(double u, double v) const {
  const int r = spec_.r();
  std::vector<std::vector<double>> dx(r + 1), dy(r + 1);
  for (int k = 0; k <= r; ++k) {
    dx[k] = x_proj_[k].eval_dual_basis(u);
    dy[k] = y_proj_[k].eval_dual_basis(v);
  }
  const auto& alpha = grid_.alpha();
  const auto& beta = grid_.beta();
  auto tensor_term = [&](int kx, int ky) {
    double s = 0.0;
    for (std::size_t i = 0; i < alpha[kx].size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < beta[ky].size(); ++j)
        row += coeffs_[grid_.index_of(alpha[kx][i], beta[ky][j])] * dy[ky][j];
      s += dx[kx][i] * row;
    }
    return s;
  };
  double total = 0.0;
  for (int k = 0; k <= r; ++k) total += tensor_term(k, r - k);
  for (int k = 0; k < r; ++k) total -= tensor_term(k, r - k - 1);
  return total;
}

double BlendedSurface::dual_basis_eval(int i, int j, double u, double v) const {
  if (!grid_.contains(i, j))
    throw NotInGrid("(" + std::to_string(i) + "," + std::to_string(j) + ") is not a grid point");
  const int r = spec_.r();
  std::vector<std::vector<double>> dx(r + 1), dy(r + 1);
  for (int k = 0; k <= r; ++k) {
    dx[k] = x_proj_[k].eval_dual_basis(u);
    dy[k] = y_proj_[k].eval_dual_basis(v);
  }
  const auto& inv_a = grid_.inverse_alpha();
  const auto& inv_b = grid_.inverse_beta();
  // terms where (i,j) is off the level's index rectangle drop out
  auto term = [&](int kx, int ky) {
    const int ia = inv_a[kx][i];
    const int jb = inv_b[ky][j];
    if (ia < 0 || jb < 0) return 0.0;
    return dx[kx][ia] * dy[ky][jb];
  };
  double total = 0.0;
  for (int k = 0; k <= r; ++k) total += term(k, r - k);
  for (int k = 0; k < r; ++k) total -= term(k, r - k - 1);
  return total;
}

std::vector<BlendedSurface::ControlPoint> BlendedSurface::control_net() const {
  const std::vector<double>& xs = x_proj_.back().high().nodes();
  const std::vector<double>& ys = y_proj_.back().high().nodes();
  std::vector<ControlPoint> net;
  net.reserve(grid_.points().size());
  for (std::size_t p = 0; p < grid_.points().size(); ++p) {
    const auto& [i, j] = grid_.points()[p];
    net.push_back({i, j, xs[i], ys[j], coeffs_[p]});
  }
  return net;
}

void BlendedSurface::write_control_net_csv(std::ostream& out) const {
  out << "i,j,x,y,b\n";
  for (const ControlPoint& p : control_net())
    out << p.i << "," << p.j << "," << format_sig17(p.x) << "," << format_sig17(p.y) << ","
        << format_sig17(p.b) << "\n";
}

BlendedSurface fit(const BlendSpec& spec, const Rect& rect, const SampleFn& f) {
  check_rect(rect);
  BlendedSurface s(spec, rect);
  const BernsteinContext& cx = s.x_proj_.back().high();
  const BernsteinContext& cy = s.y_proj_.back().high();
  const std::size_t nx = cx.nodes().size();
  const std::size_t ny = cy.nodes().size();
  std::vector<std::vector<double>> table(nx, std::vector<double>(ny));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double v = f(cx.nodes()[i], cy.nodes()[j]);
      if (!std::isfinite(v))
        throw NonFiniteSample("sample at (" + format_sig17(cx.nodes()[i]) + "," +
                              format_sig17(cy.nodes()[j]) + ") is not finite");
      table[i][j] = v;
    }
  // dual functionals along x for each node column, then along y for each row
  std::vector<double> col(nx);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) col[i] = table[i][j];
    const std::vector<double> lam = cx.dual_apply(col);
    for (std::size_t i = 0; i < nx; ++i) table[i][j] = lam[i];
  }
  for (std::size_t i = 0; i < nx; ++i) table[i] = cy.dual_apply(table[i]);
  s.coeffs_.resize(s.grid_.points().size());
  for (std::size_t p = 0; p < s.grid_.points().size(); ++p) {
    const auto& [i, j] = s.grid_.points()[p];
    s.coeffs_[p] = table[i][j];
  }
  return s;
}

BlendedSurface from_coeffs(const BlendSpec& spec, const Rect& rect,
                           const std::vector<std::tuple<int, int, double>>& entries) {
  check_rect(rect);
  BlendedSurface s(spec, rect);
  const std::size_t count = s.grid_.points().size();
  s.coeffs_.assign(count, 0.0);
  std::vector<char> seen(count, 0);
  for (const auto& [i, j, b] : entries) {
    const int pos = s.grid_.index_of(i, j);
    if (pos < 0)
      throw NotInGrid("(" + std::to_string(i) + "," + std::to_string(j) + ") is not a grid point");
    if (seen[pos])
      throw InvalidSpec("duplicate coefficient for (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (!std::isfinite(b)) throw NonFiniteSample("coefficient at (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") is not finite");
    seen[pos] = 1;
    s.coeffs_[pos] = b;
  }
  for (std::size_t p = 0; p < count; ++p)
    if (!seen[p])
      throw InvalidSpec("missing coefficient for (" + std::to_string(s.grid_.points()[p].first) + "," +
                        std::to_string(s.grid_.points()[p].second) + ")");
  return s;
}

}  // namespace blendkit
