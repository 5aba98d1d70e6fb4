#include "blendkit/piecewise.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>
#include <utility>

#include "blendkit/format.hpp"

namespace blendkit {

namespace {

constexpr double kExactThreshold = 1e-13;

unsigned thread_cap() {
  if (const char* s = std::getenv("BLENDKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// runs fn(0..count-1) on up to thread_cap() workers; rethrows the first error
template <typename Fn>
void parallel_indices(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

Rect cell_rect(const Rect& rect, int kx, int ky, int p, int q) {
  const double hx = (rect.b - rect.a) / kx;
  const double hy = (rect.d - rect.c) / ky;
  return {rect.a + p * hx, (p + 1 == kx) ? rect.b : rect.a + (p + 1) * hx,
          rect.c + q * hy, (q + 1 == ky) ? rect.d : rect.c + (q + 1) * hy};
}

}  // namespace

PiecewiseSurface::PiecewiseSurface(BlendSpec spec, Rect rect, int kx, int ky,
                                   std::vector<BlendedSurface> cells)
    : spec_(std::move(spec)), rect_(rect), kx_(kx), ky_(ky), cells_(std::move(cells)) {}

double PiecewiseSurface::evaluate(double u, double v) const {
  const double hx = (rect_.b - rect_.a) / kx_;
  const double hy = (rect_.d - rect_.c) / ky_;
  // interior boundaries go to the left/lower cell
  int p = static_cast<int>(std::ceil((u - rect_.a) / hx)) - 1;
  int q = static_cast<int>(std::ceil((v - rect_.c) / hy)) - 1;
  p = std::max(0, std::min(kx_ - 1, p));
  q = std::max(0, std::min(ky_ - 1, q));
  return cell(p, q).evaluate(u, v);
}

PiecewiseSurface fit_piecewise(const BlendSpec& spec, const Rect& rect, const SampleFn& f, int kx,
                               int ky) {
  if (kx < 1 || ky < 1) throw InvalidSpec("cell counts must be at least 1");
  const std::size_t count = static_cast<std::size_t>(kx) * ky;
  std::vector<std::optional<BlendedSurface>> slots(count);
  parallel_indices(count, [&](std::size_t idx) {
    const int p = static_cast<int>(idx) / ky;
    const int q = static_cast<int>(idx) % ky;
    const std::string where = " in cell (" + std::to_string(p) + "," + std::to_string(q) + ")";
    try {
      slots[idx].emplace(fit(spec, cell_rect(rect, kx, ky, p, q), f));
    } catch (const NonFiniteSample& e) {
      throw NonFiniteSample(e.what() + where);
    } catch (const SingularMatrix& e) {
      throw SingularMatrix(e.what() + where);
    } catch (const Error& e) {
      throw Error(e.what() + where);
    }
  });
  std::vector<BlendedSurface> cells;
  cells.reserve(count);
  for (std::optional<BlendedSurface>& s : slots) cells.push_back(std::move(*s));
  return PiecewiseSurface(spec, rect, kx, ky, std::move(cells));
}

double sup_error(const PiecewiseSurface& s, const SampleFn& f, int samples_per_cell) {
  if (samples_per_cell < 2) throw InvalidSpec("samples_per_cell must be at least 2");
  const int kx = s.kx();
  const int ky = s.ky();
  const std::size_t count = static_cast<std::size_t>(kx) * ky;
  std::vector<double> cell_max(count, 0.0);
  parallel_indices(count, [&](std::size_t idx) {
    const int p = static_cast<int>(idx) / ky;
    const int q = static_cast<int>(idx) % ky;
    const Rect c = cell_rect(s.rect(), kx, ky, p, q);
    const BlendedSurface& surf = s.cell(p, q);
    double worst = 0.0;
    for (int i = 0; i < samples_per_cell; ++i) {
      const double x = c.a + (static_cast<double>(i) * (c.b - c.a)) / (samples_per_cell - 1);
      for (int j = 0; j < samples_per_cell; ++j) {
        const double y = c.c + (static_cast<double>(j) * (c.d - c.c)) / (samples_per_cell - 1);
        const double d = std::fabs(surf.evaluate(x, y) - f(x, y));
        if (d > worst) worst = d;
      }
    }
    cell_max[idx] = worst;
  });
  double worst = 0.0;
  for (double v : cell_max) worst = std::max(worst, v);
  return worst;
}

double fit_order(const std::vector<ConvergenceRow>& rows) {
  std::vector<const ConvergenceRow*> usable;
  for (const ConvergenceRow& r : rows)
    if (r.error >= kExactThreshold && r.h > 0.0) usable.push_back(&r);
  if (usable.size() < 2) throw InsufficientData("need at least two rows with error above 1e-13");
  const ConvergenceRow& first = *usable.front();
  const ConvergenceRow& last = *usable.back();
  if (first.h == last.h) throw InsufficientData("need two distinct mesh sizes");
  return std::log(first.error / last.error) / std::log(first.h / last.h);
}

ConvergenceTable convergence_study(const BlendSpec& spec, const Rect& rect, const SampleFn& f,
                                   const std::vector<int>& ks, int samples_per_cell, int tail) {
  ConvergenceTable table;
  table.fitted_order = std::numeric_limits<double>::quiet_NaN();
  const double side = std::max(rect.b - rect.a, rect.d - rect.c);
  for (int k : ks) {
    if (k < 1) throw InvalidSpec("cell counts must be at least 1");
    const PiecewiseSurface s = fit_piecewise(spec, rect, f, k, k);
    table.rows.push_back({k, side / k, sup_error(s, f, samples_per_cell)});
  }
  std::vector<ConvergenceRow> fit_rows;
  if (tail > 0 && static_cast<std::size_t>(tail) < table.rows.size())
    fit_rows.assign(table.rows.end() - tail, table.rows.end());
  else
    fit_rows = table.rows;
  if (fit_rows.size() < 2) {
    table.status = OrderStatus::insufficient_data;
    return table;
  }
  std::size_t usable = 0;
  for (const ConvergenceRow& r : fit_rows)
    if (r.error >= kExactThreshold) ++usable;
  if (usable < 2) {
    table.status = OrderStatus::exact;
    return table;
  }
  table.fitted_order = fit_order(fit_rows);
  table.status = OrderStatus::fitted;
  return table;
}

void write_convergence_csv(const ConvergenceTable& table, std::ostream& out) {
  out << "k,h,error\n";
  for (const ConvergenceRow& r : table.rows)
    out << r.k << "," << format_sig17(r.h) << "," << format_sig17(r.error) << "\n";
}

}  // namespace blendkit
