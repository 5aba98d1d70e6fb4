#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "blendkit/piecewise.hpp"
#include "oracles.hpp"

using namespace blendkit;

namespace {

const Rect kUnit{0.0, 1.0, 0.0, 1.0};

double sin2xy(double x, double y) { return std::sin(2 * x * y); }
double expxy(double x, double y) { return std::exp(x + y); }

}  // namespace

TEST_CASE("a 1x1 piecewise surface is a single fit") {
  auto f = [](double x, double y) { return std::sin(x) * y; };
  const PiecewiseSurface s = fit_piecewise(BlendSpec({2, 4}, {2, 4}), kUnit, f, 1, 1);
  const BlendedSurface whole = fit(BlendSpec({2, 4}, {2, 4}), kUnit, f);
  for (double u : {0.0, 0.31, 0.75, 1.0})
    for (double v : {0.12, 0.5, 1.0})
      CHECK(s.evaluate(u, v) == doctest::Approx(whole.evaluate(u, v)).epsilon(1e-15));
}

TEST_CASE("members are reproduced on every cell") {
  std::mt19937 rng(57);
  const auto monos = oracles::monomial_set({1, 2}, {1, 2});
  const oracles::MonomialPoly p = oracles::random_member(monos, rng);
  const PiecewiseSurface s = fit_piecewise(
      BlendSpec({1, 2}, {1, 2}), Rect{0.0, 2.0, 0.0, 2.0},
      [&](double x, double y) { return p.eval(x, y); }, 3, 2);
  CHECK(sup_error(s, [&](double x, double y) { return p.eval(x, y); }, 11) <= 1e-10);
}

TEST_CASE("interior boundaries belong to the left and lower cell") {
  // fitted cells agree at seams (the edge value collapses to the shared edge
  // interpolant), so pin the tie-break with hand-built constant cells
  const BlendSpec spec({1}, {1});
  auto constant_cell = [&](const Rect& r, double value) {
    std::vector<std::tuple<int, int, double>> entries;
    for (int i = 0; i <= 1; ++i)
      for (int j = 0; j <= 1; ++j) entries.push_back({i, j, value});
    return from_coeffs(spec, r, entries);
  };
  std::vector<BlendedSurface> cells;
  cells.push_back(constant_cell(Rect{0.0, 0.5, 0.0, 1.0}, 0.0));
  cells.push_back(constant_cell(Rect{0.5, 1.0, 0.0, 1.0}, 1.0));
  const PiecewiseSurface s(spec, kUnit, 2, 1, std::move(cells));
  CHECK(s.evaluate(0.5, 0.3) == 0.0);   // seam goes left
  CHECK(s.evaluate(0.51, 0.3) == 1.0);
  CHECK(s.evaluate(0.0, 0.3) == 0.0);   // endpoints clamp inward
  CHECK(s.evaluate(1.0, 0.3) == 1.0);

  std::vector<BlendedSurface> rows;
  rows.push_back(constant_cell(Rect{0.0, 1.0, 0.0, 0.5}, 0.0));
  rows.push_back(constant_cell(Rect{0.0, 1.0, 0.5, 1.0}, 1.0));
  const PiecewiseSurface t(spec, kUnit, 1, 2, std::move(rows));
  CHECK(t.evaluate(0.3, 0.5) == 0.0);   // seam goes down
  CHECK(t.evaluate(0.3, 1.0) == 1.0);
}

TEST_CASE("fitted cells join continuously at seams") {
  // edge values reduce to the interpolant of the shared edge samples, so
  // horizontally and vertically adjacent fits agree there to the last bit
  const PiecewiseSurface s = fit_piecewise(BlendSpec({1, 2}, {1, 2}), kUnit, sin2xy, 2, 2);
  for (double w : {0.1, 0.25, 0.42})
    CHECK(s.cell(0, 0).evaluate(0.5, w) ==
          doctest::Approx(s.cell(1, 0).evaluate(0.5, w)).epsilon(1e-13));
}

TEST_CASE("sup_error of a surface against itself is zero") {
  const PiecewiseSurface s = fit_piecewise(BlendSpec({2, 4}, {2, 4}), kUnit, sin2xy, 2, 2);
  const double self = sup_error(s, [&](double x, double y) { return s.evaluate(x, y); }, 9);
  CHECK(self <= 1e-12);
}

TEST_CASE("sup_error stabilizes once the sample grid is dense") {
  const PiecewiseSurface s = fit_piecewise(BlendSpec({2, 4}, {2, 4}), kUnit, sin2xy, 4, 4);
  const double coarse = sup_error(s, sin2xy, 25);
  const double fine = sup_error(s, sin2xy, 79);
  CHECK(coarse <= fine * 1.05);
  CHECK(fine <= coarse * 1.05);
  // denser grids can only see more
  CHECK(sup_error(s, sin2xy, 13) <= sup_error(s, sin2xy, 25) * (1 + 1e-12));
}

TEST_CASE("fit_order recovers exact power laws") {
  CHECK(fit_order({{1, 1.0, 1.0}, {2, 0.5, 0.03125}}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit_order({{1, 1.0, 4.0}, {2, 0.5, 1.0}, {4, 0.25, 0.25}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // near-zero rows are dropped before the slope is taken
  CHECK(fit_order({{1, 1.0, 1.0}, {2, 0.5, 0.25}, {4, 0.25, 1e-15}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_order({{1, 1.0, 1.0}}), InsufficientData);
  CHECK_THROWS_AS(fit_order({{1, 1.0, 1e-14}, {2, 0.5, 1e-15}}), InsufficientData);
  CHECK_THROWS_AS(fit_order({{1, 1.0, 1.0}, {1, 1.0, 0.5}}), InsufficientData);
}

TEST_CASE("fit_order matches the published error tables") {
  const std::vector<double> e24 = {2.3370,     0.5431,     0.0453,     0.0105,
                                   0.0027,     0.0010,     4.9070e-04, 2.4617e-04,
                                   1.3123e-04, 7.3995e-05, 4.4315e-05, 2.7561e-05,
                                   1.9278e-05, 1.3300e-05, 9.4613e-06, 6.7413e-06};
  const std::vector<double> e4 = {0.9977,     0.1564,     0.0248,     0.0030,
                                  0.0022,     8.9636e-04, 4.1602e-04, 1.8871e-04,
                                  1.1996e-04, 7.1195e-05, 4.4315e-05, 2.7561e-05,
                                  1.9278e-05, 1.3300e-05, 9.4613e-06, 6.7413e-06};
  std::vector<ConvergenceRow> rows24, rows4;
  for (int k = 1; k <= 16; ++k) {
    rows24.push_back({k, 1.0 / k, e24[k - 1]});
    rows4.push_back({k, 1.0 / k, e4[k - 1]});
  }
  CHECK(fit_order(rows24) == doctest::Approx(4.6008).epsilon(0.002));
  CHECK(fit_order(rows4) == doctest::Approx(4.2938).epsilon(0.002));
}

TEST_CASE("convergence_study classifies degenerate tables") {
  const ConvergenceTable single =
      convergence_study(BlendSpec({1, 2}, {1, 2}), kUnit, sin2xy, {2}, 9);
  CHECK(single.status == OrderStatus::insufficient_data);
  CHECK(std::isnan(single.fitted_order));
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].h == doctest::Approx(0.5).epsilon(1e-15));

  // a member is fit to rounding on every cell count
  const auto member = [](double x, double y) { return x * y + 0.25 * x; };
  const ConvergenceTable exact =
      convergence_study(BlendSpec({1, 2}, {1, 2}), kUnit, member, {1, 2}, 9);
  CHECK(exact.status == OrderStatus::exact);
  CHECK(std::isnan(exact.fitted_order));
}

TEST_CASE("convergence_study fits the tail when asked") {
  const ConvergenceTable full =
      convergence_study(BlendSpec({1, 2}, {1, 2}), kUnit, sin2xy, {2, 4, 8}, 9);
  REQUIRE(full.status == OrderStatus::fitted);
  const ConvergenceTable tail =
      convergence_study(BlendSpec({1, 2}, {1, 2}), kUnit, sin2xy, {2, 4, 8}, 9, 2);
  REQUIRE(tail.status == OrderStatus::fitted);
  // the tail slope uses only the last two rows
  const double want =
      std::log(full.rows[1].error / full.rows[2].error) / std::log(full.rows[1].h / full.rows[2].h);
  CHECK(tail.fitted_order == doctest::Approx(want).epsilon(1e-9));
  CHECK(std::abs(tail.fitted_order - full.fitted_order) > 1e-6);
}

TEST_CASE("observed orders track the predicted order") {
  const Rect rect{0.0, 2.0, 0.0, 2.0};
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> specs = {
      {{1, 2}, {1, 2}}, {{2, 4}, {2, 4}}, {{4}, {4}}};
  for (const auto& [m, n] : specs) {
    const double p = predicted_order(m, n);
    for (auto f : {sin2xy, expxy}) {
      const ConvergenceTable t = convergence_study(BlendSpec(m, n), rect, f, {4, 8, 16}, 25);
      REQUIRE(t.status == OrderStatus::fitted);
      CHECK(t.fitted_order >= p - 0.7);
      CHECK(t.fitted_order <= p + 0.7);
    }
  }
}

TEST_CASE("full and reduced specs of equal predicted order converge alike") {
  // serendipity pair: [2,4] spends far fewer coefficients than [4] at the
  // same predicted order, and the observed orders stay close
  const Rect rect{0.0, 2.0, 0.0, 2.0};
  const ConvergenceTable reduced =
      convergence_study(BlendSpec({2, 4}, {2, 4}), rect, expxy, {4, 8, 16}, 25);
  const ConvergenceTable full =
      convergence_study(BlendSpec({4}, {4}), rect, expxy, {4, 8, 16}, 25);
  REQUIRE(reduced.status == OrderStatus::fitted);
  REQUIRE(full.status == OrderStatus::fitted);
  CHECK(std::abs(reduced.fitted_order - full.fitted_order) <= 0.5);
}

TEST_CASE("results do not depend on the worker count") {
  const char* saved = std::getenv("BLENDKIT_THREADS");
  const std::string saved_value = saved ? saved : "";
  setenv("BLENDKIT_THREADS", "1", 1);
  const PiecewiseSurface serial = fit_piecewise(BlendSpec({2, 4}, {2, 4}), kUnit, sin2xy, 3, 3);
  if (saved)
    setenv("BLENDKIT_THREADS", saved_value.c_str(), 1);
  else
    unsetenv("BLENDKIT_THREADS");
  const PiecewiseSurface parallel = fit_piecewise(BlendSpec({2, 4}, {2, 4}), kUnit, sin2xy, 3, 3);
  for (int t = 0; t <= 20; ++t) {
    const double u = t / 20.0;
    for (int w = 0; w <= 20; ++w) {
      const double v = w / 20.0;
      CHECK(serial.evaluate(u, v) == parallel.evaluate(u, v));
    }
  }
}

TEST_CASE("cell failures carry the cell coordinates") {
  auto poisoned = [](double x, double y) {
    return (x > 0.5 && y > 0.5) ? std::nan("") : x + y;
  };
  try {
    fit_piecewise(BlendSpec({1, 2}, {1, 2}), kUnit, poisoned, 2, 2);
    FAIL("expected NonFiniteSample");
  } catch (const NonFiniteSample& e) {
    CHECK(std::string(e.what()).find("in cell (1,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(fit_piecewise(BlendSpec({1}, {1}), kUnit, sin2xy, 0, 1), InvalidSpec);
}
