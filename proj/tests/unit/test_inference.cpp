#include <doctest.h>

#include <stdexcept>

#include "longcycle/dgp.hpp"
#include "longcycle/inference.hpp"
#include "longcycle/rng.hpp"

#include <cmath>
#include <numbers>

using namespace longcycle;

namespace {

ConfidenceSet set_from(std::vector<std::pair<double, double>> accepted) {
  ConfidenceSet cs;
  for (auto [c, d] : accepted) {
    GridPoint p;
    p.c = c;
    p.d = d;
    p.accepted = true;
    cs.points.push_back(p);
  }
  return cs;
}

}  // namespace

TEST_CASE("grid construction and parsing") {
  const auto g = GridSpec::defaults(100);
  CHECK(g.d_max == doctest::Approx(100 * std::numbers::pi));
  CHECK(g.c_min == -g.d_max);
  CHECK(GridSpec::defaults(1000).d_max == 678.0);

  const auto grid = make_grid(GridSpec::defaults(1000));
  CHECK(grid.c.size() == 60);
  CHECK(grid.d.size() == 60);
  CHECK(grid.c.front() == -678.0);
  CHECK(grid.c.back() == 0.0);
  CHECK(grid.d.front() == doctest::Approx(2 * std::numbers::pi));
  CHECK(grid.d.back() == 678.0);
  for (std::size_t k = 1; k < grid.c.size(); ++k) CHECK(grid.c[k] > grid.c[k - 1]);

  const auto spec = parse_grid_spec("c:-100:11:lin,d:6.3:200:20:log");
  CHECK(spec.c_min == -100.0);
  CHECK(spec.c_points == 11);
  CHECK(spec.c_spacing == Spacing::linear);
  CHECK(spec.d_points == 20);
  const auto lin = make_grid(spec);
  CHECK(lin.c[1] == doctest::Approx(-90.0));
  CHECK_THROWS_AS(parse_grid_spec("c:-100:11"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("c:-100:11:lin,d:6.3:200:20:cubic"), std::invalid_argument);

  GridSpec small;
  small.d_min = 1.0;
  CHECK_THROWS_AS(small.validate(100), std::invalid_argument);
  small.allow_small_d = true;
  CHECK_NOTHROW(small.validate(1000));
  GridSpec wide;
  wide.d_max = 400.0;
  CHECK_THROWS_AS(wide.validate(100), std::invalid_argument);
}

TEST_CASE("projection intervals") {
  CHECK(project_tau_theta(ConfidenceSet{}).empty);
  CHECK(project_tau_omega(ConfidenceSet{}).empty);

  const auto t = project_tau_theta(set_from({{-1.0, 10.0}, {-2.0, 20.0}, {0.0, 40.0}}));
  CHECK_FALSE(t.empty);
  CHECK(t.lower == doctest::Approx(2 * std::numbers::pi / 40));
  CHECK(t.upper == doctest::Approx(2 * std::numbers::pi / 10));
  const auto periods = t.in_periods(290);
  CHECK(periods.lower == doctest::Approx(290 * 2 * std::numbers::pi / 40));

  const auto w = project_tau_omega(set_from({{0.0, 10.0}}));
  CHECK(w.lower == doctest::Approx(2 * std::numbers::pi / 10));
  CHECK(w.upper == w.lower);

  const auto u = project_tau_omega(set_from({{-15.0, 15.0}, {0.0, 30.0}}));
  CHECK(u.unbounded);
  CHECK(u.lower == doctest::Approx(2 * std::numbers::pi / 30));

  CHECK(project_tau_omega(set_from({{-20.0, 5.0}})).empty);
  CHECK_FALSE(project_tau_theta(set_from({{-20.0, 5.0}})).empty);
}

TEST_CASE("projection monotonicity and tau ordering") {
  const std::vector<std::pair<double, double>> base = {{-3.0, 12.0}, {-1.0, 20.0}};
  auto bigger = base;
  bigger.push_back({-8.0, 9.0});
  const auto a = project_tau_theta(set_from(base)), b = project_tau_theta(set_from(bigger));
  CHECK(b.lower <= a.lower);
  CHECK(b.upper >= a.upper);
  const auto ao = project_tau_omega(set_from(base)), bo = project_tau_omega(set_from(bigger));
  CHECK(bo.lower <= ao.lower);
  CHECK(bo.upper >= ao.upper);
  CHECK(ao.lower >= a.lower);
}

TEST_CASE("confidence set from a constant critical value") {
  const int n = 800;
  const Localization truth{-5.0, 20.0};
  const auto y = simulate_long_cycle(truth, n, {DetKind::mean(), 2.0}, InnovationSpec::iid(1.0), 4);
  Grid grid{{-40.0, -20.0, -10.0, -5.0, -2.0, 0.0}, {8.0, 12.0, 20.0, 30.0, 60.0}};
  const auto crit = [](const Localization&) { return 7.5; };
  const auto cs = confidence_set(y.values, DetKind::mean(), 0, grid, 0.05, crit);
  CHECK(cs.points.size() == 30);
  for (const auto& p : cs.points) {
    if (p.accepted) CHECK(p.wald <= p.critical);
    const auto phi = phi_from_cd({p.c, p.d}, n);
    CHECK(p.phi1_0 == phi.phi1);
  }

  auto scaled = y.values;
  for (auto& v : scaled) v *= 100.0;
  const auto cs2 = confidence_set(scaled, DetKind::mean(), 0, grid, 0.05, crit);
  for (std::size_t k = 0; k < cs.points.size(); ++k) CHECK(cs.points[k].accepted == cs2.points[k].accepted);

  const auto par = confidence_set(y.values, DetKind::mean(), 1, grid, 0.05, crit, 4);
  const auto ser = confidence_set(y.values, DetKind::mean(), 1, grid, 0.05, crit, 1);
  for (std::size_t k = 0; k < par.points.size(); ++k) CHECK(par.points[k].wald == ser.points[k].wald);

  // Nesting: a larger critical value accepts a superset.
  const auto loose = confidence_set(y.values, DetKind::mean(), 0, grid, 0.05, [](const Localization&) { return 9.0; });
  for (std::size_t k = 0; k < cs.points.size(); ++k) {
    if (cs.points[k].accepted) CHECK(loose.points[k].accepted);
  }
}

TEST_CASE("estimation failures are recorded, not thrown") {
  std::vector<double> flat(30, 1.0);
  Grid grid{{-1.0, 0.0}, {8.0}};
  const auto cs = confidence_set(flat, DetKind::mean(), 0, grid, 0.05, [](const Localization&) { return 6.0; });
  CHECK(cs.empty());
  for (const auto& p : cs.points) CHECK_FALSE(p.diagnostic.empty());
}

TEST_CASE("point estimates") {
  const Localization loc{-4.0, 15.0};
  const int n = 300;
  const auto y = irf_weights(loc, n, n - 1);
  const auto pe = point_estimate(y, DetKind::none());
  REQUIRE(pe);
  CHECK(pe->loc.c == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(pe->loc.d == doctest::Approx(15.0).epsilon(1e-6));

  int absent = 0;
  for (int r = 0; r < 100; ++r) {
    const auto z = simulate_fixed_ar2({1.2, -0.35}, 2000, {}, InnovationSpec::iid(1.0), stream_seed({61, std::uint64_t(r)}));
    if (!point_estimate(z.values, DetKind::mean())) ++absent;
  }
  CHECK(absent > 50);

  std::vector<double> ds;
  for (int r = 0; r < 300; ++r) {
    const auto z = simulate_long_cycle({-2.0, 12.0}, 1500, {}, InnovationSpec::iid(1.0), stream_seed({62, std::uint64_t(r)}));
    const auto e = point_estimate(z.values, DetKind::mean());
    ds.push_back(e ? e->loc.d : 0.0);
  }
  std::nth_element(ds.begin(), ds.begin() + 150, ds.end());
  CHECK(std::abs(ds[150] - 12.0) <= 0.2 * 12.0);
}

TEST_CASE("nearest grid index") {
  CHECK(nearest_index({-10.0, -5.0, 0.0}, -6.0) == 1);
  CHECK(nearest_index({1.0, 2.0}, 100.0) == 1);
}
