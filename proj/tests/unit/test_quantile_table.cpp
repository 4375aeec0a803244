#include <doctest.h>

#include <stdexcept>

#include "longcycle/errors.hpp"
#include "longcycle/quantile_table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace longcycle;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "longcycle_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

QuantileTable small_table() {
  QuantileTable t;
  t.det_kind = DetKind::mean();
  t.alpha = 0.05;
  t.c_grid = {-10.0, -1.0, 0.0};
  t.d_grid = {2 * M_PI, 10.0};
  t.q = {6.0, 7.0, 8.0, 9.0, 10.0, 11.0};
  t.replications = 1000;
  t.dt = 0.01;
  t.seed = 3;
  return t;
}

}  // namespace

TEST_CASE("chi-squared(2) quantile") {
  CHECK(chi2_2_quantile(0.05) == doctest::Approx(5.991464547));
  CHECK_THROWS_AS(chi2_2_quantile(1.0), std::invalid_argument);
}

TEST_CASE("empirical quantile is the ceil((1-alpha)R) order statistic") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(empirical_quantile(v, 0.05) == 95.0);
  CHECK(empirical_quantile(v, 0.10) == 90.0);
  CHECK(empirical_quantile(v, 0.999) == 1.0);
  std::vector<double> w(100000);
  std::iota(w.begin(), w.end(), 1.0);
  CHECK(empirical_quantile(w, 0.05) == 95000.0);
  CHECK(exceedance(v, 95.0) == doctest::Approx(0.05));
}

TEST_CASE("tables are deterministic and independent of thread count") {
  const std::vector<double> cg = {-5.0, 0.0}, dg = {8.0, 20.0};
  TableBuildOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = build_table(DetKind::mean(), 0.05, cg, dg, 1000, 0.01, 77, one);
  const auto b = build_table(DetKind::mean(), 0.05, cg, dg, 1000, 0.01, 77, four);
  CHECK(a == b);
  for (double q : a.q) CHECK(q > 0.0);
  const auto c = build_table(DetKind::mean(), 0.05, cg, dg, 1000, 0.01, 78, one);
  CHECK(a.q != c.q);
  // A seasonal request shares the constant-mean draws.
  const auto s = build_table(DetKind::seasonal(4), 0.05, cg, dg, 1000, 0.01, 77, one);
  CHECK(s.q == a.q);
}

TEST_CASE("quantiles monotone in alpha and consistent with the size surface") {
  const Localization loc{-1.0, 5.0};
  const auto draws = simulate_cell(DetKind::mean(), loc, 4000, 0.01, 5).sorted;
  CHECK(empirical_quantile(draws, 0.01) >= empirical_quantile(draws, 0.05));
  CHECK(empirical_quantile(draws, 0.05) >= empirical_quantile(draws, 0.10));
  for (const Localization cell : {Localization{-1.0, 5.0}, Localization{-50.0, 200.0}}) {
    const auto d = simulate_cell(DetKind::mean(), cell, 4000, 0.01, 5).sorted;
    const bool size_ok = exceedance(d, chi2_2_quantile(0.05)) <= 0.05;
    const bool q_ok = empirical_quantile(d, 0.05) <= chi2_2_quantile(0.05);
    CHECK(size_ok == q_ok);
  }
  const auto surface = size_surface(DetKind::mean(), {-1.0}, {5.0}, 0.05, 4000, 0.01, 5);
  CHECK(surface[0] == exceedance(draws, chi2_2_quantile(0.05)));
}

TEST_CASE("Monte Carlo error of the quantile shrinks like 1/sqrt(R)") {
  auto spread = [](long long R) {
    std::vector<double> q;
    for (std::uint64_t s = 0; s < 20; ++s) {
      q.push_back(empirical_quantile(simulate_cell(DetKind::mean(), {-5.0, 10.0}, R, 0.01, 1000 + s).sorted, 0.05));
    }
    const double m = std::accumulate(q.begin(), q.end(), 0.0) / q.size();
    double v = 0.0;
    for (double x : q) v += (x - m) * (x - m);
    return std::sqrt(v / (q.size() - 1));
  };
  // Quadrupling R halves the standard error.
  const double ratio = spread(4000) / spread(1000);
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.8);
}

TEST_CASE("bilinear lookup") {
  const auto t = small_table();
  CHECK(lookup(t, {-1.0, 10.0}) == 9.0);
  CHECK(lookup(t, {-10.0, 2 * M_PI}) == 6.0);
  auto flat = t;
  std::fill(flat.q.begin(), flat.q.end(), 4.5);
  CHECK(lookup(flat, {-5.5, 8.0}) == doctest::Approx(4.5));
  const double v = lookup(t, {-0.3, 7.0});
  CHECK(v >= 8.0);
  CHECK(v <= 11.0);
  CHECK_THROWS_AS(lookup(t, {-11.0, 8.0}), RangeError);
  CHECK_THROWS_AS(lookup(t, {-1.0, 11.0}), RangeError);
  try {
    lookup(t, {-1.0, 3.0});
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("d_min") != std::string::npos);
  }
}

TEST_CASE("table persistence") {
  const auto t = build_table(DetKind{true, true, {1}, 0}, 0.05, {-3.0, -1.0}, {7.0, 9.5}, 1000, 0.01, 9);
  const auto path = temp_file("roundtrip.csv");
  save_table(t, path);
  const auto back = load_table(path);
  CHECK(back == t);

  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.rfind("# schema=1\n# det_kind=trend+cycles:1\n# alpha=0.050000000000000003\n# R=1000\n", 0) == 0);

  const auto truncated = temp_file("truncated.csv");
  std::ofstream(truncated) << text.substr(0, text.size() - 10);
  CHECK_THROWS_AS(load_table(truncated), TableError);

  const auto version = temp_file("version.csv");
  std::string v2 = text;
  v2.replace(0, 10, "# schema=2");
  std::ofstream(version) << v2;
  try {
    load_table(version);
    CHECK(false);
  } catch (const TableError& e) {
    CHECK(std::string(e.what()).find("schema") != std::string::npos);
  }
  CHECK_THROWS_AS(load_table(temp_file("missing.csv")), TableError);
}

TEST_CASE("cache path and directory resolution") {
  const auto a = table_cache_path("/tmp/x", DetKind::mean(), 0.05, {-1.0, 0.0}, {7.0}, 1000, 0.01, 1);
  const auto b = table_cache_path("/tmp/x", DetKind::seasonal(4), 0.05, {-1.0, 0.0}, {7.0}, 1000, 0.01, 1);
  const auto c = table_cache_path("/tmp/x", DetKind::mean(), 0.05, {-2.0, 0.0}, {7.0}, 1000, 0.01, 1);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(resolve_cache_dir(std::string("/explicit")) == "/explicit");
}

TEST_CASE("stable step refines only fast cells") {
  CHECK(stable_step({-1.0, 5.0}, 0.01) == 0.01);
  CHECK(stable_step({-10.0, 15.0}, 0.01) == 0.01);
  CHECK(stable_step({-200.0, 300.0}, 0.01) == doctest::Approx(0.0005).epsilon(1e-12));
  for (const Localization loc : {Localization{0.0, 678.0}, Localization{-678.0, 678.0}}) {
    const double dt = stable_step(loc, 0.01);
    CHECK((std::abs(loc.c) + loc.d) * dt <= 0.25 + 1e-12);
    const auto draws = simulate_cell(DetKind::mean(), loc, 200, 0.01, 5, 1);
    CHECK(std::isfinite(draws.sorted.back()));
    CHECK(draws.resamples == 0);
  }
}
