#include <doctest.h>

#include <stdexcept>

#include "longcycle/dgp.hpp"
#include "longcycle/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace longcycle;

namespace {

double lag1_autocorrelation(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - m) * (x[t] - m);
    if (t) num += (x[t] - m) * (x[t - 1] - m);
  }
  return num / den;
}

}  // namespace

TEST_CASE("zero noise gives the deterministic part") {
  DetSpec det{DetKind::linear_trend(), 1.0, 2.0};
  const auto s = simulate_long_cycle({-5.0, 20.0}, 50, det, InnovationSpec::iid(0.0), 1);
  const auto d = build_deterministic(det, 50);
  CHECK(s.values == d);
}

TEST_CASE("reproducible and shared recursion") {
  const auto innov = InnovationSpec::iid(1.0);
  const Localization loc{-3.0, 15.0};
  const auto a = simulate_long_cycle(loc, 300, {}, innov, 99);
  const auto b = simulate_long_cycle(loc, 300, {}, innov, 99);
  CHECK(a.values == b.values);
  const auto c = simulate_fixed_ar2(phi_from_cd(loc, 300), 300, {}, innov, 99, 0);
  CHECK(a.values == c.values);
  const auto other = simulate_long_cycle(loc, 300, {}, innov, 100);
  CHECK(a.values != other.values);
}

TEST_CASE("fixed AR(2) validation and Yule-Walker oracle") {
  CHECK_THROWS_AS(simulate_fixed_ar2({2.1, -1.0}, 100, {}, InnovationSpec::iid(1.0), 1),
                  std::invalid_argument);
  const auto wn = simulate_fixed_ar2({0.0, 0.0}, 100, {}, InnovationSpec::iid(1.0), 5);
  const auto u = simulate_innovations(InnovationSpec::iid(1.0), 600, 5);
  CHECK(std::equal(wn.values.begin(), wn.values.end(), u.begin() + 500));

  const auto y = simulate_fixed_ar2({1.5, -0.75}, 5000, {}, InnovationSpec::iid(1.0), 11);
  CHECK(std::abs(lag1_autocorrelation(y.values) - 6.0 / 7.0) < 0.02);
}

TEST_CASE("AR innovations") {
  CHECK_THROWS_AS(InnovationSpec::autoregressive({0.97}, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(simulate_innovations(InnovationSpec::autoregressive({1.2}, 1.0), 10, 1),
                  std::invalid_argument);
  CHECK(ar_root_modulus({0.5, 0.3}) == doctest::Approx((0.5 + std::sqrt(0.25 + 1.2)) / 2));

  const auto u = simulate_innovations(InnovationSpec::autoregressive({0.5}, 1.0), 10000, 3);
  CHECK(std::abs(lag1_autocorrelation(u) - 0.5) < 0.05);
}

TEST_CASE("long-run to instantaneous variance ratio") {
  // For AR(1) u with rho: sigma^2 / Var(u) = (1 + rho) / (1 - rho).
  const double rho = 0.5;
  const auto spec = InnovationSpec::autoregressive({rho}, 1.0);
  const double var_u = 1.0 / (1.0 - rho * rho);
  const double expected = spec.long_run_variance() / var_u;
  CHECK(expected == doctest::Approx((1 + rho) / (1 - rho)));
  // Batch means over blocks of 1000 estimate the long-run variance.
  const int n = 100000, block = 1000;
  const auto u = simulate_innovations(spec, n, 21);
  std::vector<double> means;
  double ss = 0.0;
  for (int b = 0; b < n / block; ++b) {
    double s = 0.0;
    for (int t = b * block; t < (b + 1) * block; ++t) s += u[t];
    means.push_back(s / std::sqrt(block));
  }
  for (double v : u) ss += v * v;
  double lrv = 0.0;
  for (double m : means) lrv += m * m;
  lrv /= means.size();
  const double ratio = lrv / (ss / n);
  // Batch-means variance of lrv is about 2 lrv^2 / #blocks.
  const double se = expected * std::sqrt(2.0 / means.size());
  CHECK(std::abs(ratio - expected) < 3 * se);
}

TEST_CASE("scaled long-cycle path is of order one") {
  const Localization loc{-5.0, 20.0};
  const int n = 1000;
  int inside = 0;
  for (int s = 0; s < 200; ++s) {
    const auto y = simulate_long_cycle(loc, n, {}, InnovationSpec::iid(1.0), stream_seed({77, std::uint64_t(s)}));
    double mx = 0.0;
    for (double v : y.values) mx = std::max(mx, std::abs(v));
    mx /= std::pow(n, 1.5);
    if (mx > 0.01 && mx < 10.0) ++inside;
  }
  CHECK(inside == 200);
}

TEST_CASE("zero crossings: drifting coefficients versus fixed coefficients") {
  const Localization loc{-5.0, 20.0};
  auto mean_crossings = [&](int n, bool fixed) {
    double total = 0.0;
    const int reps = 200;
    for (int s = 0; s < reps; ++s) {
      const auto seed = stream_seed({81, std::uint64_t(n), fixed, std::uint64_t(s)});
      const auto y = fixed ? simulate_fixed_ar2(phi_from_cd(loc, 100), n, {}, InnovationSpec::iid(1.0), seed)
                           : simulate_long_cycle(loc, n, {}, InnovationSpec::iid(1.0), seed);
      for (int t = 1; t < n; ++t) total += (y.values[t - 1] < 0.0) != (y.values[t] < 0.0);
    }
    return total / reps;
  };
  const double drifting = mean_crossings(1000, false) / mean_crossings(100, false);
  const double fixed = mean_crossings(1000, true) / mean_crossings(100, true);
  CHECK(drifting >= 0.5);
  CHECK(drifting <= 2.0);
  CHECK(fixed > 6.0);
  CHECK(fixed < 14.0);
}
