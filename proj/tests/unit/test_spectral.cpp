#include <doctest.h>

#include <stdexcept>

#include "longcycle/dgp.hpp"
#include "longcycle/errors.hpp"
#include "longcycle/rng.hpp"
#include "longcycle/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

using namespace longcycle;

namespace {

constexpr double kPi = std::numbers::pi;

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double v = 0.0;
  for (double e : x) v += (e - m) * (e - m);
  return {m, std::sqrt(v / (n - 1) / n)};
}

}  // namespace

TEST_CASE("periodogram closed forms") {
  const int n = 64;
  const auto flat = periodogram(std::vector<double>(n, 2.5), {2 * kPi * 3 / n, 2 * kPi * 10 / n});
  for (double v : flat.values) CHECK(std::abs(v) < 1e-10);

  std::vector<double> y(n);
  for (int t = 1; t <= n; ++t) y[t - 1] = std::cos(2 * kPi * t * 5 / n);
  const auto p = periodogram(y, {2 * kPi * 5 / n});
  CHECK(p.values[0] == doctest::Approx(n / (8 * kPi)));

  const auto z = simulate_innovations(InnovationSpec::iid(1.0), n, 3);
  std::vector<double> all(n);
  for (int k = 0; k < n; ++k) all[k] = 2 * kPi * k / n;
  const auto pz = periodogram(z, all);
  double lhs = 0.0, ms = 0.0;
  for (double v : pz.values) lhs += v * 2 * kPi / n;
  for (double v : z) ms += v * v / n;
  CHECK(lhs == doctest::Approx(ms).epsilon(1e-10));

  auto shifted = z;
  for (auto& v : shifted) v += 7.0;
  const auto ps = periodogram(shifted, fourier_frequencies(n));
  const auto pu = periodogram(z, fourier_frequencies(n));
  for (std::size_t k = 0; k < ps.values.size(); ++k) CHECK(std::abs(ps.values[k] - pu.values[k]) < 1e-8);

  CHECK(fourier_frequencies(10).size() == 5);
  CHECK_THROWS_AS(periodogram({1.0, 2.0}, {0.1}), DataError);
}

TEST_CASE("theoretical spectrum") {
  const Localization loc{-4.0, 10.0};
  const auto f = theoretical_spectrum(loc, 1000, 1.0, {0.01, -0.01, 0.3});
  CHECK(f.values[0] == doctest::Approx(f.values[1]).epsilon(1e-12));
  for (double v : f.values) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  const auto on_root = theoretical_spectrum({0.0, 10.0}, 1000, 1.0, {0.0099});
  CHECK(on_root.values[0] > 1e6);

  // Far from unity: the integral over [-pi, pi] is the AR(2) variance.
  const Localization far{-5.0, 8.0};
  const int n = 10;
  const auto phi = phi_from_cd(far, n);
  const double gamma0 = (1 - phi.phi2) / ((1 + phi.phi2) * ((1 - phi.phi2) * (1 - phi.phi2) - phi.phi1 * phi.phi1));
  const int m = 20000;
  std::vector<double> grid(m);
  for (int k = 0; k < m; ++k) grid[k] = -kPi + 2 * kPi * (k + 0.5) / m;
  const auto g = theoretical_spectrum(far, n, 1.0, grid);
  double integral = 0.0;
  for (double v : g.values) integral += v * 2 * kPi / m;
  CHECK(integral == doctest::Approx(gamma0).epsilon(0.01));
}

TEST_CASE("periodogram kernel near its removable singularity") {
  CHECK(periodogram_kernel(0.0) == 0.5);
  for (double u : {5e-7, 9.99e-7, 1.001e-6, 2e-6, 1e-5}) {
    CHECK(std::abs(periodogram_kernel(u) - 0.5) < 1e-8);
    CHECK(std::abs(periodogram_kernel(u) - periodogram_kernel(-u)) == 0.0);
  }
  CHECK(periodogram_kernel(1.0) == doctest::Approx(1 - std::cos(1.0)));
}

TEST_CASE("expected periodogram limit") {
  const Localization loc{-4.0, 10.0};
  for (double h : {0.5, 3.0, 8.5, 20.0}) {
    const double a = expected_periodogram_limit_at(loc, 1.0, h);
    const double b = expected_periodogram_limit_at(loc, 1.0, -h);
    CHECK(a > 0.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
    CHECK(expected_periodogram_limit_at({4.0, 10.0}, 1.0, h) == a);
  }
  // Continuity through h = 0 and smoothness across the patched window.
  const double v0 = expected_periodogram_limit_at(loc, 1.0, 0.0);
  const double v1 = expected_periodogram_limit_at(loc, 1.0, 1e-6);
  CHECK(std::abs(v0 - v1) < 1e-8 * v0);
  CHECK(expected_periodogram_limit_at(loc, 2.0, 3.0) == doctest::Approx(2 * expected_periodogram_limit_at(loc, 1.0, 3.0)));
  CHECK_THROWS_AS(expected_periodogram_limit_at({0.0, 10.0}, 1.0, 3.0), std::invalid_argument);

  const double peak = expected_periodogram_limit_peak(loc);
  CHECK(2 * kPi / peak == doctest::Approx(0.73).epsilon(0.01 / 0.73));
}

TEST_CASE("limit periodogram draws") {
  const Localization loc{-4.0, 10.0};
  const auto zero = path_from_increments(loc, 0.01, std::vector<double>(100, 0.0));
  CHECK(limit_periodogram_from_path(zero, 5.0) == 0.0);
  const auto p = simulate_path(loc, 0.01, 9);
  CHECK(limit_periodogram_from_path(p, 5.0) == doctest::Approx(limit_periodogram_draw(loc, 5.0, 0.01, 9)).epsilon(1e-12));
  for (int s = 0; s < 50; ++s) CHECK(limit_periodogram_draw(loc, 5.0, 0.01, s) >= 0.0);
}

TEST_CASE("limit draws and finite-sample periodogram match the quadrature") {
  const Localization loc{-4.0, 10.0};
  const std::vector<double> hs = {4.0, 8.5855, 12.0};
  std::vector<std::vector<double>> limit(hs.size()), finite(hs.size());
  for (int r = 0; r < 10000; ++r) {
    const auto v = limit_periodogram_draws(loc, hs, 2e-4, stream_seed({71, std::uint64_t(r)}), 3.0);
    for (std::size_t k = 0; k < hs.size(); ++k) limit[k].push_back(v[k]);
  }
  const int n = 3000;
  for (int r = 0; r < 5000; ++r) {
    const auto y = simulate_long_cycle(loc, n, {DetKind::none()}, InnovationSpec::iid(1.0),
                                       stream_seed({72, std::uint64_t(r)}), 3 * n);
    std::vector<double> freqs;
    for (double h : hs) freqs.push_back(h / n);
    const auto p = periodogram(y.values, freqs);
    for (std::size_t k = 0; k < hs.size(); ++k) finite[k].push_back(p.values[k] / std::pow(double(n), 4));
  }
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const double q = expected_periodogram_limit_at(loc, 1.0, hs[k]);
    const auto a = mean_se(limit[k]), b = mean_se(finite[k]);
    CHECK(std::abs(a.mean - q) < 3 * a.se);
    CHECK(std::abs(b.mean - q) < 3 * b.se);
  }
}

TEST_CASE("local-to-unity t statistic") {
  const int n = 100;
  const double b = -5.0;
  std::vector<double> y(n);
  y[0] = 1.0;
  for (int t = 1; t < n; ++t) y[t] = std::exp(b / n) * y[t - 1];
  CHECK(std::abs(ltu_t_statistic(y, b)) < 1e-12);
  CHECK_THROWS_AS(ltu_t_statistic(std::vector<double>(20, 0.0), b), DataError);
}
