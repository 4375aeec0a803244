#include "longcycle/spectral.hpp"

#include "longcycle/diffusion.hpp"
#include "longcycle/errors.hpp"
#include "longcycle/rng.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace longcycle {
namespace {

constexpr double kKernelSeriesWindow = 1e-6;
constexpr double kMaxSegment = std::numbers::pi;

// |1 - exp(a + i b)|^2 without cancellation for small a and b.
double one_minus_exp_sq(double a, double b) {
  const double em1 = std::expm1(a);
  const double s = std::sin(0.5 * b);
  const double re = -em1 * std::cos(b) + 2.0 * s * s;
  const double im = -std::exp(a) * std::sin(b);
  return re * re + im * im;
}

double limit_integrand(double c2, double d, double h, double x) {
  const double a = d + x, b = d - x;
  return periodogram_kernel(h - x) / ((c2 + a * a) * (c2 + b * b));
}

}  // namespace

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::periodogram: return "periodogram";
    case SpectrumKind::theoretical: return "theoretical";
    case SpectrumKind::expected_limit: return "expected_limit";
  }
  return "unknown";
}

SpectrumCurve periodogram(const std::vector<double>& y, const std::vector<double>& freqs) {
  const int n = static_cast<int>(y.size());
  if (n < 8) throw DataError("periodogram: need at least 8 observations");
  SpectrumCurve out;
  out.kind = SpectrumKind::periodogram;
  out.frequencies = freqs;
  out.values.reserve(freqs.size());
  for (double w : freqs) {
    double re = 0.0, im = 0.0;
    for (int t = 1; t <= n; ++t) {
      re += y[t - 1] * std::cos(w * t);
      im -= y[t - 1] * std::sin(w * t);
    }
    out.values.push_back((re * re + im * im) / (2.0 * std::numbers::pi * n));
  }
  return out;
}

std::vector<double> fourier_frequencies(int n) {
  std::vector<double> out;
  for (int k = 1; k <= n / 2; ++k) out.push_back(2.0 * std::numbers::pi * k / n);
  return out;
}

SpectrumCurve theoretical_spectrum(const Localization& loc, int n, double sigma2_u,
                                   const std::vector<double>& freqs) {
  if (!loc.valid()) throw std::invalid_argument("theoretical_spectrum: invalid localization");
  if (!(sigma2_u > 0.0)) throw std::invalid_argument("theoretical_spectrum: sigma2_u must be > 0");
  if (n < 1) throw std::invalid_argument("theoretical_spectrum: n must be >= 1");
  SpectrumCurve out;
  out.kind = SpectrumKind::theoretical;
  out.frequencies = freqs;
  out.values.reserve(freqs.size());
  const double a = loc.c / n, b = loc.d / n;
  for (double w : freqs) {
    const double den = one_minus_exp_sq(a, b + w) * one_minus_exp_sq(a, -b + w);
    out.values.push_back(sigma2_u / (2.0 * std::numbers::pi) / den);
  }
  return out;
}

double periodogram_kernel(double u) {
  if (std::abs(u) < kKernelSeriesWindow) return 0.5 - u * u / 24.0;
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s / (u * u);
}

double expected_periodogram_limit_at(const Localization& loc, double sigma2_u, double h,
                                     double rel_tol) {
  if (!(loc.c != 0.0) || !(loc.d > 0.0)) {
    throw std::invalid_argument("expected_periodogram_limit: need |c| > 0 and d > 0");
  }
  const double c2 = loc.c * loc.c, d = loc.d;
  auto f = [&](double x) { return limit_integrand(c2, d, h, x); };

  // For |x| >= X >= 2(|h| + d) each factor is at least x/2, so the integrand is
  // below 128/x^6 and both tails together below 256/(5 X^5).
  double X = 4.0 * (std::abs(h) + d + std::abs(loc.c)) + 20.0;
  for (int attempt = 0; attempt < 30; ++attempt, X *= 2.0) {
    std::vector<double> cuts = {-X, X, h, d, -d, 0.0};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double value = 0.0, error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = cuts[k], hi = cuts[k + 1];
      const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / kMaxSegment)));
      for (int p = 0; p < pieces; ++p) {
        const double a = lo + (hi - lo) * p / pieces, b = lo + (hi - lo) * (p + 1) / pieces;
        double err = 0.0;
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
        error += err;
      }
    }
    const double tail = 256.0 / (5.0 * std::pow(X, 5));
    if (tail > rel_tol * value) continue;
    const double achieved = (error + tail) / value;
    if (achieved > rel_tol) {
      std::ostringstream msg;
      msg << "expected_periodogram_limit: relative tolerance " << rel_tol << " not reached (achieved "
          << achieved << ")";
      throw std::runtime_error(msg.str());
    }
    // E|int_0^1 J e^{-ihr} dr|^2 = (1/pi) int K(h-x) / den dx for the stationary
    // J, and the periodogram carries a further 1/(2 pi).
    return sigma2_u / (2.0 * std::numbers::pi * std::numbers::pi) * value;
  }
  throw std::runtime_error("expected_periodogram_limit: truncation did not converge");
}

SpectrumCurve expected_periodogram_limit(const Localization& loc, double sigma2_u,
                                         const std::vector<double>& h_grid, double rel_tol) {
  SpectrumCurve out;
  out.kind = SpectrumKind::expected_limit;
  out.frequencies = h_grid;
  out.values.reserve(h_grid.size());
  for (double h : h_grid) out.values.push_back(expected_periodogram_limit_at(loc, sigma2_u, h, rel_tol));
  return out;
}

double expected_periodogram_limit_peak(const Localization& loc) {
  const double hi = 2.0 * (loc.d + std::abs(loc.c));
  const int points = 400;
  double best_h = hi / points, best_v = -1.0;
  for (int k = 1; k <= points; ++k) {
    const double h = hi * k / points;
    const double v = expected_periodogram_limit_at(loc, 1.0, h);
    if (v > best_v) {
      best_v = v;
      best_h = h;
    }
  }
  const double step = hi / points;
  const auto r = boost::math::tools::brent_find_minima(
      [&](double h) { return -expected_periodogram_limit_at(loc, 1.0, h); },
      std::max(1e-6, best_h - step), best_h + step, 40);
  return r.first;
}

std::vector<double> limit_periodogram_draws(const Localization& loc, const std::vector<double>& h,
                                            double dt, std::uint64_t seed, double warmup) {
  if (!(loc.d > 0.0)) throw std::invalid_argument("limit_periodogram_draw: d must be > 0");
  if (warmup < 0.0) throw std::invalid_argument("limit_periodogram_draw: warmup must be >= 0");
  const int N = euler_steps(dt);
  const int W = static_cast<int>(std::llround(warmup / dt));
  const double c = -std::abs(loc.c), d = loc.d;
  Xoshiro256pp rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  double J = 0.0, K = 0.0;
  for (int i = 0; i < W; ++i) {
    const double G = c * J + d * K;
    const double dW = normal(rng);
    K += (c * K - d * J) * dt + dW / d;
    J += G * dt;
  }
  std::vector<std::complex<double>> acc(h.size());
  for (int i = 0; i < N; ++i) {
    const double r = i * dt;
    for (std::size_t k = 0; k < h.size(); ++k) acc[k] += J * std::polar(1.0, -h[k] * r);
    const double G = c * J + d * K;
    const double dW = normal(rng);
    K += (c * K - d * J) * dt + dW / d;
    J += G * dt;
  }
  std::vector<double> out(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    out[k] = std::norm(acc[k] * dt) / (2.0 * std::numbers::pi);
  }
  return out;
}

double limit_periodogram_draw(const Localization& loc, double h, double dt, std::uint64_t seed,
                              double warmup) {
  return limit_periodogram_draws(loc, {h}, dt, seed, warmup)[0];
}

double limit_periodogram_from_path(const PathBundle& path, double h) {
  std::complex<double> acc;
  for (int i = 0; i < path.steps(); ++i) acc += path.J[i] * std::polar(1.0, -h * i * path.dt);
  return std::norm(acc * path.dt) / (2.0 * std::numbers::pi);
}

double ltu_t_statistic(const std::vector<double>& y, double b) {
  const int n = static_cast<int>(y.size());
  if (n < 8) throw DataError("ltu_t_statistic: need at least 8 observations");
  double sxy = 0.0, sxx = 0.0;
  for (int t = 1; t < n; ++t) {
    sxy += y[t] * y[t - 1];
    sxx += y[t - 1] * y[t - 1];
  }
  if (!(sxx > 0.0)) throw DataError("ltu_t_statistic: zero lagged sum of squares");
  return (sxy / sxx - std::exp(b / n)) * std::sqrt(sxx);
}

}  // namespace longcycle
