#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/diffusion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace longcycle {

enum class SpectrumKind { periodogram, theoretical, expected_limit };
std::string to_string(SpectrumKind kind);

struct SpectrumCurve {
  std::vector<double> frequencies;
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::periodogram;
};

/// I_n(w) = |sum_{t=1}^n y_t e^{-i w t}|^2 / (2 pi n), evaluated directly.
SpectrumCurve periodogram(const std::vector<double>& y, const std::vector<double>& freqs);

/// Fourier frequencies 2 pi k / n for k = 1..floor(n/2).
std::vector<double> fourier_frequencies(int n);

/// AR(2) spectral density with roots exp((c +- i d)/n) and innovation variance sigma2_u.
SpectrumCurve theoretical_spectrum(const Localization& loc, int n, double sigma2_u,
                                   const std::vector<double>& freqs);

/// (1 - cos u) / u^2 with its limit 1/2 near u = 0.
double periodogram_kernel(double u);

/// lim n^{-4} E[I_n(h/n)] by adaptive Gauss-Kronrod quadrature over a
/// truncated real line, normalized as sigma2_u / (2 pi^2) times the integral
/// so that it equals the mean of limit_periodogram_draw. Depends on c only through c^2. Throws
/// std::runtime_error when the relative tolerance cannot be reached.
double expected_periodogram_limit_at(const Localization& loc, double sigma2_u, double h,
                                     double rel_tol = 1e-8);
SpectrumCurve expected_periodogram_limit(const Localization& loc, double sigma2_u,
                                         const std::vector<double>& h_grid, double rel_tol = 1e-8);

/// Maximizer over h > 0 of expected_periodogram_limit, refined by Brent's method.
double expected_periodogram_limit_peak(const Localization& loc);

/// One draw of |int_0^1 J(r) e^{-ihr} dr|^2 / (2 pi) for each h. J runs with
/// damping -|c|; with warmup > 0 the diffusion is started at -warmup so the
/// [0, 1] segment is close to stationary.
std::vector<double> limit_periodogram_draws(const Localization& loc, const std::vector<double>& h,
                                            double dt, std::uint64_t seed, double warmup = 0.0);
double limit_periodogram_draw(const Localization& loc, double h, double dt, std::uint64_t seed,
                              double warmup = 0.0);
/// The same functional evaluated on a given path.
double limit_periodogram_from_path(const PathBundle& path, double h);

/// (a_hat - e^{b/n}) sqrt(sum y_{t-1}^2) from the no-intercept AR(1) fit.
double ltu_t_statistic(const std::vector<double>& y, double b);

}  // namespace longcycle
