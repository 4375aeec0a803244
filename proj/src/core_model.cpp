#include "longcycle/core_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace longcycle {
namespace {

// Arguments within this distance of +-1 are treated as rounding noise.
constexpr double kAcosClamp = 1e-12;

double clamped_acos(double x) {
  if (x > 1.0 && x - 1.0 <= kAcosClamp) x = 1.0;
  if (x < -1.0 && -1.0 - x <= kAcosClamp) x = -1.0;
  return std::acos(x);
}

}  // namespace

ArCoefficients phi_from_cd(const Localization& loc, int n) {
  if (n < 3) throw std::invalid_argument("phi_from_cd: n must be >= 3");
  if (!loc.valid()) {
    throw std::invalid_argument("phi_from_cd: localization requires c <= 0 and d > 0");
  }
  const double r = std::exp(loc.c / n);
  return {2.0 * r * std::cos(loc.d / n), -r * r};
}

std::optional<Localization> cd_from_phi(const ArCoefficients& phi, int n) {
  if (n < 3) throw std::invalid_argument("cd_from_phi: n must be >= 3");
  if (phi.phi2 >= 0.0 || !phi.has_complex_roots()) return std::nullopt;
  const double modulus = std::sqrt(-phi.phi2);
  const double cos_arg = phi.phi1 / (2.0 * modulus);
  if (std::abs(cos_arg) > 1.0 + kAcosClamp) return std::nullopt;
  return Localization{0.5 * n * std::log(-phi.phi2), n * clamped_acos(cos_arg)};
}

CycleMeasures cycle_measures(const Localization& loc) {
  CycleMeasures out;
  out.tau_theta = 2.0 * std::numbers::pi / loc.d;
  const double gap = loc.d * loc.d - loc.c * loc.c;
  if (gap > 0.0) {
    out.tau_omega = 2.0 * std::numbers::pi / std::sqrt(gap);
  } else if (gap == 0.0) {
    out.tau_omega = std::numeric_limits<double>::infinity();
    out.tau_omega_unbounded = true;
  }
  return out;
}

std::optional<double> spectrum_peak_frequency(const ArCoefficients& phi) {
  if (phi.phi2 == 0.0) {
    throw std::invalid_argument("spectrum_peak_frequency: phi2 must be nonzero");
  }
  const double arg = -phi.phi1 * (1.0 - phi.phi2) / (4.0 * phi.phi2);
  if (!(std::abs(arg) < 1.0)) return std::nullopt;
  return std::acos(arg);
}

std::vector<double> irf_weights(const Localization& loc, int n, int horizon) {
  if (horizon < 1) throw std::invalid_argument("irf_weights: horizon must be >= 1");
  if (n < 1) throw std::invalid_argument("irf_weights: n must be >= 1");
  const double r = std::exp(loc.c / n);
  const double theta = loc.d / n;
  const double s = std::sin(theta);
  std::vector<double> w(static_cast<std::size_t>(horizon) + 1);
  double rj = 1.0;
  for (int j = 0; j <= horizon; ++j) {
    w[j] = rj * std::sin(theta * (j + 1)) / s;
    rj *= r;
  }
  w[0] = 1.0;
  return w;
}

}  // namespace longcycle
