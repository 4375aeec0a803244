#pragma once

#include <optional>
#include <vector>

namespace longcycle {

/// Localization pair (c, d): the AR(2) roots are exp((c ± i d) / n).
/// c controls persistence (c <= 0), d the oscillation frequency (d > 0).
struct Localization {
  double c = 0.0;
  double d = 1.0;

  bool valid() const { return c <= 0.0 && d > 0.0; }
  friend bool operator==(const Localization&, const Localization&) = default;
};

struct ArCoefficients {
  double phi1 = 0.0;
  double phi2 = 0.0;

  double discriminant() const { return phi1 * phi1 + 4.0 * phi2; }
  bool has_complex_roots() const { return discriminant() < 0.0; }
  /// Stationarity triangle of the AR(2) lag polynomial.
  bool stationary() const {
    return phi2 > -1.0 && phi1 + phi2 < 1.0 && phi2 - phi1 < 1.0;
  }
};

/// Cycle length as a fraction of the sample.
struct CycleMeasures {
  double tau_theta = 0.0;
  /// Spectrum-based length; absent when d < |c| (no interior spectral peak).
  std::optional<double> tau_omega;
  /// Set when d == |c|: the spectrum peak sits at the origin and tau_omega
  /// is unbounded. tau_omega then holds +inf.
  bool tau_omega_unbounded = false;
};

/// (c, d) -> (phi1, phi2) for sample size n. Throws std::invalid_argument
/// for n < 3 or an invalid localization.
ArCoefficients phi_from_cd(const Localization& loc, int n);

/// Inverse of phi_from_cd. Returns nullopt for coefficient pairs that do not
/// correspond to a cyclical process (real roots or phi2 >= 0).
std::optional<Localization> cd_from_phi(const ArCoefficients& phi, int n);

CycleMeasures cycle_measures(const Localization& loc);

/// Frequency in (0, pi) maximizing the AR(2) spectral density, when the peak
/// is interior. Throws std::invalid_argument for phi2 == 0.
std::optional<double> spectrum_peak_frequency(const ArCoefficients& phi);

/// Impulse responses w_0..w_horizon of the long-cycle AR(2):
/// w_j = r^j sin(theta (j+1)) / sin(theta), r = e^{c/n}, theta = d/n.
std::vector<double> irf_weights(const Localization& loc, int n, int horizon);

}  // namespace longcycle
