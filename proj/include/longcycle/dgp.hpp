#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace longcycle {

/// Innovation process u_t: iid N(0, sigma^2), or a stationary AR(p) driven by
/// iid N(0, sigma_eps^2) shocks.
struct InnovationSpec {
  enum class Kind { iid_normal, ar };
  Kind kind = Kind::iid_normal;
  double sigma = 1.0;         // iid_normal
  std::vector<double> coeffs;  // ar: rho_1..rho_p
  double sigma_eps = 1.0;     // ar

  static InnovationSpec iid(double sigma) { return {Kind::iid_normal, sigma, {}, 1.0}; }
  static InnovationSpec autoregressive(std::vector<double> rho, double sigma_eps) {
    return {Kind::ar, 1.0, std::move(rho), sigma_eps};
  }

  /// Throws std::invalid_argument unless the AR polynomial has all roots
  /// inside modulus 1 - margin.
  void validate(double margin = 0.05) const;

  /// Long-run variance sigma^2 = sigma_eps^2 / (1 - sum rho)^2 (or sigma^2 for iid).
  double long_run_variance() const;
};

struct Series {
  std::vector<double> values;
  std::string name;
  std::string period_label;

  int size() const { return static_cast<int>(values.size()); }
};

/// Draw n innovations. AR innovations start from a 500-draw burn-in.
std::vector<double> simulate_innovations(const InnovationSpec& innov, int n, std::uint64_t seed);

/// y_t = D_t + y^c_t with the long-cycle AR(2) recursion and zero initial
/// conditions. `presample` extra recursion steps are run and discarded first
/// (0 reproduces the zero-start array).
Series simulate_long_cycle(const Localization& loc, int n, const DetSpec& det,
                           const InnovationSpec& innov, std::uint64_t seed, int presample = 0);

/// Fixed stationary AR(2). `burn_in` draws (default 500) are discarded.
Series simulate_fixed_ar2(const ArCoefficients& phi, int n, const DetSpec& det,
                          const InnovationSpec& innov, std::uint64_t seed, int burn_in = 500);

/// Largest modulus among the roots of z^p - rho_1 z^{p-1} - ... - rho_p.
double ar_root_modulus(const std::vector<double>& rho);

}  // namespace longcycle
