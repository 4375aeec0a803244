#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace longcycle {

/// Discretized limit processes on r_i = i*dt, i = 0..N with N = floor(1/dt).
/// dW has N entries; J, K, G have N+1.
struct PathBundle {
  double dt = 0.01;
  double c = 0.0;
  double d = 1.0;
  std::vector<double> dW;
  std::vector<double> J, K, G;

  int steps() const { return static_cast<int>(dW.size()); }
};

struct Functionals {
  double int_J2 = 0.0;
  double int_G2 = 0.0;
  double int_JG = 0.0;
  double int_KG = 0.0;
  double int_JdW = 0.0;
  double int_GdW = 0.0;
  double J1 = 0.0;
  double G1 = 0.0;
  double quadratic_variation = 0.0;  // sum of dW_i^2
};

/// Number of Euler steps for a given dt.
int euler_steps(double dt);

/// Euler scheme driven by the supplied increments (length euler_steps(dt)).
PathBundle path_from_increments(const Localization& loc, double dt, std::vector<double> dW);

/// Euler scheme with dW_i ~ N(0, dt) drawn from the stream `seed`.
/// Throws std::invalid_argument unless 0 < dt <= 0.05 and d >= 0.1.
PathBundle simulate_path(const Localization& loc, double dt, std::uint64_t seed);

/// Least-squares residual projection on the simulation grid. The Gram matrix
/// uses the same left rectangle rule as the time integrals, so the projection
/// annihilates its own span exactly and is idempotent.
class GridProjector {
 public:
  GridProjector(const DetKind& kind, double dt);
  /// Residual of x (length N+1) after projection onto the basis.
  std::vector<double> residual(const std::vector<double>& x) const;
  const DetKind& kind() const { return kind_; }

 private:
  DetKind kind_;
  int steps_ = 0;
  double dt_ = 0.0;
  Eigen::MatrixXd basis_;       // (N+1) x k
  Eigen::MatrixXd gram_inv_dt_;  // (sum_{i<N} b_i b_i' dt)^{-1} * dt
};

/// Projects J and G; K and dW are carried through unchanged.
PathBundle project_path(const PathBundle& path, const DetKind& kind);
PathBundle project_path(const PathBundle& path, const GridProjector& projector);

Functionals functionals(const PathBundle& path);

/// Relative discrepancies of three pathwise Ito identities on one path:
///  e: int G^2 = (c^2+d^2) int J^2 + J(1)G(1) - int J dW - c J(1)^2
///  f: J(1)^2 = 2 int J G
///  g: (G(1)^2 - [W]_1)/2 = c int G^2 + c d int K G - d^2 int J G + int G dW
/// with the realized quadratic variation [W]_1 = sum dW^2 in place of 1.
/// e and g are scaled by the sum of absolute term values, f by
/// 2 sqrt(int J^2 int G^2).
struct IdentityErrors {
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
};
IdentityErrors identity_relative_errors(const PathBundle& path);

/// (Gram determinant below 1e-12 int J^2 int G^2, or not finite) are redrawn from the next substream;
/// (Gram determinant < 1e-14) are redrawn from the next substream;
/// the number of redraws is added to *resamples when given.
double wald_limit_draw(const Localization& loc, const DetKind& kind, double dt,
                       std::uint64_t seed, int* resamples = nullptr);
double wald_limit_draw(const Localization& loc, const GridProjector& projector, double dt,
                       std::uint64_t seed, int* resamples = nullptr);

}  // namespace longcycle
