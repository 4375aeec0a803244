#include "longcycle/dgp.hpp"

#include "longcycle/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace longcycle {
namespace {

constexpr int kInnovationBurnIn = 500;

std::vector<double> ar2_recursion(double phi1, double phi2, const std::vector<double>& u,
                                  std::size_t drop) {
  std::vector<double> out;
  out.reserve(u.size() - drop);
  double y1 = 0.0, y2 = 0.0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    const double y = phi1 * y1 + phi2 * y2 + u[t];
    y2 = y1;
    y1 = y;
    if (t >= drop) out.push_back(y);
  }
  return out;
}

Series assemble(std::vector<double> yc, const DetSpec& det) {
  const int n = static_cast<int>(yc.size());
  const auto d = build_deterministic(det, n);
  for (int t = 0; t < n; ++t) yc[t] += d[t];
  return Series{std::move(yc), "", ""};
}

}  // namespace

double ar_root_modulus(const std::vector<double>& rho) {
  const int p = static_cast<int>(rho.size());
  if (p == 0) return 0.0;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (int j = 0; j < p; ++j) companion(0, j) = rho[j];
  for (int j = 1; j < p; ++j) companion(j, j - 1) = 1.0;
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

void InnovationSpec::validate(double margin) const {
  if (kind == Kind::iid_normal) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw std::invalid_argument("innovation sigma must be finite and >= 0");
    }
    return;
  }
  if (!(sigma_eps >= 0.0) || !std::isfinite(sigma_eps)) {
    throw std::invalid_argument("innovation sigma_eps must be finite and >= 0");
  }
  if (ar_root_modulus(coeffs) >= 1.0 - margin) {
    throw std::invalid_argument("AR innovation polynomial is not stationary with the required margin");
  }
}

double InnovationSpec::long_run_variance() const {
  if (kind == Kind::iid_normal) return sigma * sigma;
  const double s = 1.0 - std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  return sigma_eps * sigma_eps / (s * s);
}

std::vector<double> simulate_innovations(const InnovationSpec& innov, int n, std::uint64_t seed) {
  innov.validate();
  if (n < 0) throw std::invalid_argument("simulate_innovations: n must be >= 0");
  Xoshiro256pp rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> u(n);
  if (innov.kind == InnovationSpec::Kind::iid_normal) {
    for (auto& v : u) v = innov.sigma * normal(rng);
    return u;
  }
  const auto& rho = innov.coeffs;
  const std::size_t p = rho.size();
  const std::size_t total = static_cast<std::size_t>(n) + kInnovationBurnIn;
  std::vector<double> x(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    double v = innov.sigma_eps * normal(rng);
    for (std::size_t j = 0; j < p && j < t; ++j) v += rho[j] * x[t - 1 - j];
    x[t] = v;
  }
  std::copy(x.begin() + kInnovationBurnIn, x.end(), u.begin());
  return u;
}

Series simulate_long_cycle(const Localization& loc, int n, const DetSpec& det,
                           const InnovationSpec& innov, std::uint64_t seed, int presample) {
  if (n < 12) throw std::invalid_argument("simulate_long_cycle: n must be >= 12");
  if (presample < 0) throw std::invalid_argument("simulate_long_cycle: presample must be >= 0");
  const auto phi = phi_from_cd(loc, n);
  const auto u = simulate_innovations(innov, n + presample, seed);
  return assemble(ar2_recursion(phi.phi1, phi.phi2, u, presample), det);
}

Series simulate_fixed_ar2(const ArCoefficients& phi, int n, const DetSpec& det,
                          const InnovationSpec& innov, std::uint64_t seed, int burn_in) {
  if (!phi.stationary()) throw std::invalid_argument("simulate_fixed_ar2: phi is not stationary");
  if (n < 1) throw std::invalid_argument("simulate_fixed_ar2: n must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("simulate_fixed_ar2: burn_in must be >= 0");
  const auto u = simulate_innovations(innov, n + burn_in, seed);
  return assemble(ar2_recursion(phi.phi1, phi.phi2, u, burn_in), det);
}

}  // namespace longcycle
