#include "longcycle/diffusion.hpp"

#include "longcycle/rng.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace longcycle {
namespace {

// Relative to int J^2 int G^2, so the check does not depend on the path scale.
constexpr double kDegenerateRatio = 1e-12;
constexpr int kMaxRedraws = 1000;

}  // namespace

int euler_steps(double dt) {
  if (!(dt > 0.0) || dt > 0.05) throw std::invalid_argument("dt must lie in (0, 0.05]");
  // Guard against 1/0.01 = 99.999... style rounding.
  return static_cast<int>(std::floor(1.0 / dt + 1e-9));
}

PathBundle path_from_increments(const Localization& loc, double dt, std::vector<double> dW) {
  const int N = euler_steps(dt);
  if (static_cast<int>(dW.size()) != N) {
    throw std::invalid_argument("path_from_increments: expected floor(1/dt) increments");
  }
  const double c = loc.c, d = loc.d;
  PathBundle p;
  p.dt = dt;
  p.c = c;
  p.d = d;
  p.J.assign(N + 1, 0.0);
  p.K.assign(N + 1, 0.0);
  p.G.assign(N + 1, 0.0);
  for (int i = 0; i < N; ++i) {
    p.J[i + 1] = p.J[i] + p.G[i] * dt;
    p.K[i + 1] = p.K[i] + (c * p.K[i] - d * p.J[i]) * dt + dW[i] / d;
    p.G[i + 1] = c * p.J[i + 1] + d * p.K[i + 1];
  }
  p.dW = std::move(dW);
  return p;
}

PathBundle simulate_path(const Localization& loc, double dt, std::uint64_t seed) {
  if (!(loc.d >= 0.1)) throw std::invalid_argument("simulate_path: d must be >= 0.1");
  const int N = euler_steps(dt);
  Xoshiro256pp rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  std::vector<double> dW(N);
  for (auto& v : dW) v = normal(rng);
  return path_from_increments(loc, dt, std::move(dW));
}

GridProjector::GridProjector(const DetKind& kind, double dt)
    : kind_(kind.limit_kind()), steps_(euler_steps(dt)), dt_(dt) {
  const int k = kind_.regressor_count();
  basis_.resize(steps_ + 1, k);
  for (int i = 0; i <= steps_; ++i) basis_.row(i) = continuous_basis(kind_, i * dt).transpose();
  if (k > 0) {
    const Eigen::MatrixXd gram = basis_.topRows(steps_).transpose() * basis_.topRows(steps_) * dt;
    gram_inv_dt_ = gram.inverse() * dt;
  }
}

std::vector<double> GridProjector::residual(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != steps_ + 1) {
    throw std::invalid_argument("GridProjector: path length does not match grid");
  }
  if (basis_.cols() == 0) return x;
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), steps_ + 1);
  const Eigen::VectorXd coef = gram_inv_dt_ * (basis_.topRows(steps_).transpose() * xv.head(steps_));
  std::vector<double> out(x.size());
  Eigen::Map<Eigen::VectorXd>(out.data(), steps_ + 1) = xv - basis_ * coef;
  return out;
}

PathBundle project_path(const PathBundle& path, const GridProjector& projector) {
  PathBundle out = path;
  out.J = projector.residual(path.J);
  out.G = projector.residual(path.G);
  return out;
}

PathBundle project_path(const PathBundle& path, const DetKind& kind) {
  return project_path(path, GridProjector(kind, path.dt));
}

Functionals functionals(const PathBundle& p) {
  Functionals f;
  const int N = p.steps();
  for (int i = 0; i < N; ++i) {
    f.int_J2 += p.J[i] * p.J[i];
    f.int_G2 += p.G[i] * p.G[i];
    f.int_JG += p.J[i] * p.G[i];
    f.int_KG += p.K[i] * p.G[i];
    f.int_JdW += p.J[i] * p.dW[i];
    f.int_GdW += p.G[i] * p.dW[i];
    f.quadratic_variation += p.dW[i] * p.dW[i];
  }
  f.int_J2 *= p.dt;
  f.int_G2 *= p.dt;
  f.int_JG *= p.dt;
  f.int_KG *= p.dt;
  f.J1 = p.J[N];
  f.G1 = p.G[N];
  return f;
}

IdentityErrors identity_relative_errors(const PathBundle& p) {
  const Functionals f = functionals(p);
  const double c = p.c, d = p.d;
  IdentityErrors out;
  {
    const double t1 = (c * c + d * d) * f.int_J2, t2 = f.J1 * f.G1, t3 = f.int_JdW, t4 = c * f.J1 * f.J1;
    const double scale = std::abs(f.int_G2) + std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
    out.e = std::abs(f.int_G2 - (t1 + t2 - t3 - t4)) / scale;
  }
  out.f = std::abs(f.J1 * f.J1 - 2.0 * f.int_JG) / (2.0 * std::sqrt(f.int_J2 * f.int_G2));
  {
    const double lhs = 0.5 * (f.G1 * f.G1 - f.quadratic_variation);
    const double t1 = c * f.int_G2, t2 = c * d * f.int_KG, t3 = d * d * f.int_JG, t4 = f.int_GdW;
    const double scale = 0.5 * (f.G1 * f.G1 + f.quadratic_variation) + std::abs(t1) + std::abs(t2) +
                         std::abs(t3) + std::abs(t4);
    out.g = std::abs(lhs - (t1 + t2 - t3 + t4)) / scale;
  }
  return out;
}

double wald_limit_draw(const Localization& loc, const GridProjector& projector, double dt,
                       std::uint64_t seed, int* resamples) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : stream_seed({seed, static_cast<std::uint64_t>(attempt)});
    const PathBundle p = project_path(simulate_path(loc, dt, s), projector);
    const Functionals f = functionals(p);
    const double den = f.int_J2 * f.int_G2 - f.int_JG * f.int_JG;
    if (!(den >= kDegenerateRatio * f.int_J2 * f.int_G2) || !(den > 0.0) || !std::isfinite(den)) {
      if (resamples) ++*resamples;
      continue;
    }
    const double a = f.int_JdW, b = f.int_GdW;
    double num = 0.0;
    for (int i = 0; i < p.steps(); ++i) {
      const double v = p.J[i] * b - p.G[i] * a;
      num += v * v;
    }
    return num * dt / den;
  }
  throw std::runtime_error("wald_limit_draw: denominator degenerate on every substream");
}

double wald_limit_draw(const Localization& loc, const DetKind& kind, double dt,
                       std::uint64_t seed, int* resamples) {
  return wald_limit_draw(loc, GridProjector(kind, dt), dt, seed, resamples);
}

}  // namespace longcycle
