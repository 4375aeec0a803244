#include "longcycle/estimation.hpp"

#include "longcycle/errors.hpp"
#include "longcycle/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace longcycle {
namespace {

constexpr double kVarianceFloor = 1e-12;

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> as_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Rows t = first..n-1 of the deterministic design.
Eigen::MatrixXd design_rows(const DetKind& kind, int n, int first) {
  return design_matrix(kind, n).bottomRows(n - first);
}

// Shared by sigma2_u_hat and the lag-0 term of the long-run variance so the
// two agree bit for bit at bandwidth 0.
double mean_square(const std::vector<double>& u) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return s / static_cast<double>(u.size());
}

}  // namespace

int default_bandwidth(int n) {
  return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

LongRunVariance long_run_variance(const std::vector<double>& u, std::optional<int> bandwidth) {
  const int n = static_cast<int>(u.size());
  if (n < 8) throw std::invalid_argument("long_run_variance: need at least 8 residuals");
  const int m = bandwidth.value_or(default_bandwidth(n));
  if (m < 0) throw std::invalid_argument("long_run_variance: bandwidth must be >= 0");
  LongRunVariance out;
  out.bandwidth = m;
  double s = mean_square(u);
  for (int h = 1; h <= m && h < n; ++h) {
    double g = 0.0;
    for (int t = h; t < n; ++t) g += u[t] * u[t - h];
    s += 2.0 * (1.0 - h / (m + 1.0)) * g / n;
  }
  if (!(s >= kVarianceFloor)) {
    out.value = kVarianceFloor;
    out.floored = true;
  } else {
    out.value = s;
  }
  return out;
}

std::vector<double> detrend(const std::vector<double>& y, const DetKind& kind) {
  const int n = static_cast<int>(y.size());
  if (n <= kind.regressor_count() + 4) {
    throw DataError("detrend: series too short for the deterministic specification");
  }
  return as_std(ols(design_matrix(kind, n), as_vector(y)).residuals);
}

FitResult fit_ar2(const std::vector<double>& y, const DetKind& kind) {
  const int n = static_cast<int>(y.size());
  if (n < 12) throw DataError("fit_ar2: need at least 12 observations");
  const int rows = n - 2;
  if (rows <= kind.regressor_count() + 2) {
    throw DataError("fit_ar2: series too short for the deterministic specification");
  }
  Eigen::MatrixXd block(rows, 3);
  for (int i = 0; i < rows; ++i) {
    const int t = i + 2;
    block(i, 0) = y[t];
    block(i, 1) = y[t - 1];
    block(i, 2) = y[t - 1] - y[t - 2];
  }
  const Eigen::MatrixXd tilde = residualize(design_rows(kind, n, 2), block);
  const Eigen::MatrixXd x = tilde.rightCols(2);
  const OlsResult reg = ols(x, tilde.col(0));

  FitResult f;
  f.det_kind = kind;
  f.n_used = rows;
  f.phi_sum_hat = reg.beta(0);
  f.phi2_hat = -reg.beta(1);
  f.phi1_hat = f.phi_sum_hat - f.phi2_hat;
  f.residuals = as_std(reg.residuals);
  f.sigma2_u_hat = mean_square(f.residuals);
  const auto lrv = long_run_variance(f.residuals);
  f.sigma2_lr_hat = lrv.value;
  f.sigma2_lr_floored = lrv.floored;
  const double k = kind.regressor_count() + 2;
  f.bic = rows * std::log(std::max(reg.rss, std::numeric_limits<double>::min()) / rows) +
          k * std::log(static_cast<double>(rows));
  f.gram = x.transpose() * x;
  return f;
}

double wald_statistic(const FitResult& f, const ArCoefficients& phi0) {
  const Eigen::Vector2d delta(f.phi_sum_hat - (phi0.phi1 + phi0.phi2), f.phi2_hat - phi0.phi2);
  Eigen::Matrix2d vinv;
  vinv << f.gram(0, 0), -f.gram(0, 1), -f.gram(1, 0), f.gram(1, 1);
  return delta.dot(vinv * delta) / f.sigma2_lr_hat;
}

double wald_statistic(const std::vector<double>& y, const DetKind& kind, const ArCoefficients& phi0) {
  return wald_statistic(fit_ar2(y, kind), phi0);
}

double wald_statistic_levels(const std::vector<double>& y, const DetKind& kind,
                             const ArCoefficients& phi0) {
  const int n = static_cast<int>(y.size());
  if (n < 12) throw DataError("wald_statistic_levels: need at least 12 observations");
  const int rows = n - 2;
  Eigen::MatrixXd block(rows, 3);
  for (int i = 0; i < rows; ++i) {
    const int t = i + 2;
    block(i, 0) = y[t];
    block(i, 1) = y[t - 1];
    block(i, 2) = y[t - 2];
  }
  const Eigen::MatrixXd tilde = residualize(design_rows(kind, n, 2), block);
  const Eigen::MatrixXd x = tilde.rightCols(2);
  const OlsResult reg = ols(x, tilde.col(0));
  const double s2 = long_run_variance(as_std(reg.residuals)).value;
  const Eigen::Vector2d delta(reg.beta(0) - phi0.phi1, reg.beta(1) - phi0.phi2);
  return delta.dot((x.transpose() * x) * delta) / s2;
}

ModifiedWaldEvaluator::ModifiedWaldEvaluator(const std::vector<double>& y, const DetKind& kind,
                                             int p)
    : p_(p) {
  if (p < 0) throw std::invalid_argument("modified_wald: p must be >= 0");
  if (static_cast<int>(y.size()) <= p + 12) throw DataError("modified_wald: need n > p + 12");
  ytilde_ = detrend(y, kind);
}

ModifiedWaldContext ModifiedWaldEvaluator::evaluate(const ArCoefficients& phi0) const {
  const auto& yt = ytilde_;
  const int n = static_cast<int>(yt.size());
  const int p = p_;
  ModifiedWaldContext ctx;
  ctx.p = p;

  // Null-filtered series, defined for t >= 2.
  std::vector<double> u(n, 0.0);
  for (int t = 2; t < n; ++t) u[t] = yt[t] - phi0.phi1 * yt[t - 1] - phi0.phi2 * yt[t - 2];

  ctx.rho_hat.assign(p, 0.0);
  if (p > 0) {
    const int rows = n - 2 - p;
    Eigen::MatrixXd lags(rows, p);
    Eigen::VectorXd target(rows);
    for (int i = 0; i < rows; ++i) {
      const int t = i + 2 + p;
      target(i) = u[t];
      for (int j = 1; j <= p; ++j) lags(i, j - 1) = u[t - j];
    }
    const auto reg = ols(lags, target);
    for (int j = 0; j < p; ++j) ctx.rho_hat[j] = reg.beta(j);
  }

  std::vector<double> x(n, 0.0);
  for (int t = p; t < n; ++t) {
    double v = yt[t];
    for (int j = 1; j <= p; ++j) v -= ctx.rho_hat[j - 1] * yt[t - j];
    x[t] = v;
  }
  ctx.xhat.assign(x.begin() + p, x.end());

  const int first = p + 2;
  const int rows = n - first;
  Eigen::MatrixXd xl(rows, 2);
  Eigen::VectorXd target(rows);
  for (int i = 0; i < rows; ++i) {
    const int t = i + first;
    target(i) = x[t];
    xl(i, 0) = x[t - 1];
    xl(i, 1) = x[t - 2];
  }
  const auto reg = ols(xl, target);
  ctx.phi_hat = {reg.beta(0), reg.beta(1)};
  ctx.sigma2_eps_hat = std::max(reg.rss / rows, kVarianceFloor);
  ctx.M = xl.transpose() * xl;

  if (p > 0) {
    Eigen::MatrixXd ul(rows, p);
    for (int i = 0; i < rows; ++i) {
      const int t = i + first;
      for (int j = 1; j <= p; ++j) ul(i, j - 1) = u[t - j];
    }
    const Eigen::MatrixXd corrected = residualize(ul, xl);
    const double cond = gram_condition(corrected);
    if (!(cond <= kMaxCondition)) {
      throw SingularMatrixError("modified_wald: corrected Gram matrix is singular", cond);
    }
    ctx.Sigma = corrected.transpose() * corrected;
  } else {
    ctx.Sigma = ctx.M;
  }

  const Eigen::Vector2d delta(ctx.phi_hat.phi1 - phi0.phi1, ctx.phi_hat.phi2 - phi0.phi2);
  const Eigen::Vector2d md = ctx.M * delta;
  ctx.statistic = md.dot(ctx.Sigma.ldlt().solve(md)) / ctx.sigma2_eps_hat;
  return ctx;
}

ModifiedWaldContext modified_wald_context(const std::vector<double>& y, const DetKind& kind,
                                          const ArCoefficients& phi0, int p) {
  return ModifiedWaldEvaluator(y, kind, p).evaluate(phi0);
}

double modified_wald(const std::vector<double>& y, const DetKind& kind, const ArCoefficients& phi0,
                     int p) {
  return modified_wald_context(y, kind, phi0, p).statistic;
}

std::vector<DetKind> default_bic_candidates(int seasonal_period) {
  const std::vector<std::vector<int>> cycle_sets = {{}, {1}, {1, 2}, {1, 2, 3}};
  std::vector<int> seasonal = {0};
  if (seasonal_period > 1) seasonal.push_back(seasonal_period);
  std::vector<DetKind> out;
  for (int s : seasonal) {
    for (bool trend : {false, true}) {
      for (const auto& ks : cycle_sets) out.push_back(DetKind{true, trend, ks, s});
    }
  }
  return out;
}

BicChoice bic_select(const std::vector<double>& y, const std::vector<DetKind>& candidates,
                     int m) {
  if (m < 0) throw std::invalid_argument("bic_select: max_extra_lags must be >= 0");
  if (candidates.empty()) throw std::invalid_argument("bic_select: no candidates");
  const int n = static_cast<int>(y.size());
  const int max_lags = 2 + m;
  const int first = m + 2;
  const int rows = n - first;
  int widest = 0;
  for (const auto& k : candidates) widest = std::max(widest, k.regressor_count());
  if (rows <= widest + max_lags + 8) throw DataError("bic_select: series too short");

  Eigen::VectorXd target(rows);
  Eigen::MatrixXd lags(rows, max_lags);
  for (int i = 0; i < rows; ++i) {
    const int t = i + first;
    target(i) = y[t];
    for (int j = 1; j <= max_lags; ++j) lags(i, j - 1) = y[t - j];
  }

  BicChoice best;
  best.bic = std::numeric_limits<double>::infinity();
  const double log_n = std::log(static_cast<double>(rows));
  for (const auto& kind : candidates) {
    const Eigen::MatrixXd d = design_rows(kind, n, first);
    for (int order = 0; order <= max_lags; ++order) {
      Eigen::MatrixXd x(rows, d.cols() + order);
      x.leftCols(d.cols()) = d;
      x.rightCols(order) = lags.leftCols(order);
      double rss;
      try {
        rss = ols(x, target).rss;
      } catch (const SingularMatrixError&) {
        continue;
      }
      const double bic = rows * std::log(std::max(rss, std::numeric_limits<double>::min()) / rows) +
                         static_cast<double>(x.cols()) * log_n;
      if (bic < best.bic) {
        best = BicChoice{kind, order, std::max(order - 2, 0), bic};
      }
    }
  }
  if (!std::isfinite(best.bic)) throw DataError("bic_select: no candidate could be estimated");
  return best;
}

}  // namespace longcycle
