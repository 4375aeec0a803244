#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"
#include "longcycle/dgp.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace longcycle {

struct LongRunVariance {
  double value = 0.0;
  int bandwidth = 0;
  bool floored = false;  // raw estimate was below 1e-12
};

/// Default Bartlett bandwidth floor(4 (n/100)^{2/9}).
int default_bandwidth(int n);

/// Newey-West estimate with Bartlett weights 1 - h/(m+1).
LongRunVariance long_run_variance(const std::vector<double>& residuals,
                                  std::optional<int> bandwidth = std::nullopt);

/// OLS residuals of y_t on the deterministic regressors of `kind`.
std::vector<double> detrend(const std::vector<double>& y, const DetKind& kind);

/// AR(2) fit in the (y_{t-1}, Delta y_{t-1}) parametrization with the
/// deterministic regressors included in the regression. Uses t = 3..n.
struct FitResult {
  double phi_sum_hat = 0.0;  // phi1 + phi2
  double phi2_hat = 0.0;
  double phi1_hat = 0.0;
  std::vector<double> residuals;
  double sigma2_u_hat = 0.0;
  double sigma2_lr_hat = 0.0;
  bool sigma2_lr_floored = false;
  double bic = 0.0;
  DetKind det_kind;
  int n_used = 0;
  /// Gram of the detrended regressors (y_{t-1}, Delta y_{t-1}).
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
};

FitResult fit_ar2(const std::vector<double>& y, const DetKind& kind);

/// Wald statistic for H0: (phi1, phi2) = phi0 in transformed coordinates,
/// with the long-run variance in the covariance estimate.
double wald_statistic(const FitResult& fit, const ArCoefficients& phi0);
double wald_statistic(const std::vector<double>& y, const DetKind& kind, const ArCoefficients& phi0);

/// The same test from the (y_{t-1}, y_{t-2}) regression.
double wald_statistic_levels(const std::vector<double>& y, const DetKind& kind,
                             const ArCoefficients& phi0);

struct ModifiedWaldContext {
  int p = 0;
  std::vector<double> rho_hat;
  std::vector<double> xhat;  // prewhitened series, entries t = p..n-1
  ArCoefficients phi_hat;
  double sigma2_eps_hat = 0.0;
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d Sigma = Eigen::Matrix2d::Zero();
  double statistic = 0.0;
};

/// AR(p)-prewhitened Wald statistic evaluated at phi0. Throws
/// SingularMatrixError when Sigma cannot be inverted.
ModifiedWaldContext modified_wald_context(const std::vector<double>& y, const DetKind& kind,
                                          const ArCoefficients& phi0, int p);
double modified_wald(const std::vector<double>& y, const DetKind& kind, const ArCoefficients& phi0,
                     int p);

/// Detrended series and its design, reusable across many phi0 values.
class ModifiedWaldEvaluator {
 public:
  ModifiedWaldEvaluator(const std::vector<double>& y, const DetKind& kind, int p);
  ModifiedWaldContext evaluate(const ArCoefficients& phi0) const;
  double operator()(const ArCoefficients& phi0) const { return evaluate(phi0).statistic; }
  int p() const { return p_; }

 private:
  std::vector<double> ytilde_;
  int p_;
};

struct BicChoice {
  DetKind kind;
  int ar_order = 0;  // number of lags of y_t
  int p = 0;         // max(ar_order - 2, 0)
  double bic = 0.0;
};

/// Candidate set used by the analysis pipeline: {constant, trend} crossed with
/// nested cycle sets {}, {1}, {1,2}, {1,2,3}, plus seasonal variants when
/// seasonal_period > 1.
std::vector<DetKind> default_bic_candidates(int seasonal_period = 0);

/// Minimizes n_eff ln(RSS/n_eff) + k ln(n_eff) over candidates and AR orders
/// 0..2+m on the common window t = m+3..n.
BicChoice bic_select(const std::vector<double>& y, const std::vector<DetKind>& candidates,
                     int max_extra_lags);

}  // namespace longcycle
