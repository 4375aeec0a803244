#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace longcycle {

/// Which deterministic regressors enter D_t. An intercept is part of every
/// kind except `none`; trend, cycles and seasonal dummies stack on top of it.
///
/// Seasonal dummies are coded as period-1 indicators (seasons 2..period) next
/// to the intercept.
struct DetKind {
  bool constant = true;
  bool trend = false;
  std::vector<int> cycles;  // frequencies k of cos/sin(2*pi*k*t/n)
  int seasonal_period = 0;  // 0 = no seasonal dummies

  static DetKind none() { return DetKind{false, false, {}, 0}; }
  static DetKind mean() { return DetKind{}; }
  static DetKind linear_trend() { return DetKind{true, true, {}, 0}; }
  static DetKind deterministic_cycles(std::vector<int> ks) {
    return DetKind{true, false, std::move(ks), 0};
  }
  static DetKind seasonal(int period) { return DetKind{true, false, {}, period}; }

  bool is_none() const {
    return !constant && !trend && cycles.empty() && seasonal_period == 0;
  }
  int regressor_count() const;

  /// The kind that governs the limiting Wald law. Seasonal dummies leave the
  /// asymptotics of the constant-mean case unchanged, so they are dropped.
  DetKind limit_kind() const;

  /// Canonical label, e.g. "none", "constant", "trend", "cycles:1,2",
  /// "trend+cycles:1", "seasonal:4". Round-trips through parse_det_kind.
  std::string label() const;

  friend bool operator==(const DetKind&, const DetKind&) = default;
};

/// Throws std::invalid_argument on unknown labels.
DetKind parse_det_kind(const std::string& label);

/// n x k design matrix of D_t for t = 1..n in the column order
/// intercept, t/n, cos/sin pairs, seasonal dummies.
Eigen::MatrixXd design_matrix(const DetKind& kind, int n);

/// Continuous-time basis on [0,1] matching design_matrix (without seasonal
/// columns), evaluated at r.
Eigen::VectorXd continuous_basis(const DetKind& kind, double r);

/// Full n x period season indicator matrix (season of t is (t-1) mod period).
Eigen::MatrixXd season_indicators(int period, int n);

/// Coefficient values for simulating D_t.
struct DetSpec {
  DetKind kind = DetKind::mean();
  double mu = 0.0;
  double xi = 0.0;  // trend coefficient on t/n
  std::vector<std::pair<double, double>> cycle_coefs;  // (theta_1k, theta_2k) per entry of kind.cycles
  std::vector<double> seasonal_effects;                // one per season 1..period
};

/// D_t for t = 1..n.
std::vector<double> build_deterministic(const DetSpec& det, int n);

}  // namespace longcycle
