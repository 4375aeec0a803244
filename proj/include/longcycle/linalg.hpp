#pragma once

#include <Eigen/Dense>

namespace longcycle {

/// Gram inversions beyond this (column-equilibrated) condition number throw.
inline constexpr double kMaxCondition = 1e12;

struct OlsResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  double rss = 0.0;
};

/// Condition number of X'X after scaling each column of X to unit norm.
double gram_condition(const Eigen::MatrixXd& x);

/// Least squares of y on the columns of x. Throws SingularMatrixError when
/// gram_condition(x) exceeds kMaxCondition. An empty design returns y.
OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Residuals of every column of y after regression on x.
Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

}  // namespace longcycle
