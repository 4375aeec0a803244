#include "longcycle/linalg.hpp"

#include "longcycle/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace longcycle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// QR of the column-equilibrated design plus its condition number.
struct ScaledQr {
  Eigen::VectorXd scale;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  double condition = kInf;
};

ScaledQr factor(const Eigen::MatrixXd& x) {
  ScaledQr out;
  out.scale.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return out;
    out.scale(j) = 1.0 / norm;
  }
  if (x.rows() < x.cols()) return out;
  out.qr.compute(x * out.scale.asDiagonal());
  const Eigen::MatrixXd r = out.qr.matrixR().topRows(x.cols()).triangularView<Eigen::Upper>();
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues();
  const double smin = s(s.size() - 1);
  if (smin > 0.0) out.condition = (s(0) / smin) * (s(0) / smin);
  return out;
}

ScaledQr checked_factor(const Eigen::MatrixXd& x) {
  ScaledQr f = factor(x);
  if (!(f.condition <= kMaxCondition)) {
    throw SingularMatrixError(
        "regression design is singular (condition " + std::to_string(f.condition) + ")", f.condition);
  }
  return f;
}

}  // namespace

double gram_condition(const Eigen::MatrixXd& x) {
  if (x.cols() == 0) return 1.0;
  return factor(x).condition;
}

OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  OlsResult out;
  if (x.cols() == 0) {
    out.beta.resize(0);
    out.residuals = y;
    out.rss = y.squaredNorm();
    return out;
  }
  const ScaledQr f = checked_factor(x);
  out.beta = f.scale.asDiagonal() * f.qr.solve(y);
  out.residuals = y - x * out.beta;
  out.rss = out.residuals.squaredNorm();
  return out;
}

Eigen::MatrixXd residualize(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0) return y;
  const ScaledQr f = checked_factor(x);
  return y - x * (f.scale.asDiagonal() * f.qr.solve(y));
}

}  // namespace longcycle
