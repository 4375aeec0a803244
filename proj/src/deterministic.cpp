#include "longcycle/deterministic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace longcycle {
namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const int v = std::stoi(item, &pos);
    if (pos != item.size() || v <= 0) {
      throw std::invalid_argument("bad frequency list '" + s + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int DetKind::regressor_count() const {
  int k = constant ? 1 : 0;
  if (trend) k += 1;
  k += 2 * static_cast<int>(cycles.size());
  if (seasonal_period > 1) k += seasonal_period - 1;
  return k;
}

DetKind DetKind::limit_kind() const {
  DetKind out = *this;
  out.seasonal_period = 0;
  return out;
}

std::string DetKind::label() const {
  if (is_none()) return "none";
  std::vector<std::string> parts;
  if (trend) parts.emplace_back("trend");
  if (!cycles.empty()) {
    std::string s = "cycles:";
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(cycles[i]);
    }
    parts.push_back(s);
  }
  if (seasonal_period > 0) parts.push_back("seasonal:" + std::to_string(seasonal_period));
  if (parts.empty()) return "constant";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

DetKind parse_det_kind(const std::string& label) {
  if (label == "none") return DetKind::none();
  DetKind kind = DetKind::mean();
  if (label == "constant" || label == "mean") return kind;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "trend") {
      kind.trend = true;
    } else if (part.rfind("cycles:", 0) == 0) {
      kind.cycles = parse_int_list(part.substr(7));
      std::sort(kind.cycles.begin(), kind.cycles.end());
      if (kind.cycles.empty()) throw std::invalid_argument("empty cycle list in '" + label + "'");
    } else if (part.rfind("seasonal:", 0) == 0) {
      kind.seasonal_period = std::stoi(part.substr(9));
      if (kind.seasonal_period < 2) {
        throw std::invalid_argument("seasonal period must be >= 2 in '" + label + "'");
      }
    } else if (part == "constant" || part == "mean") {
      // intercept is implicit
    } else {
      throw std::invalid_argument("unknown deterministic kind '" + label + "'");
    }
  }
  return kind;
}

Eigen::MatrixXd design_matrix(const DetKind& kind, int n) {
  const int k = kind.regressor_count();
  Eigen::MatrixXd x(n, k);
  for (int row = 0; row < n; ++row) {
    const double t = row + 1;
    int col = 0;
    if (kind.constant) x(row, col++) = 1.0;
    if (kind.trend) x(row, col++) = t / n;
    for (int f : kind.cycles) {
      const double a = 2.0 * std::numbers::pi * f * t / n;
      x(row, col++) = std::cos(a);
      x(row, col++) = std::sin(a);
    }
    if (kind.seasonal_period > 1) {
      const int season = row % kind.seasonal_period;
      for (int s = 1; s < kind.seasonal_period; ++s) x(row, col++) = season == s ? 1.0 : 0.0;
    }
  }
  return x;
}

Eigen::VectorXd continuous_basis(const DetKind& kind, double r) {
  const DetKind lk = kind.limit_kind();
  Eigen::VectorXd b(lk.regressor_count());
  int col = 0;
  if (lk.constant) b(col++) = 1.0;
  if (lk.trend) b(col++) = r;
  for (int f : lk.cycles) {
    const double a = 2.0 * std::numbers::pi * f * r;
    b(col++) = std::cos(a);
    b(col++) = std::sin(a);
  }
  return b;
}

Eigen::MatrixXd season_indicators(int period, int n) {
  if (period < 1) throw std::invalid_argument("season_indicators: period must be >= 1");
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, period);
  for (int row = 0; row < n; ++row) x(row, row % period) = 1.0;
  return x;
}

std::vector<double> build_deterministic(const DetSpec& det, int n) {
  if (n < 1) throw std::invalid_argument("build_deterministic: n must be >= 1");
  if (det.cycle_coefs.size() != det.kind.cycles.size()) {
    throw std::invalid_argument("build_deterministic: one (theta1, theta2) pair per cycle frequency");
  }
  if (det.kind.seasonal_period > 0 &&
      det.seasonal_effects.size() != static_cast<std::size_t>(det.kind.seasonal_period)) {
    throw std::invalid_argument("build_deterministic: one effect per season required");
  }
  std::vector<double> out(n);
  for (int row = 0; row < n; ++row) {
    const double t = row + 1;
    double v = det.kind.is_none() ? 0.0 : det.mu;
    if (det.kind.trend) v += det.xi * t / n;
    for (std::size_t j = 0; j < det.kind.cycles.size(); ++j) {
      const double a = 2.0 * std::numbers::pi * det.kind.cycles[j] * t / n;
      v += det.cycle_coefs[j].first * std::cos(a) + det.cycle_coefs[j].second * std::sin(a);
    }
    if (det.kind.seasonal_period > 0) v += det.seasonal_effects[row % det.kind.seasonal_period];
    out[row] = v;
  }
  return out;
}

}  // namespace longcycle
