#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"
#include "longcycle/quantile_table.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace longcycle {

enum class Spacing { linear, log };

/// Grid over c_min <= c <= 0 and d_min <= d <= d_max.
/// Log spacing for c places c_points-1 log-spaced |c| values in [1, |c_min|]
/// next to c = 0.
struct GridSpec {
  double c_min = -678.0;
  int c_points = 60;
  Spacing c_spacing = Spacing::log;
  double d_min = 6.283185307179586;
  double d_max = 678.0;
  int d_points = 60;
  Spacing d_spacing = Spacing::log;
  bool allow_small_d = false;

  /// Default grid for a sample of size n: d_max = min(678, n pi), c_min = -d_max.
  static GridSpec defaults(int n);
  /// Throws std::invalid_argument on inconsistent settings.
  void validate(int n) const;
};

/// Parses "c:<min>:<pts>:<spacing>,d:<min>:<max>:<pts>:<spacing>".
GridSpec parse_grid_spec(const std::string& text);

struct Grid {
  std::vector<double> c;  // ascending
  std::vector<double> d;  // ascending
};

Grid make_grid(const GridSpec& spec);

/// Source of critical values W_{1-alpha}(c, d).
using CriticalValueSource = std::function<double(const Localization&)>;
CriticalValueSource table_source(const QuantileTable& table);

struct GridPoint {
  double c = 0.0;
  double d = 0.0;
  double phi1_0 = 0.0;
  double phi2_0 = 0.0;
  double wald = 0.0;
  double critical = 0.0;
  bool accepted = false;
  std::string diagnostic;  // set when the point could not be evaluated
};

struct ConfidenceSet {
  std::vector<GridPoint> points;  // every grid point, c-major order
  Grid grid;
  double alpha = 0.05;
  DetKind det_kind;
  int p = 0;
  int n = 0;

  std::vector<GridPoint> accepted() const;
  bool empty() const;
  bool contains(const Localization& loc) const;
};

/// Test inversion over the grid: Wald with long-run variance for p = 0,
/// modified Wald for p >= 1. Points that fail to evaluate are rejected with
/// a diagnostic.
ConfidenceSet confidence_set(const std::vector<double>& y, const DetKind& kind, int p,
                             const Grid& grid, double alpha, const CriticalValueSource& critical,
                             int threads = 1);

struct CycleInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = true;
  bool unbounded = false;

  /// Same interval in periods (times n).
  CycleInterval in_periods(int n) const;
};

CycleInterval project_tau_theta(const ConfidenceSet& cs);
CycleInterval project_tau_omega(const ConfidenceSet& cs);

struct PointEstimate {
  Localization loc;
  CycleMeasures measures;
};

/// (c, d) and cycle lengths backed out of the OLS AR(2) estimates; absent when
/// the estimated roots are real.
std::optional<PointEstimate> point_estimate(const std::vector<double>& y, const DetKind& kind);

/// Index of the grid value nearest to x.
std::size_t nearest_index(const std::vector<double>& grid, double x);

}  // namespace longcycle
