#include "longcycle/inference.hpp"

#include "longcycle/estimation.hpp"
#include "longcycle/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace longcycle {
namespace {

constexpr double kOmegaBoundaryTol = 1e-10;
constexpr double kMaxDefaultD = 678.0;

Spacing parse_spacing(const std::string& s) {
  if (s == "log") return Spacing::log;
  if (s == "lin" || s == "linear") return Spacing::linear;
  throw std::invalid_argument("unknown grid spacing '" + s + "'");
}

std::vector<double> spaced(double lo, double hi, int points, Spacing spacing) {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (int k = 0; k < points; ++k) {
    const double f = static_cast<double>(k) / (points - 1);
    out[k] = spacing == Spacing::log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                                     : lo + f * (hi - lo);
  }
  out.back() = hi;
  return out;
}

}  // namespace

GridSpec GridSpec::defaults(int n) {
  GridSpec g;
  g.d_max = std::min(kMaxDefaultD, n * std::numbers::pi);
  g.c_min = -g.d_max;
  return g;
}

void GridSpec::validate(int n) const {
  if (c_min > 0.0) throw std::invalid_argument("grid: c_min must be <= 0");
  if (c_points < 1 || d_points < 1) throw std::invalid_argument("grid: point counts must be >= 1");
  if (c_spacing == Spacing::log && c_points > 1 && c_min > -1.0) {
    throw std::invalid_argument("grid: log spacing in c needs c_min <= -1");
  }
  if (!(d_min > 0.0) || d_max < d_min) throw std::invalid_argument("grid: need 0 < d_min <= d_max");
  if (!allow_small_d && d_min < 2.0 * std::numbers::pi - 1e-12) {
    throw std::invalid_argument("grid: d_min below 2*pi requires an explicit override");
  }
  if (n > 0 && d_max > n * std::numbers::pi + 1e-9) {
    throw std::invalid_argument("grid: d_max must not exceed n*pi");
  }
}

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec g;
  std::stringstream ss(text);
  std::string part;
  bool have_c = false, have_d = false;
  while (std::getline(ss, part, ',')) {
    std::vector<std::string> f;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ':')) f.push_back(tok);
    try {
      if (!f.empty() && f[0] == "c" && f.size() == 4) {
        g.c_min = std::stod(f[1]);
        g.c_points = std::stoi(f[2]);
        g.c_spacing = parse_spacing(f[3]);
        have_c = true;
      } else if (!f.empty() && f[0] == "d" && f.size() == 5) {
        g.d_min = std::stod(f[1]);
        g.d_max = std::stod(f[2]);
        g.d_points = std::stoi(f[3]);
        g.d_spacing = parse_spacing(f[4]);
        have_d = true;
      } else {
        throw std::invalid_argument("bad grid component '" + part + "'");
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("bad grid spec '" + text + "': " + e.what());
    }
  }
  if (!have_c || !have_d) throw std::invalid_argument("grid spec needs both c and d parts: '" + text + "'");
  return g;
}

Grid make_grid(const GridSpec& spec) {
  spec.validate(0);
  Grid g;
  if (spec.c_points == 1) {
    g.c = {spec.c_min};
  } else if (spec.c_spacing == Spacing::log) {
    const auto mags = spaced(1.0, -spec.c_min, spec.c_points - 1, Spacing::log);
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) g.c.push_back(-*it);
    g.c.push_back(0.0);
  } else {
    g.c = spaced(spec.c_min, 0.0, spec.c_points, Spacing::linear);
  }
  g.d = spaced(spec.d_min, spec.d_max, spec.d_points, spec.d_spacing);
  return g;
}

CriticalValueSource table_source(const QuantileTable& table) {
  return [&table](const Localization& loc) { return lookup(table, loc); };
}

std::vector<GridPoint> ConfidenceSet::accepted() const {
  std::vector<GridPoint> out;
  for (const auto& p : points) {
    if (p.accepted) out.push_back(p);
  }
  return out;
}

bool ConfidenceSet::empty() const {
  return std::none_of(points.begin(), points.end(), [](const GridPoint& p) { return p.accepted; });
}

bool ConfidenceSet::contains(const Localization& loc) const {
  return std::any_of(points.begin(), points.end(), [&](const GridPoint& p) {
    return p.accepted && p.c == loc.c && p.d == loc.d;
  });
}

ConfidenceSet confidence_set(const std::vector<double>& y, const DetKind& kind, int p,
                             const Grid& grid, double alpha, const CriticalValueSource& critical,
                             int threads) {
  if (p < 0) throw std::invalid_argument("confidence_set: p must be >= 0");
  ConfidenceSet cs;
  cs.grid = grid;
  cs.alpha = alpha;
  cs.det_kind = kind;
  cs.p = p;
  cs.n = static_cast<int>(y.size());
  const int n = cs.n;

  std::optional<FitResult> fit;
  std::optional<ModifiedWaldEvaluator> mw;
  std::string setup_error;
  try {
    if (p == 0) {
      fit = fit_ar2(y, kind);
    } else {
      mw.emplace(y, kind, p);
    }
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  cs.points.resize(grid.c.size() * grid.d.size());
  parallel_for(cs.points.size(), threads, [&](std::size_t k) {
    GridPoint& gp = cs.points[k];
    gp.c = grid.c[k / grid.d.size()];
    gp.d = grid.d[k % grid.d.size()];
    try {
      const Localization loc{gp.c, gp.d};
      const auto phi0 = phi_from_cd(loc, n);
      gp.phi1_0 = phi0.phi1;
      gp.phi2_0 = phi0.phi2;
      if (!setup_error.empty()) throw std::runtime_error(setup_error);
      gp.wald = p == 0 ? wald_statistic(*fit, phi0) : (*mw)(phi0);
      gp.critical = critical(loc);
      gp.accepted = std::isfinite(gp.wald) && gp.wald <= gp.critical;
    } catch (const std::exception& e) {
      gp.accepted = false;
      gp.wald = std::numeric_limits<double>::quiet_NaN();
      gp.diagnostic = e.what();
    }
  });
  return cs;
}

CycleInterval CycleInterval::in_periods(int n) const {
  CycleInterval out = *this;
  if (!empty) {
    out.lower *= n;
    if (!unbounded) out.upper *= n;
  }
  return out;
}

CycleInterval project_tau_theta(const ConfidenceSet& cs) {
  CycleInterval out;
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (const auto& p : cs.points) {
    if (!p.accepted) continue;
    dmin = std::min(dmin, p.d);
    dmax = std::max(dmax, p.d);
    out.empty = false;
  }
  if (!out.empty) {
    out.lower = 2.0 * std::numbers::pi / dmax;
    out.upper = 2.0 * std::numbers::pi / dmin;
  }
  return out;
}

CycleInterval project_tau_omega(const ConfidenceSet& cs) {
  CycleInterval out;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : cs.points) {
    if (!p.accepted || p.d < std::abs(p.c)) continue;
    out.empty = false;
    const double gap = p.d * p.d - p.c * p.c;
    if (gap < kOmegaBoundaryTol) {
      out.unbounded = true;
      continue;
    }
    const double tau = 2.0 * std::numbers::pi / std::sqrt(gap);
    lo = std::min(lo, tau);
    hi = std::max(hi, tau);
  }
  if (out.empty) return out;
  if (out.unbounded) {
    out.upper = std::numeric_limits<double>::infinity();
    // Only boundary points accepted: the interval starts at infinity as well.
    out.lower = std::isfinite(lo) ? lo : std::numeric_limits<double>::infinity();
  } else {
    out.lower = lo;
    out.upper = hi;
  }
  return out;
}

std::optional<PointEstimate> point_estimate(const std::vector<double>& y, const DetKind& kind) {
  const FitResult f = fit_ar2(y, kind);
  const auto loc = cd_from_phi({f.phi1_hat, f.phi2_hat}, static_cast<int>(y.size()));
  if (!loc) return std::nullopt;
  return PointEstimate{*loc, cycle_measures(*loc)};
}

std::size_t nearest_index(const std::vector<double>& grid, double x) {
  if (grid.empty()) throw std::invalid_argument("nearest_index: empty grid");
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (std::abs(grid[k] - x) < std::abs(grid[best] - x)) best = k;
  }
  return best;
}

}  // namespace longcycle
