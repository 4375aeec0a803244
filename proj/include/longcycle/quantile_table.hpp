#pragma once

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace longcycle {

inline constexpr int kTableSchemaVersion = 1;

/// 0.95 quantile of chi-squared with two degrees of freedom, -2 ln(0.05).
double chi2_2_quantile(double alpha);

struct QuantileTable {
  DetKind det_kind;  // always a limit kind
  double alpha = 0.05;
  std::vector<double> c_grid;  // ascending
  std::vector<double> d_grid;  // ascending
  std::vector<double> q;       // row-major, q[i * d_grid.size() + j]
  long long replications = 0;
  double dt = 0.01;
  std::uint64_t seed = 0;
  int schema = kTableSchemaVersion;

  double at(std::size_t i, std::size_t j) const { return q[i * d_grid.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return q[i * d_grid.size() + j]; }
  friend bool operator==(const QuantileTable&, const QuantileTable&) = default;
};

/// Seed of replication `rep` at cell (c, d). Keys on the cell values, so a
/// cell produces the same draws in any grid and under any thread count.
std::uint64_t cell_draw_seed(std::uint64_t base_seed, const DetKind& kind, const Localization& loc,
                             std::uint64_t rep);

/// Euler step used at one cell: dt itself, or dt / m with the smallest integer
/// m such that (|c| + d) * dt / m <= 1/4. Keeps the explicit scheme stable at
/// cells with fast mean reversion or fast oscillation.
double stable_step(const Localization& loc, double dt);

struct CellDraws {
  std::vector<double> sorted;
  int resamples = 0;
};

/// R limit-law draws at one cell, sorted ascending, on the step stable_step(loc, dt).
CellDraws simulate_cell(const DetKind& kind, const Localization& loc, long long R, double dt,
                        std::uint64_t seed, int threads = 0);

/// Order statistic ceil((1 - alpha) R) (1-based) of sorted draws.
double empirical_quantile(const std::vector<double>& sorted, double alpha);

/// Fraction of sorted draws strictly above `critical`.
double exceedance(const std::vector<double>& sorted, double critical);

struct TableBuildOptions {
  int threads = 0;
  /// Called after each finished cell (in grid order).
  std::function<void(std::size_t i, std::size_t j, double value)> on_cell;
  /// Returns a previously computed value for a cell to skip its simulation.
  std::function<std::optional<double>(std::size_t i, std::size_t j)> resume;
};

QuantileTable build_table(const DetKind& kind, double alpha, const std::vector<double>& c_grid,
                          const std::vector<double>& d_grid, long long R, double dt,
                          std::uint64_t seed, const TableBuildOptions& options = {});

/// Rejection rate of the conventional chi-squared(2) test, row-major like
/// QuantileTable::q.
std::vector<double> size_surface(const DetKind& kind, const std::vector<double>& c_grid,
                                 const std::vector<double>& d_grid, double alpha, long long R,
                                 double dt, std::uint64_t seed, const TableBuildOptions& options = {});

/// Bilinear interpolation. Throws RangeError outside the grid box.
double lookup(const QuantileTable& table, const Localization& loc);

void save_table(const QuantileTable& table, const std::filesystem::path& path);
/// Throws TableError on I/O failure, schema mismatch or checksum failure.
QuantileTable load_table(const std::filesystem::path& path);

/// File name encoding kind, alpha, grids, R, dt and seed.
std::filesystem::path table_cache_path(const std::filesystem::path& dir, const DetKind& kind,
                                       double alpha, const std::vector<double>& c_grid,
                                       const std::vector<double>& d_grid, long long R, double dt,
                                       std::uint64_t seed);

/// Cache directory from the explicit value or LONGCYCLE_CACHE_DIR, else "./.longcycle-cache".
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& explicit_dir);

}  // namespace longcycle
