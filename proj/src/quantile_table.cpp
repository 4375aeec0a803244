#include "longcycle/quantile_table.hpp"

#include "longcycle/diffusion.hpp"
#include "longcycle/errors.hpp"
#include "longcycle/parallel.hpp"
#include "longcycle/rng.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace longcycle {
namespace {

constexpr long long kDrawBlock = 512;
constexpr double kStableStepRate = 0.25;

std::uint32_t crc_of(const std::string& s) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size())));
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_grid(const std::vector<double>& g, const char* name) {
  if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

// Index of the bracketing interval [g[k], g[k+1]] and weight of g[k+1].
std::pair<std::size_t, double> bracket(const std::vector<double>& g, double x) {
  if (g.size() == 1) return {0, 0.0};
  auto it = std::upper_bound(g.begin(), g.end(), x);
  std::size_t k = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
  if (k >= g.size() - 1) k = g.size() - 2;
  const double w = (x - g[k]) / (g[k + 1] - g[k]);
  return {k, w};
}

template <class CellFn>
std::vector<double> sweep(const std::vector<double>& c_grid, const std::vector<double>& d_grid,
                          const TableBuildOptions& options, CellFn&& cell) {
  std::vector<double> out(c_grid.size() * d_grid.size());
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    for (std::size_t j = 0; j < d_grid.size(); ++j) {
      std::optional<double> v;
      if (options.resume) v = options.resume(i, j);
      if (!v) v = cell(Localization{c_grid[i], d_grid[j]});
      out[i * d_grid.size() + j] = *v;
      if (options.on_cell) options.on_cell(i, j, *v);
    }
  }
  return out;
}

}  // namespace

double chi2_2_quantile(double alpha) {
  check_alpha(alpha);
  return -2.0 * std::log(alpha);
}

std::uint64_t cell_draw_seed(std::uint64_t base_seed, const DetKind& kind, const Localization& loc,
                             std::uint64_t rep) {
  const std::string label = kind.limit_kind().label();
  return stream_seed({base_seed, crc_of(label), std::bit_cast<std::uint64_t>(loc.c),
                      std::bit_cast<std::uint64_t>(loc.d), rep});
}

double stable_step(const Localization& loc, double dt) {
  const double rate = std::abs(loc.c) + loc.d;
  const double m = std::max(1.0, std::ceil(rate * dt / kStableStepRate - 1e-9));
  return dt / m;
}

CellDraws simulate_cell(const DetKind& kind, const Localization& loc, long long R, double dt,
                        std::uint64_t seed, int threads) {
  if (R < 1) throw std::invalid_argument("simulate_cell: R must be >= 1");
  const DetKind lk = kind.limit_kind();
  dt = stable_step(loc, dt);
  const GridProjector projector(lk, dt);
  CellDraws out;
  out.sorted.resize(static_cast<std::size_t>(R));
  const std::size_t blocks = static_cast<std::size_t>((R + kDrawBlock - 1) / kDrawBlock);
  std::vector<int> resamples(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const long long lo = static_cast<long long>(b) * kDrawBlock;
    const long long hi = std::min(R, lo + kDrawBlock);
    for (long long r = lo; r < hi; ++r) {
      out.sorted[r] = wald_limit_draw(loc, projector, dt,
                                      cell_draw_seed(seed, lk, loc, static_cast<std::uint64_t>(r)),
                                      &resamples[b]);
    }
  });
  for (int v : resamples) out.resamples += v;
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

double empirical_quantile(const std::vector<double>& sorted, double alpha) {
  check_alpha(alpha);
  if (sorted.empty()) throw std::invalid_argument("empirical_quantile: no draws");
  const double R = static_cast<double>(sorted.size());
  // Small slack keeps (1 - 0.05) * 1e5 = 95000 from rounding up to 95001.
  long long k = static_cast<long long>(std::ceil((1.0 - alpha) * R - 1e-9));
  k = std::clamp<long long>(k, 1, static_cast<long long>(sorted.size()));
  return sorted[static_cast<std::size_t>(k - 1)];
}

double exceedance(const std::vector<double>& sorted, double critical) {
  if (sorted.empty()) throw std::invalid_argument("exceedance: no draws");
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), critical);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

QuantileTable build_table(const DetKind& kind, double alpha, const std::vector<double>& c_grid,
                          const std::vector<double>& d_grid, long long R, double dt,
                          std::uint64_t seed, const TableBuildOptions& options) {
  check_alpha(alpha);
  check_grid(c_grid, "c");
  check_grid(d_grid, "d");
  QuantileTable t;
  t.det_kind = kind.limit_kind();
  t.alpha = alpha;
  t.c_grid = c_grid;
  t.d_grid = d_grid;
  t.replications = R;
  t.dt = dt;
  t.seed = seed;
  t.q = sweep(c_grid, d_grid, options, [&](const Localization& loc) {
    return empirical_quantile(simulate_cell(t.det_kind, loc, R, dt, seed, options.threads).sorted, alpha);
  });
  return t;
}

std::vector<double> size_surface(const DetKind& kind, const std::vector<double>& c_grid,
                                 const std::vector<double>& d_grid, double alpha, long long R,
                                 double dt, std::uint64_t seed, const TableBuildOptions& options) {
  check_grid(c_grid, "c");
  check_grid(d_grid, "d");
  const double critical = chi2_2_quantile(alpha);
  return sweep(c_grid, d_grid, options, [&](const Localization& loc) {
    return exceedance(simulate_cell(kind, loc, R, dt, seed, options.threads).sorted, critical);
  });
}

double lookup(const QuantileTable& table, const Localization& loc) {
  const auto& cg = table.c_grid;
  const auto& dg = table.d_grid;
  if (loc.c < cg.front()) throw RangeError("lookup: c=" + fmt17(loc.c) + " below c_min=" + fmt17(cg.front()));
  if (loc.c > cg.back()) throw RangeError("lookup: c=" + fmt17(loc.c) + " above c_max=" + fmt17(cg.back()));
  if (loc.d < dg.front()) throw RangeError("lookup: d=" + fmt17(loc.d) + " below d_min=" + fmt17(dg.front()));
  if (loc.d > dg.back()) throw RangeError("lookup: d=" + fmt17(loc.d) + " above d_max=" + fmt17(dg.back()));
  const auto [i, wc] = bracket(cg, loc.c);
  const auto [j, wd] = bracket(dg, loc.d);
  const std::size_t i1 = std::min(i + 1, cg.size() - 1);
  const std::size_t j1 = std::min(j + 1, dg.size() - 1);
  // Exact grid hits return the stored value untouched.
  if (wc == 0.0 && wd == 0.0) return table.at(i, j);
  const double q00 = table.at(i, j), q01 = table.at(i, j1);
  const double q10 = table.at(i1, j), q11 = table.at(i1, j1);
  return (1 - wc) * ((1 - wd) * q00 + wd * q01) + wc * ((1 - wd) * q10 + wd * q11);
}

void save_table(const QuantileTable& t, const std::filesystem::path& path) {
  std::string body = "c,d,quantile\n";
  for (std::size_t i = 0; i < t.c_grid.size(); ++i) {
    for (std::size_t j = 0; j < t.d_grid.size(); ++j) {
      body += fmt17(t.c_grid[i]) + "," + fmt17(t.d_grid[j]) + "," + fmt17(t.at(i, j)) + "\n";
    }
  }
  std::ostringstream head;
  head << "# schema=" << t.schema << "\n"
       << "# det_kind=" << t.det_kind.label() << "\n"
       << "# alpha=" << fmt17(t.alpha) << "\n"
       << "# R=" << t.replications << "\n"
       << "# dt=" << fmt17(t.dt) << "\n"
       << "# seed=" << t.seed << "\n"
       << "# crc32=" << crc_of(body) << "\n";
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw TableError("cannot write table file " + tmp.string());
    out << head.str() << body;
    if (!out) throw TableError("failed writing table file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

QuantileTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open table file " + path.string());
  std::map<std::string, std::string> meta;
  std::string line;
  static const char* const kKeys[] = {"schema", "det_kind", "alpha", "R", "dt", "seed", "crc32"};
  for (const char* key : kKeys) {
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
      throw TableError("table file " + path.string() + ": truncated header");
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(2, eq - 2) != key) {
      throw TableError("table file " + path.string() + ": expected header field '" + key + "'");
    }
    meta[key] = line.substr(eq + 1);
    if (std::string(key) == "schema" && meta[key] != std::to_string(kTableSchemaVersion)) {
      throw TableError("table file " + path.string() + ": unsupported schema version " + meta[key]);
    }
  }
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (std::to_string(crc_of(body)) != meta["crc32"]) {
    throw TableError("table file " + path.string() + ": checksum mismatch");
  }

  QuantileTable t;
  try {
    t.det_kind = parse_det_kind(meta["det_kind"]);
    t.alpha = std::stod(meta["alpha"]);
    t.replications = std::stoll(meta["R"]);
    t.dt = std::stod(meta["dt"]);
    t.seed = std::stoull(meta["seed"]);
  } catch (const std::exception& e) {
    throw TableError("table file " + path.string() + ": bad header value (" + e.what() + ")");
  }
  std::istringstream rows(body);
  if (!std::getline(rows, line) || line != "c,d,quantile") {
    throw TableError("table file " + path.string() + ": missing column header");
  }
  std::vector<std::array<double, 3>> cells;
  while (std::getline(rows, line)) {
    if (line.empty()) continue;
    std::array<double, 3> v{};
    std::istringstream ls(line);
    std::string field;
    for (auto& x : v) {
      if (!std::getline(ls, field, ',')) throw TableError("table file " + path.string() + ": short row");
      x = std::strtod(field.c_str(), nullptr);
    }
    cells.push_back(v);
  }
  if (cells.empty()) throw TableError("table file " + path.string() + ": no rows");
  for (const auto& v : cells) {
    if (v[0] != cells.front()[0]) break;
    t.d_grid.push_back(v[1]);
  }
  if (cells.size() % t.d_grid.size() != 0) {
    throw TableError("table file " + path.string() + ": incomplete grid");
  }
  for (std::size_t k = 0; k < cells.size(); k += t.d_grid.size()) t.c_grid.push_back(cells[k][0]);
  t.q.resize(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const std::size_t i = k / t.d_grid.size(), j = k % t.d_grid.size();
    if (cells[k][0] != t.c_grid[i] || cells[k][1] != t.d_grid[j]) {
      throw TableError("table file " + path.string() + ": rows out of grid order");
    }
    t.q[k] = cells[k][2];
  }
  return t;
}

std::filesystem::path table_cache_path(const std::filesystem::path& dir, const DetKind& kind,
                                       double alpha, const std::vector<double>& c_grid,
                                       const std::vector<double>& d_grid, long long R, double dt,
                                       std::uint64_t seed) {
  std::string grid;
  for (double v : c_grid) grid += fmt17(v) + ";";
  grid += "|";
  for (double v : d_grid) grid += fmt17(v) + ";";
  std::string label = kind.limit_kind().label();
  std::replace(label.begin(), label.end(), ':', '-');
  std::replace(label.begin(), label.end(), ',', '_');
  std::replace(label.begin(), label.end(), '+', 'p');
  char name[256];
  std::snprintf(name, sizeof name, "cv_%s_a%g_R%lld_dt%g_s%llu_g%08x.csv", label.c_str(), alpha, R, dt,
                static_cast<unsigned long long>(seed), crc_of(grid));
  return dir / name;
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& explicit_dir) {
  if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
  if (const char* env = std::getenv("LONGCYCLE_CACHE_DIR"); env && *env) return env;
  return ".longcycle-cache";
}

}  // namespace longcycle
