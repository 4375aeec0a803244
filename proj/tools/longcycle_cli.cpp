// longcycle: command-line front end.
//
// Exit codes: 0 success, 2 usage, 3 data error, 4 cache/table error,
// 5 numerical failure.

#include "longcycle/core_model.hpp"
#include "longcycle/deterministic.hpp"
#include "longcycle/dgp.hpp"
#include "longcycle/errors.hpp"
#include "longcycle/estimation.hpp"
#include "longcycle/inference.hpp"
#include "longcycle/io.hpp"
#include "longcycle/parallel.hpp"
#include "longcycle/quantile_table.hpp"
#include "longcycle/spectral.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace longcycle;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kCache = 4, kNumeric = 5 };

constexpr long long kDefaultReps = 100000;
constexpr long long kFastReps = 20000;

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Globals {
  std::uint64_t seed = 20240101;
  int threads = 0;
  std::optional<std::string> cache_dir;
  double alpha = 0.05;
  std::optional<std::string> grid;
  double dt = 0.01;
  std::optional<long long> reps;
  bool fast = false;
  bool log = false;
  int period = -1;

  long long replications() const { return reps.value_or(fast ? kFastReps : kDefaultReps); }
  int thread_count() const { return threads > 0 ? threads : default_threads(); }

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("--alpha must lie in (0, 1)");
    if (!(dt > 0.0 && dt <= 0.05)) throw std::invalid_argument("--dt must lie in (0, 0.05]");
    if (reps && *reps < 1) throw std::invalid_argument("--reps must be >= 1");
    if (threads < 0) throw std::invalid_argument("--threads must be >= 0");
  }

  // One comment line that reproduces the run.
  std::string header(const std::string& command) const {
    std::ostringstream s;
    s << "# longcycle " << command << " seed=" << seed << " alpha=" << shortest(alpha)
      << " dt=" << shortest(dt) << " reps=" << replications();
    if (grid) s << " grid=" << *grid;
    if (log) s << " log=1";
    if (period >= 0) s << " period=" << period;
    return s.str();
  }
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string interval_text(const CycleInterval& iv) {
  if (iv.empty) return "∅";
  return "(" + fmt(iv.lower, 4) + ", " + (iv.unbounded ? std::string("inf") : fmt(iv.upper, 4)) + ")";
}

std::string interval_status(const CycleInterval& iv) {
  if (iv.empty) return "empty";
  return iv.unbounded ? "unbounded" : "bounded";
}

GridSpec grid_for(const Globals& g, int n) {
  GridSpec spec = g.grid ? parse_grid_spec(*g.grid) : GridSpec::defaults(n);
  spec.validate(n);
  return spec;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string csv;
  std::string out = "longcycle-out";
  int max_lags = 4;
  int horizon = -1;
};

int cmd_analyze(const Globals& g, const AnalyzeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  DatedSeries data = read_series_csv(fs::path(a.csv));
  std::vector<double> y = data.series.values;
  const int n = static_cast<int>(y.size());
  if (n < 40) throw DataError(a.csv + ": need at least 40 observations, got " + std::to_string(n));
  if (g.log) y = log_transform(y);
  const int period = g.period >= 0 ? g.period : infer_period(data.dates);
  if (a.max_lags < 0) throw UsageError("--max-lags must be >= 0");

  const BicChoice choice = bic_select(y, default_bic_candidates(period), a.max_lags);
  const GridSpec spec = grid_for(g, n);
  const Grid grid = make_grid(spec);
  const DetKind table_kind = choice.kind.limit_kind();
  const fs::path cache = resolve_cache_dir(g.cache_dir);
  const fs::path table_path = table_cache_path(cache, table_kind, g.alpha, grid.c, grid.d,
                                               g.replications(), g.dt, g.seed);
  if (!fs::exists(table_path)) {
    std::ostringstream msg;
    msg << "no critical-value table for det_kind=" << table_kind.label() << " at " << table_path.string()
        << "\nbuild it with:\n  longcycle cv-table --det-kind " << table_kind.label() << " --n " << n
        << " --alpha " << shortest(g.alpha) << " --reps " << g.replications() << " --dt "
        << shortest(g.dt) << " --seed " << g.seed;
    if (g.grid) msg << " --grid " << *g.grid;
    if (g.cache_dir) msg << " --cache-dir " << *g.cache_dir;
    throw TableError(msg.str());
  }
  const QuantileTable table = load_table(table_path);

  const ConfidenceSet cs =
      confidence_set(y, choice.kind, choice.p, grid, g.alpha, table_source(table), g.thread_count());
  const CycleInterval theta = project_tau_theta(cs).in_periods(n);
  const CycleInterval omega = project_tau_omega(cs).in_periods(n);
  const auto point = point_estimate(y, choice.kind);
  const FitResult fit = fit_ar2(y, choice.kind);

  const fs::path out = prepare_dir(a.out);
  const std::string head = g.header("analyze") + " csv=" + a.csv + " det_kind=" + choice.kind.label() +
                           " p=" + std::to_string(choice.p);
  {
    auto f = open_out(out / "confidence_set.csv");
    f << head << "\nc,d,phi1_0,phi2_0,wald,critical,accepted,diagnostic\n";
    for (const auto& pt : cs.points) {
      f << format_double(pt.c) << ',' << format_double(pt.d) << ',' << format_double(pt.phi1_0) << ','
        << format_double(pt.phi2_0) << ',' << format_double(pt.wald) << ',' << format_double(pt.critical)
        << ',' << (pt.accepted ? 1 : 0) << ',' << pt.diagnostic << '\n';
    }
  }
  {
    auto f = open_out(out / "intervals.csv");
    f << head << "\nmeasure,point,lower,upper,status\n";
    auto row = [&](const char* name, std::optional<double> pt, const CycleInterval& iv) {
      f << name << ',' << (pt ? format_double(*pt) : "---") << ',';
      if (iv.empty) {
        f << ",,";
      } else {
        f << format_double(iv.lower) << ',' << (iv.unbounded ? "inf" : format_double(iv.upper)) << ',';
      }
      f << interval_status(iv) << '\n';
    };
    std::optional<double> pt_theta, pt_omega;
    if (point) {
      pt_theta = point->measures.tau_theta * n;
      if (point->measures.tau_omega && !point->measures.tau_omega_unbounded) {
        pt_omega = *point->measures.tau_omega * n;
      }
    }
    row("tau_theta", pt_theta, theta);
    row("tau_omega", pt_omega, omega);
  }
  const int horizon = a.horizon >= 0 ? a.horizon : n;
  const double scale = std::sqrt(fit.sigma2_u_hat);
  {
    auto f = open_out(out / "irf.csv");
    f << head << " shock_sd=" << format_double(scale) << "\nc,d,horizon,response\n";
    for (const auto& pt : cs.accepted()) {
      const auto w = irf_weights({pt.c, pt.d}, n, horizon);
      for (int j = 0; j <= horizon; ++j) {
        f << format_double(pt.c) << ',' << format_double(pt.d) << ',' << j << ','
          << format_double(scale * w[j]) << '\n';
      }
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream r;
  r << "series        " << (data.series.name.empty() ? a.csv : data.series.name) << "\n"
    << "n             " << n << "\n"
    << "det_kind      " << choice.kind.label() << " (constant=" << choice.kind.constant
    << " trend=" << choice.kind.trend << " cycles=" << choice.kind.cycles.size()
    << " seasonal=" << choice.kind.seasonal_period << ")\n"
    << "autocorr      " << (choice.p > 0 ? "yes" : "no") << " (p=" << choice.p << ")\n";
  if (point) {
    r << "point (c,d)   (" << fmt(point->loc.c, 4) << ", " << fmt(point->loc.d, 4) << ")\n";
    r << "tau_theta     " << fmt(point->measures.tau_theta * n, 4) << "  " << interval_text(theta) << "\n";
    r << "tau_omega     ";
    if (point->measures.tau_omega_unbounded) {
      r << "inf";
    } else if (point->measures.tau_omega) {
      r << fmt(*point->measures.tau_omega * n, 4);
    } else {
      r << "---";
    }
    r << "  " << interval_text(omega) << "\n";
  } else {
    r << "point (c,d)   ---\n"
      << "tau_theta     ---  " << interval_text(theta) << "\n"
      << "tau_omega     ---  " << interval_text(omega) << "\n";
  }
  r << "accepted      " << cs.accepted().size() << " of " << cs.points.size() << " grid points\n"
    << "grid          c[" << fmt(grid.c.front()) << ", " << fmt(grid.c.back()) << "] x " << grid.c.size()
    << ", d[" << fmt(grid.d.front()) << ", " << fmt(grid.d.back()) << "] x " << grid.d.size() << "\n"
    << "table         " << table_path.string() << " (R=" << table.replications << ", dt=" << table.dt
    << ", alpha=" << table.alpha << ")\n"
    << "runtime       " << fmt(seconds, 3) << " s\n";
  std::cout << r.str();
  auto f = open_out(out / "report.txt");
  f << head << "\n" << r.str();
  return kOk;
}

// ---------------------------------------------------------------- size-table

struct SizeArgs {
  std::string out = "longcycle-out";
  std::vector<double> c = {-1.0, -5.0, -10.0, -50.0};
  std::vector<double> d = {5.0, 10.0, 15.0, 50.0, 100.0, 200.0};
};

int cmd_size_table(const Globals& g, const SizeArgs& a) {
  std::vector<double> cg = a.c, dg = a.d;
  if (g.grid) {
    const Grid grid = make_grid(grid_for(g, std::numeric_limits<int>::max() / 4));
    cg = grid.c;
    dg = grid.d;
  }
  std::sort(cg.begin(), cg.end());
  std::sort(dg.begin(), dg.end());
  for (double c : cg) {
    if (c > 0.0) throw UsageError("size-table: c values must be <= 0");
  }
  for (double d : dg) {
    if (d < 0.1) throw UsageError("size-table: d values must be >= 0.1");
  }
  const fs::path out = prepare_dir(a.out);
  TableBuildOptions opt;
  opt.threads = g.thread_count();
  for (const DetKind& kind : {DetKind::mean(), DetKind::linear_trend(), DetKind::deterministic_cycles({1})}) {
    const auto size = size_surface(kind, cg, dg, g.alpha, g.replications(), g.dt, g.seed, opt);
    const fs::path path = out / ("size_" + kind.label() + ".csv");
    auto f = open_out(path);
    f << g.header("size-table") << " det_kind=" << kind.label() << "\n";
    f << "c\\d";
    for (double d : dg) f << ',' << format_double(d);
    f << "\ntau_theta = 2pi/d";
    for (double d : dg) f << ',' << format_double(2.0 * std::numbers::pi / d);
    f << '\n';
    for (std::size_t i = 0; i < cg.size(); ++i) {
      f << format_double(cg[i]);
      for (std::size_t j = 0; j < dg.size(); ++j) f << ',' << format_double(size[i * dg.size() + j]);
      f << '\n';
    }
    std::cerr << "wrote " << path.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- cv-table

struct CvArgs {
  std::string det_kind = "constant";
  int n = 200;
  long long stop_after = -1;
};

std::map<std::pair<std::size_t, std::size_t>, double> read_checkpoint(const fs::path& path) {
  std::map<std::pair<std::size_t, std::size_t>, double> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i, j;
    double v;
    char c1, c2;
    std::istringstream s(line);
    // A torn final line from an interrupted write simply fails to parse.
    if (s >> i >> c1 >> j >> c2 >> v && c1 == ',' && c2 == ',') done[{i, j}] = v;
  }
  return done;
}

int cmd_cv_table(const Globals& g, const CvArgs& a) {
  const DetKind kind = parse_det_kind(a.det_kind).limit_kind();
  if (a.n < 12) throw UsageError("--n must be >= 12");
  const Grid grid = make_grid(grid_for(g, a.n));
  const fs::path cache = resolve_cache_dir(g.cache_dir);
  fs::create_directories(cache);
  const long long R = g.replications();
  const fs::path path = table_cache_path(cache, kind, g.alpha, grid.c, grid.d, R, g.dt, g.seed);
  if (fs::exists(path)) {
    load_table(path);
    std::cout << path.string() << "\n";
    std::cerr << "table already cached\n";
    return kOk;
  }
  const fs::path ckpt = fs::path(path.string() + ".ckpt");
  const auto done = read_checkpoint(ckpt);
  const std::size_t total = grid.c.size() * grid.d.size();
  if (!done.empty()) std::cerr << "resuming: " << done.size() << " of " << total << " cells in checkpoint\n";

  std::ofstream log(ckpt, std::ios::app);
  if (!log) throw TableError("cannot open checkpoint " + ckpt.string());
  long long fresh = 0;
  std::size_t finished = done.size();
  struct Interrupted {};
  TableBuildOptions opt;
  opt.threads = g.thread_count();
  opt.resume = [&](std::size_t i, std::size_t j) -> std::optional<double> {
    const auto it = done.find({i, j});
    if (it != done.end()) return it->second;
    if (a.stop_after >= 0 && fresh >= a.stop_after) throw Interrupted{};
    return std::nullopt;
  };
  opt.on_cell = [&](std::size_t i, std::size_t j, double v) {
    if (done.count({i, j})) return;
    log << i << ',' << j << ',' << format_double(v) << '\n' << std::flush;
    ++fresh;
    ++finished;
    std::cerr << "\rcell " << finished << "/" << total << std::flush;
  };
  QuantileTable table;
  try {
    table = build_table(kind, g.alpha, grid.c, grid.d, R, g.dt, g.seed, opt);
  } catch (const Interrupted&) {
    std::cerr << "\nstopped after " << fresh << " new cells; rerun to resume from " << ckpt.string() << "\n";
    return kOk;
  }
  std::cerr << "\n";
  log.close();
  save_table(table, path);
  fs::remove(ckpt);
  std::cout << path.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- simulate / irf / spectrum

struct SimArgs {
  double c = -5.0, d = 20.0;
  int n = 200;
  int anchor_n = 0;
  double sigma = 1.0;
  double rho = 0.0;
  double mu = 0.0;
  std::string out = "-";
};

void write_to(const std::string& target, const std::function<void(std::ostream&)>& fn) {
  if (target == "-") {
    fn(std::cout);
    return;
  }
  const fs::path p(target);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  auto f = open_out(p);
  fn(f);
}

int cmd_simulate(const Globals& g, const SimArgs& a) {
  const Localization loc{a.c, a.d};
  if (!loc.valid()) throw UsageError("simulate: need c <= 0 and d > 0");
  if (a.n < 3) throw UsageError("simulate: --n must be >= 3");
  const InnovationSpec innov =
      a.rho == 0.0 ? InnovationSpec::iid(a.sigma) : InnovationSpec::autoregressive({a.rho}, a.sigma);
  innov.validate();
  DetSpec det{a.mu != 0.0 ? DetKind::mean() : DetKind::none()};
  det.mu = a.mu;
  Series s = a.anchor_n > 0 ? simulate_fixed_ar2(phi_from_cd(loc, a.anchor_n), a.n, det, innov, g.seed)
                            : simulate_long_cycle(loc, a.n, det, innov, g.seed);
  DatedSeries data{{}, std::move(s)};
  write_to(a.out, [&](std::ostream& o) {
    o << g.header("simulate") << " c=" << format_double(a.c) << " d=" << format_double(a.d)
      << " n=" << a.n << " anchor_n=" << a.anchor_n << " sigma=" << format_double(a.sigma)
      << " rho=" << format_double(a.rho) << " mu=" << format_double(a.mu) << "\n";
    write_series_csv(o, data);
  });
  return kOk;
}

struct IrfArgs {
  double c = -5.0, d = 20.0;
  int n = 200;
  int horizon = 100;
  double scale = 1.0;
  std::string out = "-";
};

int cmd_irf(const Globals& g, const IrfArgs& a) {
  if (a.horizon < 0) throw UsageError("irf: --horizon must be >= 0");
  if (!(a.scale > 0.0)) throw UsageError("irf: --scale must be > 0");
  const auto w = irf_weights({a.c, a.d}, a.n, a.horizon);
  write_to(a.out, [&](std::ostream& o) {
    o << g.header("irf") << " c=" << format_double(a.c) << " d=" << format_double(a.d) << " n=" << a.n
      << " scale=" << format_double(a.scale) << "\nhorizon,weight,response\n";
    for (int j = 0; j <= a.horizon; ++j) {
      o << j << ',' << format_double(w[j]) << ',' << format_double(a.scale * w[j]) << '\n';
    }
  });
  return kOk;
}

struct SpectrumArgs {
  double c = -4.0, d = 10.0;
  int n = 200;
  double h_max = 30.0;
  int points = 300;
  std::string out = "-";
};

int cmd_spectrum(const Globals& g, const SpectrumArgs& a) {
  const Localization loc{-std::abs(a.c), a.d};
  if (!(a.d > 0.0) || a.c == 0.0) throw UsageError("spectrum: need |c| > 0 and d > 0");
  if (a.points < 2 || !(a.h_max > 0.0)) throw UsageError("spectrum: need --points >= 2 and --h-max > 0");
  std::vector<double> hs, ws;
  for (int k = 1; k <= a.points; ++k) {
    hs.push_back(a.h_max * k / a.points);
    ws.push_back(hs.back() / a.n);
  }
  const auto limit = expected_periodogram_limit(loc, 1.0, hs);
  const auto truth = theoretical_spectrum(loc, a.n, 1.0, ws);
  const double n4 = std::pow(static_cast<double>(a.n), 4);
  const double h_limit = expected_periodogram_limit_peak(loc);
  const double tau_limit = 2.0 * std::numbers::pi / h_limit;
  const double tau_true = cycle_measures(loc).tau_omega.value_or(std::nan(""));
  write_to(a.out, [&](std::ostream& o) {
    o << g.header("spectrum") << " c=" << format_double(a.c) << " d=" << format_double(a.d)
      << " n=" << a.n << "\n# peak_limit_h=" << format_double(h_limit)
      << " tau_omega_limit=" << format_double(tau_limit) << " tau_omega_true=" << format_double(tau_true)
      << "\nh,expected_limit,theoretical\n";
    for (std::size_t k = 0; k < hs.size(); ++k) {
      o << format_double(hs[k]) << ',' << format_double(limit.values[k]) << ','
        << format_double(truth.values[k] / n4) << '\n';
    }
  });
  std::cerr << "tau_omega from expected periodogram limit: " << fmt(tau_limit, 4)
            << "\ntau_omega from true spectrum:              " << fmt(tau_true, 4)
            << "\nbias at n=" << a.n << ": " << fmt((tau_limit - tau_true) * a.n, 4) << " periods\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-cycle inference: localized AR(2) cycles, confidence sets for cycle length"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = available parallelism)");
  app.add_option("--cache-dir", g.cache_dir, "Critical-value cache (default $LONGCYCLE_CACHE_DIR or .longcycle-cache)");
  app.add_option("--alpha", g.alpha, "Test level");
  app.add_option("--grid", g.grid, "c:<min>:<pts>:<spacing>,d:<min>:<max>:<pts>:<spacing>");
  app.add_option("--dt", g.dt, "Euler step for limit simulations");
  app.add_option("--reps", g.reps, "Monte Carlo replications per cell");
  app.add_flag("--fast", g.fast, "Use R = 20000 unless --reps is given");
  app.add_flag("--log", g.log, "Take natural logs of the input series");
  app.add_option("--period", g.period, "Seasonal period (0 = none; default inferred from dates)");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Confidence sets for cycle length from a date,value CSV");
  an->add_option("csv", analyze.csv, "Input CSV")->required();
  an->add_option("--out", analyze.out, "Output directory");
  an->add_option("--max-lags", analyze.max_lags, "Extra AR lags considered by the BIC");
  an->add_option("--horizon", analyze.horizon, "IRF horizon (default n)");

  SizeArgs size;
  auto* sz = app.add_subcommand("size-table", "Asymptotic size of the chi-squared Wald test");
  sz->add_option("--out", size.out, "Output directory");
  sz->add_option("--c", size.c, "c values")->delimiter(',');
  sz->add_option("--d", size.d, "d values")->delimiter(',');

  CvArgs cv;
  auto* cvt = app.add_subcommand("cv-table", "Build and cache a critical-value table");
  cvt->add_option("--det-kind", cv.det_kind, "constant, trend, cycles:1,2, none ...");
  cvt->add_option("--n", cv.n, "Sample size that fixes the default grid");
  cvt->add_option("--stop-after", cv.stop_after, "Stop after this many new cells (checkpoint kept)");

  SimArgs sim;
  auto* sm = app.add_subcommand("simulate", "Simulate a long-cycle or fixed-coefficient AR(2) series");
  sm->add_option("--c", sim.c);
  sm->add_option("--d", sim.d);
  sm->add_option("--n", sim.n);
  sm->add_option("--anchor-n", sim.anchor_n, "Hold coefficients fixed at their value for this n");
  sm->add_option("--sigma", sim.sigma, "Innovation standard deviation");
  sm->add_option("--rho", sim.rho, "AR(1) coefficient of the innovations");
  sm->add_option("--mu", sim.mu, "Constant mean");
  sm->add_option("--out", sim.out, "Output file (- for stdout)");

  IrfArgs irf;
  auto* ir = app.add_subcommand("irf", "Impulse responses of the long-cycle AR(2)");
  ir->add_option("--c", irf.c);
  ir->add_option("--d", irf.d);
  ir->add_option("--n", irf.n);
  ir->add_option("--horizon", irf.horizon);
  ir->add_option("--scale", irf.scale, "Shock size (innovation standard deviation)");
  ir->add_option("--out", irf.out, "Output file (- for stdout)");

  SpectrumArgs spec;
  auto* sp = app.add_subcommand("spectrum", "Expected periodogram limit and true spectrum");
  sp->add_option("--c", spec.c);
  sp->add_option("--d", spec.d);
  sp->add_option("--n", spec.n, "Sample size for the true spectrum");
  sp->add_option("--h-max", spec.h_max);
  sp->add_option("--points", spec.points);
  sp->add_option("--out", spec.out, "Output file (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    g.validate();
    if (an->parsed()) return cmd_analyze(g, analyze);
    if (sz->parsed()) return cmd_size_table(g, size);
    if (cvt->parsed()) return cmd_cv_table(g, cv);
    if (sm->parsed()) return cmd_simulate(g, sim);
    if (ir->parsed()) return cmd_irf(g, irf);
    if (sp->parsed()) return cmd_spectrum(g, spec);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const TableError& e) {
    std::cerr << "table error: " << e.what() << "\n";
    return kCache;
  } catch (const RangeError& e) {
    std::cerr << "table error: " << e.what() << "\n";
    return kCache;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularMatrixError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
