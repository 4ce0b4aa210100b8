// squeezeflow: drives the oscillator flow through the spectral collapse and
// reports squeezing observables against the closed-form asymptotics.
//
// Subcommands: simulate, trajectory, spectrum-fan, lz-compare, geometry-check.
// Exit codes: 0 ok, 2 numeric failure, 3 config error, 4 I/O error.

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqz/bogoliubov.hpp"
#include "sqz/flow.hpp"
#include "sqz/geometry.hpp"
#include "sqz/squeezed.hpp"
#include "sqz/version.hpp"
#include "sqz/weber.hpp"

namespace {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double alpha = 1.0;
  double g = 0.0;
  double t_start = -40.0;
  double t_end = 40.0;
  double tol = 1e-10;
  int n_max = 400;
  int grid = 601;
  int jobs = 1;
  std::string format = "csv";
  std::string out;
  std::vector<double> delta_sq = {0.25, 0.5, 1.0, 2.0, 3.0};
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

// ---------------------------------------------------------------------------
// option wiring: defaults < config file < explicit flags

struct OptionSpec {
  CLI::App* cmd = nullptr;
  std::string config_path;
  Options flags;  // values as parsed from the command line
};

OptionSpec add_common_options(CLI::App* cmd, const Options& defaults) {
  OptionSpec spec;
  spec.cmd = cmd;
  spec.flags = defaults;
  cmd->add_option("--alpha", spec.flags.alpha, "Angular acceleration (> 0)");
  cmd->add_option("--g", spec.flags.g, "Gap of the frequency profile (>= 0)");
  cmd->add_option("--t-start", spec.flags.t_start, "Start of the time interval");
  cmd->add_option("--t-end", spec.flags.t_end, "End of the time interval");
  cmd->add_option("--tol", spec.flags.tol,
                  "Local integration error target, in (0, 1e-3]");
  cmd->add_option("--n-max", spec.flags.n_max,
                  "Occupation cutoff; level count for spectrum-fan; "
                  "max modes for geometry-check");
  cmd->add_option("--grid", spec.flags.grid, "Number of grid samples");
  cmd->add_option("--jobs", spec.flags.jobs,
                  "Worker threads for sweeps (default: $SQUEEZEFLOW_JOBS or 1)");
  cmd->add_option("--format", spec.flags.format, "Output format: csv or json");
  cmd->add_option("--out", spec.flags.out, "Output path (default: stdout)");
  cmd->add_option("--config", spec.config_path,
                  "Flat key-value JSON config; flags override file values");
  return spec;
}

void apply_config_file(const json& cfg, const char* key, double& slot) {
  if (!cfg.contains(key)) return;
  if (!cfg[key].is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  slot = cfg[key].get<double>();
}

void apply_config_file(const json& cfg, const char* key, int& slot) {
  if (!cfg.contains(key)) return;
  if (!cfg[key].is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  slot = cfg[key].get<int>();
}

void apply_config_file(const json& cfg, const char* key, std::string& slot) {
  if (!cfg.contains(key)) return;
  if (!cfg[key].is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  slot = cfg[key].get<std::string>();
}

void apply_config_file(const json& cfg, const char* key, std::vector<double>& slot) {
  if (!cfg.contains(key)) return;
  if (!cfg[key].is_array()) throw ConfigError(std::string("config key '") + key + "' must be an array");
  slot = cfg[key].get<std::vector<double>>();
}

/// Resolve the option layering for one subcommand:
/// compiled defaults < $SQUEEZEFLOW_JOBS < config file < explicit flags.
Options resolve(const OptionSpec& spec, const Options& defaults) {
  Options opt = defaults;

  if (const char* env = std::getenv("SQUEEZEFLOW_JOBS"); env != nullptr)
    opt.jobs = std::atoi(env);  // validated after config and flags get their say

  if (!spec.config_path.empty()) {
    std::ifstream in(spec.config_path);
    if (!in) throw ConfigError("cannot open config file " + spec.config_path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
    apply_config_file(cfg, "alpha", opt.alpha);
    apply_config_file(cfg, "g", opt.g);
    apply_config_file(cfg, "t_start", opt.t_start);
    apply_config_file(cfg, "t_end", opt.t_end);
    apply_config_file(cfg, "tol", opt.tol);
    apply_config_file(cfg, "n_max", opt.n_max);
    apply_config_file(cfg, "grid", opt.grid);
    apply_config_file(cfg, "jobs", opt.jobs);
    apply_config_file(cfg, "format", opt.format);
    apply_config_file(cfg, "out", opt.out);
    apply_config_file(cfg, "delta_sq", opt.delta_sq);
  }

  auto take_if_set = [&](const char* name, auto member) {
    if (spec.cmd->count(name) > 0) opt.*member = spec.flags.*member;
  };
  take_if_set("--alpha", &Options::alpha);
  take_if_set("--g", &Options::g);
  take_if_set("--t-start", &Options::t_start);
  take_if_set("--t-end", &Options::t_end);
  take_if_set("--tol", &Options::tol);
  take_if_set("--n-max", &Options::n_max);
  take_if_set("--grid", &Options::grid);
  take_if_set("--jobs", &Options::jobs);
  take_if_set("--format", &Options::format);
  take_if_set("--out", &Options::out);

  if (!(opt.alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(opt.g >= 0.0)) throw ConfigError("g must be >= 0");
  if (!(opt.t_start < opt.t_end)) throw ConfigError("t_start must be < t_end");
  if (!(opt.tol > 0.0 && opt.tol <= 1e-3)) throw ConfigError("tol must lie in (0, 1e-3]");
  if (opt.n_max < 0) throw ConfigError("n_max must be >= 0");
  if (opt.grid < 1) throw ConfigError("grid must be >= 1");
  if (opt.jobs < 1) throw ConfigError("jobs (or SQUEEZEFLOW_JOBS) must be >= 1");
  if (opt.format != "csv" && opt.format != "json")
    throw ConfigError("format must be csv or json");
  return opt;
}

// ---------------------------------------------------------------------------
// output plumbing

void write_text(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw IoError("cannot open output file " + opt.out);
  f << text;
  f.flush();
  if (!f) throw IoError("write failed on " + opt.out);
}

json config_echo(const Options& opt) {
  json cfg;
  cfg["alpha"] = opt.alpha;
  cfg["g"] = opt.g;
  cfg["t_start"] = opt.t_start;
  cfg["t_end"] = opt.t_end;
  cfg["tol"] = opt.tol;
  cfg["n_max"] = opt.n_max;
  cfg["grid"] = opt.grid;
  return cfg;
}

std::string csv_preamble(const char* subcommand, const Options& opt) {
  std::ostringstream out;
  out << "# squeezeflow " << sqz::kVersion << "\n";
  out << "# subcommand=" << subcommand << " alpha=" << fmt(opt.alpha)
      << " g=" << fmt(opt.g) << " t_start=" << fmt(opt.t_start)
      << " t_end=" << fmt(opt.t_end) << " tol=" << fmt(opt.tol)
      << " n_max=" << opt.n_max << " grid=" << opt.grid << "\n";
  return out.str();
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string render_table(const char* subcommand, const Options& opt, const Table& table) {
  if (opt.format == "json") {
    json doc;
    doc["version"] = sqz::kVersion;
    doc["subcommand"] = subcommand;
    doc["config"] = config_echo(opt);
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r;
      for (size_t c = 0; c < table.columns.size(); ++c) r[table.columns[c]] = row[c];
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << csv_preamble(subcommand, opt);
  for (size_t c = 0; c < table.columns.size(); ++c)
    out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      out << fmt(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
  return out.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<size_t>(n));
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double dx = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = lo + i * dx;
  xs.back() = hi;
  return xs;
}

// ---------------------------------------------------------------------------
// subcommands

struct SimulateResult {
  double tanh_r, theta, fidelity;
  double cf_tanh_r, cf_fidelity;
  std::vector<double> probs;
};

SimulateResult simulate_once(const Options& opt) {
  const sqz::flow::FrequencyProfile profile{opt.alpha, opt.g};
  const auto phi =
      sqz::flow::propagator(profile, opt.t_start, opt.t_end, opt.tol);
  const auto sq = sqz::flow::squeeze_of_vacuum(phi);
  const auto closed = sqz::weber::asymptotic_squeeze(profile.delta_sq());
  SimulateResult res;
  res.tanh_r = std::tanh(sq.r);
  res.theta = sq.theta;
  res.fidelity = sqz::squeezed::fidelity(sq);
  res.cf_tanh_r = closed.tanh_r;
  res.cf_fidelity = std::sqrt(1.0 - closed.tanh_r * closed.tanh_r);
  res.probs = sqz::squeezed::occupation_probs(sq, opt.n_max).probs;
  return res;
}

int run_simulate(const Options& opt) {
  const SimulateResult res = simulate_once(opt);
  if (opt.format == "json") {
    json doc;
    doc["version"] = sqz::kVersion;
    doc["subcommand"] = "simulate";
    doc["config"] = config_echo(opt);
    doc["tanh_r"] = res.tanh_r;
    doc["theta"] = res.theta;
    doc["fidelity"] = res.fidelity;
    doc["closed_form_tanh_r"] = res.cf_tanh_r;
    doc["closed_form_fidelity"] = res.cf_fidelity;
    doc["abs_err_tanh_r"] = std::fabs(res.tanh_r - res.cf_tanh_r);
    doc["abs_err_fidelity"] = std::fabs(res.fidelity - res.cf_fidelity);
    doc["probabilities"] = res.probs;
    write_text(opt, doc.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  out << csv_preamble("simulate", opt);
  out << "field,value\n";
  out << "alpha," << fmt(opt.alpha) << "\n";
  out << "g," << fmt(opt.g) << "\n";
  out << "t_start," << fmt(opt.t_start) << "\n";
  out << "t_end," << fmt(opt.t_end) << "\n";
  out << "tol," << fmt(opt.tol) << "\n";
  out << "n_max," << opt.n_max << "\n";
  out << "tanh_r," << fmt(res.tanh_r) << "\n";
  out << "theta," << fmt(res.theta) << "\n";
  out << "fidelity," << fmt(res.fidelity) << "\n";
  out << "closed_form_tanh_r," << fmt(res.cf_tanh_r) << "\n";
  out << "closed_form_fidelity," << fmt(res.cf_fidelity) << "\n";
  out << "abs_err_tanh_r," << fmt(std::fabs(res.tanh_r - res.cf_tanh_r)) << "\n";
  out << "abs_err_fidelity," << fmt(std::fabs(res.fidelity - res.cf_fidelity)) << "\n";
  for (size_t n = 0; n < res.probs.size(); ++n)
    out << "p_" << n << "," << fmt(res.probs[n]) << "\n";
  write_text(opt, out.str());
  return kExitOk;
}

int run_trajectory(const Options& opt) {
  const sqz::flow::FrequencyProfile profile{opt.alpha, opt.g};
  const auto grid = linspace(opt.t_start, opt.t_end, opt.grid);
  const auto points = sqz::flow::instantaneous_trajectory(profile, grid, opt.tol);
  Table table;
  table.columns = {"t", "re_z", "im_z", "re_w", "im_w", "tanh_r"};
  table.rows.reserve(points.size());
  for (const auto& p : points)
    table.rows.push_back(
        {p.t, p.z.real(), p.z.imag(), p.w.real(), p.w.imag(), std::abs(p.z)});
  write_text(opt, render_table("trajectory", opt, table));
  return kExitOk;
}

int run_spectrum_fan(const Options& opt) {
  const int n_levels = opt.n_max;
  if (n_levels < 1) throw ConfigError("spectrum-fan needs n_max >= 1 levels");
  const sqz::flow::FrequencyProfile profile{opt.alpha, opt.g};
  Table table;
  table.columns = {"t", "n", "energy"};
  for (double t : linspace(opt.t_start, opt.t_end, opt.grid)) {
    const double w = profile.omega(t);
    for (int n = 0; n < n_levels; ++n)
      table.rows.push_back({t, static_cast<double>(n), (n + 0.5) * w});
  }
  write_text(opt, render_table("spectrum-fan", opt, table));
  return kExitOk;
}

int run_lz_compare(const Options& opt) {
  if (opt.delta_sq.empty()) throw ConfigError("lz-compare needs a non-empty delta_sq grid");
  for (double d : opt.delta_sq)
    if (d < 0.0) throw ConfigError("delta_sq entries must be >= 0");
  std::vector<double> grid = opt.delta_sq;
  std::sort(grid.begin(), grid.end());

  std::vector<std::vector<double>> rows(grid.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < grid.size();) {
      try {
        const double d2 = grid[i];
        Options local = opt;
        local.g = std::sqrt(d2 * opt.alpha);
        const sqz::flow::FrequencyProfile profile{local.alpha, local.g};
        const auto phi =
            sqz::flow::propagator(profile, local.t_start, local.t_end, local.tol);
        const auto sq = sqz::flow::squeeze_of_vacuum(phi);
        const double one_minus_p0 = 1.0 - sqz::squeezed::fidelity(sq);
        const double asym = 0.5 * std::exp(-std::numbers::pi * d2);
        const double lz = std::exp(-0.5 * std::numbers::pi * d2);
        rows[i] = {d2, one_minus_p0, asym, lz};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int jobs = std::min<int>(opt.jobs, static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  Table table;
  table.columns = {"delta_sq", "one_minus_p0", "paper_asymptote", "landau_zener"};
  table.rows = std::move(rows);
  write_text(opt, render_table("lz-compare", opt, table));
  return kExitOk;
}

int run_geometry_check(const Options& opt) {
  namespace bog = sqz::bogoliubov;
  namespace geo = sqz::geometry;
  std::mt19937_64 rng(0x5eedf10bULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> modes(1, std::max(1, opt.n_max));

  auto random_symmetric = [&](int n, double scale) {
    bog::Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(unit(rng), unit(rng));
    m = (0.5 * (m + m.transpose())).eval();
    return bog::Matrix(m * scale);
  };

  Table table;
  table.columns = {"index", "modes", "fd_residual", "two_route_error", "curvature_error"};
  for (int k = 0; k < opt.grid; ++k) {
    const int n = modes(rng);
    bog::Matrix z = random_symmetric(n, 1.0);
    z *= 0.6 / std::max(1.0, z.jacobiSvd().singularValues()(0));
    const bog::Matrix t1 = random_symmetric(n, 1.0);
    const bog::Matrix t2 = random_symmetric(n, 1.0);
    const geo::TangentPair tp{bog::ZMatrix{z}, t1, t2};
    const double fd = geo::fd_check(tp.Z, t1, t2, 1e-4);
    const double two_route =
        std::abs(geo::hermitian_form(tp) - geo::hermitian_form_via_u(tp));
    const Complex zc = 0.8 * Complex(unit(rng), unit(rng)) / std::numbers::sqrt2;
    // numeric Laplacian of log g against the closed-form curvature
    const double h = 1e-4;
    auto logg = [&](Complex w) { return std::log(geo::disk_tensors(w).g_coeff); };
    const double lap =
        (logg(zc + h) + logg(zc - h) + logg(zc + Complex(0, h)) + logg(zc - Complex(0, h)) -
         4.0 * logg(zc)) /
        (h * h);
    const double curv_fd = -0.5 * lap / geo::disk_tensors(zc).g_coeff;
    const double curv_err = std::fabs(curv_fd - geo::gaussian_curvature_disk(zc));
    table.rows.push_back(
        {static_cast<double>(k), static_cast<double>(n), fd, two_route, curv_err});
  }
  write_text(opt, render_table("geometry-check", opt, table));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven-oscillator squeezing toolkit"};
  app.require_subcommand(1);

  Options sim_defaults;
  Options traj_defaults;
  traj_defaults.t_start = -30.0;
  traj_defaults.t_end = 30.0;
  Options fan_defaults;
  fan_defaults.t_start = -3.0;
  fan_defaults.t_end = 3.0;
  fan_defaults.grid = 121;
  fan_defaults.n_max = 8;
  Options lz_defaults;
  lz_defaults.t_start = -60.0;
  lz_defaults.t_end = 60.0;
  Options geo_defaults;
  geo_defaults.grid = 50;
  geo_defaults.n_max = 3;

  auto* sim = app.add_subcommand("simulate", "One run: measured vs closed-form squeezing");
  auto sim_spec = add_common_options(sim, sim_defaults);
  auto* traj = app.add_subcommand("trajectory", "Disk trajectory of the evolved state");
  auto traj_spec = add_common_options(traj, traj_defaults);
  auto* fan = app.add_subcommand("spectrum-fan", "Instantaneous level energies (n+1/2) omega_t");
  auto fan_spec = add_common_options(fan, fan_defaults);
  auto* lz = app.add_subcommand("lz-compare", "Tunneling 1-p0 vs asymptote and Landau-Zener");
  auto lz_spec = add_common_options(lz, lz_defaults);
  lz->add_option("--delta-sq", lz_spec.flags.delta_sq,
                 "delta^2 = g^2/alpha sweep values")
      ->delimiter(',');
  auto* geo = app.add_subcommand("geometry-check", "Finite-difference geometry residuals");
  auto geo_spec = add_common_options(geo, geo_defaults);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kExitOk;
  std::string label;
  try {
    if (sim->parsed()) {
      label = "simulate";
      code = run_simulate(resolve(sim_spec, sim_defaults));
    } else if (traj->parsed()) {
      label = "trajectory";
      code = run_trajectory(resolve(traj_spec, traj_defaults));
    } else if (fan->parsed()) {
      label = "spectrum-fan";
      code = run_spectrum_fan(resolve(fan_spec, fan_defaults));
    } else if (lz->parsed()) {
      label = "lz-compare";
      Options opt = resolve(lz_spec, lz_defaults);
      if (lz->count("--delta-sq") > 0) opt.delta_sq = lz_spec.flags.delta_sq;
      code = run_lz_compare(opt);
    } else if (geo->parsed()) {
      label = "geometry-check";
      code = run_geometry_check(resolve(geo_spec, geo_defaults));
    }
  } catch (const ConfigError& e) {
    std::cerr << "squeezeflow: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "squeezeflow: i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const sqz::IntegrationError& e) {
    std::cerr << "squeezeflow: integration failed: " << e.what()
              << " (last good t = " << e.last_t() << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "squeezeflow: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "squeezeflow: " << label << " finished in " << elapsed.count()
            << " ms\n";
  return code;
}
