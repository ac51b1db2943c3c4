// imexlmm: scheme construction, certification, barrier verification,
// stability analysis, simulation and convergence studies.
//
// Exit codes: 0 success, 1 refusal (e.g. a scheme that cannot be certified),
// 2 usage or input error, 3 internal invariant violation or numerical failure.

#include "imexlmm/barrier.hpp"
#include "imexlmm/barrier_golden.hpp"
#include "imexlmm/certify.hpp"
#include "imexlmm/io.hpp"
#include "imexlmm/pde/convergence.hpp"
#include "imexlmm/pde/pfc_experiment.hpp"
#include "imexlmm/schemes.hpp"
#include "imexlmm/stability.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using imexlmm::io::json;

namespace {

enum ExitCode { kOk = 0, kRefused = 1, kUsage = 2, kInternal = 3 };

constexpr const char* kOutputDirEnv = "IMEXLMM_OUTPUT_DIR";

struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Relative output paths go under $IMEXLMM_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& p) {
  fs::path path(p);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir && path.is_relative()) path = fs::path(dir) / path;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

/// Writes to the file, or to stdout for an empty path or "-".
void emit(const std::string& target, const std::string& text) {
  if (target.empty() || target == "-") {
    std::cout << text;
    return;
  }
  const fs::path path = output_path(target);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& s, std::size_t expect, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != t.size()) throw std::invalid_argument(what + ": '" + t + "' is not a number");
    out.push_back(v);
  }
  if (expect && out.size() != expect)
    throw std::invalid_argument(what + ": expected " + std::to_string(expect) + " comma-separated values");
  return out;
}

// ---- configuration files -------------------------------------------------

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

/// key=value lines ('#' comments) turned into extra "--key value" arguments;
/// keys already given on the command line are skipped so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!file) return args;
  std::ifstream in(*file);
  if (!in) throw std::invalid_argument("cannot open config file '" + *file + "'");
  auto given = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(*file + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (given(key)) continue;
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

/// Fully resolved options of the innermost parsed subcommand.
json resolved_config(const CLI::App& root) {
  const CLI::App* app = &root;
  std::string command;
  for (bool descended = true; descended;) {
    descended = false;
    for (const CLI::App* sub : app->get_subcommands()) {
      command += (command.empty() ? "" : " ") + sub->get_name();
      app = sub;
      descended = true;
      break;
    }
  }
  json cfg;
  cfg["command"] = command;
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      for (std::size_t i = 0; i < r.size(); ++i) value += (i ? "," : "") + r[i];
    } else {
      value = opt->get_default_str();
      if (value.empty() && opt->get_expected_max() == 0) value = "false";
    }
    cfg[name] = value;
  }
  return cfg;
}

std::string config_comment(const json& cfg) {
  std::string s;
  for (const auto& [k, v] : cfg.items()) s += "# " + k + " = " + v.get<std::string>() + "\n";
  return s;
}

// ---- scheme --------------------------------------------------------------

imexlmm::SchemeCoefficients load_scheme(const std::string& path) {
  if (path.empty() || path == "lmm6-paper") return imexlmm::lmm6_scheme();
  if (path.rfind("bdf", 0) == 0 && path.size() == 4 && path[3] >= '1' && path[3] <= '6')
    return imexlmm::bdf_coefficients(path[3] - '0');
  return imexlmm::io::read_scheme(path);
}

std::string scheme_document(const imexlmm::SchemeCoefficients& s, const json& cfg) {
  json j = imexlmm::io::scheme_to_json(s);
  const auto rep = imexlmm::verify_order_conditions(s);
  j["order"] = rep.order;
  j["normalized"] = rep.normalized();
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

// ---- certify -------------------------------------------------------------

struct CertifyOptions {
  std::string scheme, out, model;
  double epsilon = 0.25, R = 2.0, gamma_fraction = 1.0;
  std::optional<double> ell_f, zeta, eta;
};

int run_certify(const CertifyOptions& o, const json& cfg) {
  const auto s = load_scheme(o.scheme);
  imexlmm::ModelConstants mc;
  if (!o.model.empty()) mc = imexlmm::pde::model_by_name(o.model, o.epsilon, o.R).constants();
  if (o.ell_f) mc.ell_f = *o.ell_f;
  if (o.zeta) mc.zeta = *o.zeta;
  if (o.eta) mc.eta = *o.eta;
  const auto rep = imexlmm::certify_scheme(s, mc, o.gamma_fraction);
  json j = imexlmm::io::report_to_json(rep);
  j["config"] = cfg;
  emit(o.out, j.dump(2) + "\n");
  if (rep.refused) throw Refusal("certification refused: " + rep.refusal_reason);
  return kOk;
}

// ---- barrier -------------------------------------------------------------

int run_barrier_verify(const std::string& out, const json& cfg) {
  const auto sys = imexlmm::build_farkas_system(7);
  imexlmm::golden::check_against_published(sys);
  const auto rep = imexlmm::verify_farkas_certificate(sys);
  std::ostringstream os;
  os << config_comment(cfg);
  os << "system: Q is " << sys.Q.rows() << " x " << sys.Q.cols() << ", matches the published entries\n";
  for (std::size_t l = 0; l < rep.kernel_ok.size(); ++l)
    os << "Q^T r(" << l + 1 << ") = 0: " << (rep.kernel_ok[l] ? "yes" : "no") << "\n";
  os << "lambda =";
  for (const auto& x : rep.lambda) os << " [" << imexlmm::to_string(x) << "]";
  os << "\nlambda >= 0: " << (rep.lambda_nonnegative ? "yes" : "no") << "\nnonzero entries:";
  for (int i : rep.nonzero_indices) os << " " << i;
  os << "\nq^T lambda = " << imexlmm::to_string(rep.q_dot_lambda) << " = " << num(imexlmm::to_double(rep.q_dot_lambda))
     << "\n"
     << (rep.passed ? "PASS" : "FAIL") << "\n";
  emit(out, os.str());
  if (!rep.passed) throw imexlmm::CertificateInvalid("barrier certificate failed");
  return kOk;
}

int run_barrier_search(const imexlmm::SearchOptions& opt, const std::string& out, const json& cfg) {
  const auto r = imexlmm::search_feasible(opt);
  json j;
  j["w"] = r.w;
  j["min_a"] = r.minima.min_a;
  j["min_b"] = r.minima.min_b;
  j["feasible"] = r.minima.feasible;
  j["objective"] = r.objective;
  j["evaluations"] = r.evaluations;
  j["config"] = cfg;
  emit(out, j.dump(2) + "\n");
  return kOk;
}

// ---- stability -----------------------------------------------------------

struct SliceOptions {
  std::string scheme, plane = "implicit", fixed = "0,0", window, out;
  int nx = 0, ny = 0;
};

int run_slice(const SliceOptions& o, const json& cfg) {
  const auto s = load_scheme(o.scheme);
  const auto plane = imexlmm::parse_plane(o.plane);
  auto grid = imexlmm::default_grid(plane);
  if (!o.window.empty()) {
    const auto w = parse_doubles(o.window, 4, "--window");
    grid.re_min = w[0];
    grid.re_max = w[1];
    grid.im_min = w[2];
    grid.im_max = w[3];
    if (!(grid.re_min < grid.re_max && grid.im_min < grid.im_max))
      throw std::invalid_argument("--window: need re_min < re_max and im_min < im_max");
  }
  if (o.nx) grid.nx = o.nx;
  if (o.ny) grid.ny = o.ny;
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("--nx/--ny must be at least 2");
  const auto f = parse_doubles(o.fixed, 2, "--fixed");
  const auto slice = imexlmm::region_slice(s, plane, {f[0], f[1]}, grid);
  std::ostringstream os;
  os << config_comment(cfg) << "re,im,stable\n";
  for (int i = 0; i < grid.ny; ++i)
    for (int j = 0; j < grid.nx; ++j)
      os << num(grid.x(j)) << "," << num(grid.y(i)) << "," << (slice.mask[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ? 1 : 0)
         << "\n";
  emit(o.out, os.str());
  return kOk;
}

int run_angle(const std::string& scheme, const imexlmm::AngleOptions& opt, const std::string& out, const json& cfg) {
  const auto s = load_scheme(scheme);
  const auto cp = imexlmm::char_polys(imexlmm::to_double(s));
  json j;
  j["zero_stable"] = imexlmm::root_condition(cp.rho).zero_stable;
  j["angle_deg"] = imexlmm::stability_angle(s, opt);
  j["config"] = cfg;
  emit(out, j.dump(2) + "\n");
  return kOk;
}

// ---- simulate ------------------------------------------------------------

struct SimulateOptions {
  std::string model = "pfc", scheme, trace = "trace.csv", snapshots, snapshot_dir = "snapshots", summary;
  std::string amplitudes = "0.25,0.3,0.35";
  int grid = 128;
  double domain = 128.0, tau = 0.01, T = 200.0, epsilon = 0.25, R = 2.0, background = 0.285;
  std::uint64_t seed = 1;
  bool dealias = false;
};

void write_snapshot(const fs::path& dir, long n, const imexlmm::pde::State& s, int grid, double domain) {
  std::ostringstream stem;
  stem << "u_" << std::setw(8) << std::setfill('0') << n;
  {
    std::ofstream out(dir / (stem.str() + ".bin"), std::ios::binary);
    out.write(reinterpret_cast<const char*>(s.u.data()), static_cast<std::streamsize>(s.u.size() * sizeof(double)));
    if (!out) throw std::runtime_error("cannot write snapshot " + stem.str());
  }
  json side;
  side["grid"] = {grid, grid};
  side["domain"] = {domain, domain};
  side["t"] = s.t;
  side["step"] = n;
  side["layout"] = "row-major float64, axis 0 slowest";
  std::ofstream(dir / (stem.str() + ".json")) << side.dump(2) << "\n";
}

int run_simulate(const SimulateOptions& o, const json& cfg) {
  namespace pde = imexlmm::pde;
  pde::PfcConfig c;
  c.model = o.model;
  c.n = o.grid;
  c.length = o.domain;
  c.epsilon = o.epsilon;
  c.R = o.R;
  c.tau = o.tau;
  c.T = o.T;
  c.seed = o.seed;
  c.background = o.background;
  c.dealias = o.dealias;
  const auto amp = parse_doubles(o.amplitudes, 3, "--amplitudes");
  c.patches = pde::PfcConfig::default_patches(o.domain, amp[0], amp[1], amp[2]);

  long every = 0;
  if (!o.snapshots.empty()) {
    if (o.snapshots.rfind("every:", 0) != 0) throw std::invalid_argument("--snapshots: expected every:<steps>");
    every = std::stol(o.snapshots.substr(6));
    if (every < 1) throw std::invalid_argument("--snapshots: step count must be positive");
  }
  fs::path snap_dir;
  if (every) {
    snap_dir = output_path(o.snapshot_dir + "/.");
    snap_dir = snap_dir.parent_path();
  }
  const auto s = load_scheme(o.scheme);
  const auto res = pde::run_pfc_experiment(c, s, [&](long n, const pde::State& st) {
    if (every && n % every == 0) write_snapshot(snap_dir, n, st, o.grid, o.domain);
  });

  std::ostringstream csv;
  csv << config_comment(cfg);
  csv << "# energy shift C0 = " << num(res.shift) << "; the E and E_G columns hold E - C0 and E_G - C0\n";
  csv << "step,t,E,E_G,mass,max_abs\n";
  for (const auto& r : res.trace)
    csv << r.step << "," << num(r.t) << "," << num(r.E - res.shift) << "," << num(r.E_G - res.shift) << ","
        << num(r.mass) << "," << num(r.max_abs) << "\n";
  emit(o.trace, csv.str());

  json j;
  j["steps"] = res.trace.empty() ? 0 : res.trace.back().step;
  j["energy_shift"] = res.shift;
  j["tau_max"] = res.report.tau_max;
  j["max_norm"] = res.max_norm;
  j["mass_drift"] = res.mass_drift;
  j["monotonicity_violations"] = res.monotonicity_violations;
  j["first_violation"] = res.first_violation;
  j["truncation_violated"] = res.truncation_violated;
  j["final_E_minus_shift"] = res.trace.back().E - res.shift;
  j["final_E_G_minus_shift"] = res.trace.back().E_G - res.shift;
  j["warnings"] = res.warnings;
  j["config"] = cfg;
  emit(o.summary, j.dump(2) + "\n");
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

// ---- converge ------------------------------------------------------------

struct ConvergeOptions {
  std::string example = "ac", scheme, Ns = "25,40,50,64,80", out;
  int grid = 128;
  double epsilon = 0.01;
};

int run_converge(const ConvergeOptions& o, const json& cfg) {
  namespace pde = imexlmm::pde;
  std::vector<int> Ns;
  for (double v : parse_doubles(o.Ns, 0, "--N")) {
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("--N: step counts must be positive integers");
    Ns.push_back(static_cast<int>(v));
  }
  std::function<pde::ManufacturedProblem()> make;
  if (o.example == "ac")
    make = [&] { return pde::allen_cahn_problem(o.grid, o.epsilon); };
  else if (o.example == "pfc")
    make = [&] { return pde::pfc_problem(o.grid, o.epsilon); };
  else
    throw std::invalid_argument("--example must be ac or pfc");
  const auto s = imexlmm::to_double(load_scheme(o.scheme));
  const auto rows = pde::convergence_study(make, s, Ns);
  std::ostringstream csv;
  csv << config_comment(cfg) << "N,tau,e_inf,rate_inf,e_2,rate_2\n";
  for (const auto& r : rows)
    csv << r.N << "," << num(r.tau) << "," << num(r.e_inf) << "," << (std::isnan(r.rate_inf) ? "" : num(r.rate_inf))
        << "," << num(r.e_2) << "," << (std::isnan(r.rate_2) ? "" : num(r.rate_2)) << "\n";
  emit(o.out, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMEX linear multistep methods for gradient flows: construction, energy certification, "
               "stability and simulation.\nRelative output paths are placed under $" +
               std::string(kOutputDirEnv) + " when it is set."};
  app.name("imexlmm");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--config", "key=value file; command-line flags take precedence")->configurable(false);

  // scheme
  auto* scheme = app.add_subcommand("scheme", "Build a scheme and write it as JSON");
  scheme->require_subcommand(1);
  int bdf_k = 0;
  std::string scheme_out, w_text;
  auto* s_bdf = scheme->add_subcommand("bdf", "IMEX-BDFk coefficients");
  s_bdf->add_option("--k", bdf_k, "Number of steps, 1..6")->required();
  s_bdf->add_option("--out", scheme_out, "Output file (stdout if omitted)");
  auto* s_params = scheme->add_subcommand("from-params", "Scheme from the parameters w_1..w_k");
  s_params->add_option("--w", w_text, "Comma-separated exact values, e.g. 64/5,-141/5")->required();
  s_params->add_option("--out", scheme_out, "Output file (stdout if omitted)");
  auto* s_lmm6 = scheme->add_subcommand("lmm6-paper", "The sixth-order energy-dissipative scheme");
  s_lmm6->add_option("--out", scheme_out, "Output file (stdout if omitted)");

  // certify
  CertifyOptions co;
  auto* certify = app.add_subcommand("certify", "Energy-dissipation certificate and step-size bound");
  certify->add_option("--scheme", co.scheme, "Scheme JSON, or lmm6-paper / bdf1..bdf6")->required();
  certify->add_option("--model", co.model, "Take ell_f, zeta, eta from a model: ac, ch or pfc");
  certify->add_option("--epsilon", co.epsilon, "Model parameter used with --model");
  certify->add_option("--R", co.R, "Truncation radius used with --model");
  certify->add_option("--ell-f", co.ell_f, "Lipschitz constant of f");
  certify->add_option("--zeta", co.zeta, "Constant zeta of the L2 interpolation bound");
  certify->add_option("--eta", co.eta, "Exponent eta in (0, 1]");
  certify->add_option("--gamma-fraction", co.gamma_fraction, "Use this fraction of alpha_max and beta_max");
  certify->add_option("--out", co.out, "Output file (stdout if omitted)");

  // barrier
  auto* barrier = app.add_subcommand("barrier", "Seventh-order barrier");
  barrier->require_subcommand(1);
  std::string barrier_out;
  auto* b_verify = barrier->add_subcommand("verify", "Check the exact Farkas certificate for k = 7");
  b_verify->add_option("--out", barrier_out, "Output file (stdout if omitted)");
  imexlmm::SearchOptions so;
  auto* b_search = barrier->add_subcommand("search", "Numerical search for parameters with positive T(x;a), T(x;b)");
  b_search->add_option("--k", so.k, "Number of steps");
  b_search->add_option("--budget", so.budget, "Objective evaluations");
  b_search->add_option("--seed", so.seed, "Random seed");
  b_search->add_option("--kappa", so.kappa, "Weight of min T(x;b) in the objective");
  b_search->add_option("--restarts", so.restarts, "Number of starts");
  b_search->add_option("--out", barrier_out, "Output file (stdout if omitted)");

  // stability
  auto* stability = app.add_subcommand("stability", "Linear stability analysis");
  stability->require_subcommand(1);
  SliceOptions sl;
  auto* st_slice = stability->add_subcommand("slice", "Stability region on a grid, as CSV");
  st_slice->add_option("--scheme", sl.scheme, "Scheme JSON, or lmm6-paper / bdf1..bdf6")->required();
  st_slice->add_option("--plane", sl.plane, "implicit (zE = 0), explicit (zI = 0) or imex (fixed zI)");
  st_slice->add_option("--fixed", sl.fixed, "re,im of the fixed zI for the imex plane");
  st_slice->add_option("--window", sl.window, "re_min,re_max,im_min,im_max");
  st_slice->add_option("--nx", sl.nx, "Points along the real axis");
  st_slice->add_option("--ny", sl.ny, "Points along the imaginary axis");
  st_slice->add_option("--out", sl.out, "Output file (stdout if omitted)");
  std::string angle_scheme, angle_out;
  imexlmm::AngleOptions ao;
  auto* st_angle = stability->add_subcommand("angle", "A(theta) angle of the implicit part");
  st_angle->add_option("--scheme", angle_scheme, "Scheme JSON, or lmm6-paper / bdf1..bdf6")->required();
  st_angle->add_option("--ray-samples", ao.ray_samples, "Radii per ray");
  st_angle->add_option("--scan-step", ao.scan_step_deg, "Angular scan step in degrees");
  st_angle->add_option("--out", angle_out, "Output file (stdout if omitted)");

  // simulate
  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Energy-dissipation run from three noisy patches");
  simulate->add_option("--model", sim.model, "pfc, ch or ac");
  simulate->add_option("--scheme", sim.scheme, "Scheme JSON, or lmm6-paper / bdf1..bdf6 (default lmm6-paper)");
  simulate->add_option("--grid", sim.grid, "Points per axis");
  simulate->add_option("--domain", sim.domain, "Side length of the periodic square");
  simulate->add_option("--tau", sim.tau, "Time step");
  simulate->add_option("--T", sim.T, "Final time");
  simulate->add_option("--seed", sim.seed, "Seed of the uniform(-1, 1) noise");
  simulate->add_option("--epsilon", sim.epsilon, "Model parameter");
  simulate->add_option("--R", sim.R, "Truncation radius behind ell_f");
  simulate->add_option("--background", sim.background, "Constant background value");
  simulate->add_option("--amplitudes", sim.amplitudes, "Noise amplitudes of the three patches");
  simulate->add_flag("--dealias", sim.dealias, "Apply the 2/3 rule to the nonlinearity");
  simulate->add_option("--trace", sim.trace, "Trace CSV (step, t, E, E_G, mass, max_abs)");
  simulate->add_option("--snapshots", sim.snapshots, "every:<steps> writes u as raw doubles with a JSON sidecar");
  simulate->add_option("--snapshot-dir", sim.snapshot_dir, "Directory for snapshots");
  simulate->add_option("--summary", sim.summary, "Summary JSON (stdout if omitted)");

  // converge
  ConvergeOptions cv;
  auto* converge = app.add_subcommand("converge", "Temporal convergence against a manufactured solution");
  converge->add_option("--example", cv.example, "ac or pfc");
  converge->add_option("--scheme", cv.scheme, "Scheme JSON, or lmm6-paper / bdf1..bdf6 (default lmm6-paper)");
  converge->add_option("--N", cv.Ns, "Comma-separated step counts on [0, 1]");
  converge->add_option("--grid", cv.grid, "Points per axis");
  converge->add_option("--epsilon", cv.epsilon, "Model parameter");
  converge->add_option("--out", cv.out, "Output CSV (stdout if omitted)");

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const json cfg = resolved_config(app);
    if (s_bdf->parsed()) {
      emit(scheme_out, scheme_document(imexlmm::bdf_coefficients(bdf_k), cfg));
    } else if (s_params->parsed()) {
      imexlmm::ParameterVector w;
      for (const auto& t : split(w_text, ',')) w.push_back(imexlmm::parse_rational(t));
      emit(scheme_out, scheme_document(imexlmm::lmm_from_parameters(w), cfg));
    } else if (s_lmm6->parsed()) {
      emit(scheme_out, scheme_document(imexlmm::lmm6_scheme(), cfg));
    } else if (certify->parsed()) {
      return run_certify(co, cfg);
    } else if (b_verify->parsed()) {
      return run_barrier_verify(barrier_out, cfg);
    } else if (b_search->parsed()) {
      return run_barrier_search(so, barrier_out, cfg);
    } else if (st_slice->parsed()) {
      return run_slice(sl, cfg);
    } else if (st_angle->parsed()) {
      return run_angle(angle_scheme, ao, angle_out, cfg);
    } else if (simulate->parsed()) {
      return run_simulate(sim, cfg);
    } else if (converge->parsed()) {
      return run_converge(cv, cfg);
    }
    return kOk;
  } catch (const Refusal& e) {
    std::cerr << e.what() << "\n";
    return kRefused;
  } catch (const imexlmm::CertificateInfeasible& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const imexlmm::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const imexlmm::CertificateInvalid& e) {
    std::cerr << "invalid certificate: " << e.what() << "\n";
    return kInternal;
  } catch (const imexlmm::StarterFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const imexlmm::IllPosedStep& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const imexlmm::DomainError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
