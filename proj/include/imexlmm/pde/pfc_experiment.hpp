#pragma once

// Grain growth for the phase field crystal model from three noisy square
// patches on a constant background, recording E and E_G at every step. The
// same driver runs the other built-in models from that datum.

#include "imexlmm/certify.hpp"
#include "imexlmm/pde/energy.hpp"
#include "imexlmm/pde/gauss_rk.hpp"
#include "imexlmm/pde/stepper.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace imexlmm::pde {

struct Patch {
  std::vector<double> center;
  double side = 10.0;
  double amplitude = 0.0;
};

struct PfcConfig {
  std::string model = "pfc";
  int n = 128;
  double length = 128.0;
  double epsilon = 0.25;
  double R = 2.0;
  double tau = 0.01;
  double T = 200.0;
  std::uint64_t seed = 1;
  double background = 0.285;
  std::vector<Patch> patches;
  bool dealias = false;

  /// Patches of the reference setup (a 256-wide box) with centers scaled to
  /// `length`; side lengths are kept.
  static std::vector<Patch> default_patches(double length, double a1 = 0.25, double a2 = 0.3, double a3 = 0.35) {
    const double s = length / 256.0;
    return {{{64 * s, 196 * s}, 10.0, a1}, {{128 * s, 64 * s}, 10.0, a2}, {{196 * s, 196 * s}, 10.0, a3}};
  }
};

/// 0.285 + A(x) rand(x): one uniform(-1, 1) draw per grid point in storage
/// order, so the field does not depend on where the patches sit.
inline Field pfc_initial_datum(const Grid& g, const PfcConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Field u(g.size(), c.background);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = uni(rng);
    const auto x = g.coords(i);
    for (const auto& p : c.patches) {
      bool inside = p.center.size() == x.size();
      for (std::size_t a = 0; inside && a < x.size(); ++a) inside = std::abs(x[a] - p.center[a]) <= 0.5 * p.side;
      if (inside) {
        u[i] += p.amplitude * r;
        break;
      }
    }
  }
  return u;
}

struct TraceRecord {
  long step = 0;
  double t = 0.0;
  double E = 0.0;
  double E_G = std::numeric_limits<double>::quiet_NaN();  // defined once k states exist
  double mass = 0.0;
  double max_abs = 0.0;
};

/// |Omega| (1 + eps)^2 / 4, the energy of u = 0.
inline double pfc_energy_shift(const Grid& g, double eps) { return (1.0 + eps) * (1.0 + eps) / 4.0 * g.volume(); }

/// |Omega| F(0) for any model; equals the above for the phase field crystal.
inline double energy_shift(const Grid& g, const ModelSpec& m) { return g.volume() * m.F(0.0); }

struct PfcResult {
  std::vector<TraceRecord> trace;
  DissipationReport report;
  double shift = 0.0;  // |Omega| F(0)
  double max_norm = 0.0;
  double mass_drift = 0.0;  // max |mean(u^n) - mean(u^0)| / max(1, |mean(u^0)|)
  long monotonicity_violations = 0;
  long first_violation = -1;
  bool truncation_violated = false;
  std::vector<std::string> warnings;
};

inline constexpr double kMonotoneTolerance = 1e-9;

/// Called with every state u^n; used for snapshots.
using StateObserver = std::function<void(long n, const State&)>;

inline PfcResult run_pfc_experiment(const PfcConfig& c, const SchemeCoefficients& scheme,
                                    const StateObserver& observe = {}) {
  if (!(c.tau > 0.0) || !(c.T >= c.tau)) throw std::invalid_argument("run_pfc_experiment: need 0 < tau <= T");
  const Discretization d(Grid::square(c.n, c.length), model_by_name(c.model, c.epsilon, c.R), c.dealias);
  PfcResult res;
  res.report = certify_scheme(scheme, d.model().constants());
  if (res.report.refused) throw CertificateInfeasible("run_pfc_experiment: " + res.report.refusal_reason);
  const auto sd = to_double(scheme);
  const auto w = EnergyWeights::from_report(res.report, to_double(reform(scheme)));
  res.shift = energy_shift(d.grid(), d.model());
  if (c.tau > res.report.tau_max) {
    std::ostringstream os;
    os << "tau = " << c.tau << " exceeds the certified tau_max = " << res.report.tau_max
       << "; monotonicity is checked empirically";
    res.warnings.push_back(os.str());
  }

  const long N = std::lround(c.T / c.tau);
  const auto k = static_cast<std::size_t>(sd.k);
  History h(k, c.tau);
  double mass0 = 0.0;

  auto record = [&](const State& s, long n) {
    TraceRecord r;
    r.step = n;
    r.t = s.t;
    r.E = energy(d, s.u, s.u_hat);
    r.mass = d.grid().mean(s.u);
    r.max_abs = max_abs(s.u);
    if (h.full()) r.E_G = modified_energy(d, h, w, r.E);
    if (n == 0) mass0 = r.mass;
    res.mass_drift = std::max(res.mass_drift, std::abs(r.mass - mass0) / std::max(1.0, std::abs(mass0)));
    res.max_norm = std::max(res.max_norm, r.max_abs);
    if (r.max_abs >= c.R && !res.truncation_violated) {
      res.truncation_violated = true;
      res.warnings.push_back("max|u| reached the truncation radius at step " + std::to_string(n) +
                             "; the certificate no longer applies");
    }
    if (!res.trace.empty() && !std::isnan(res.trace.back().E_G) && !std::isnan(r.E_G)) {
      const double prev = res.trace.back().E_G;
      if (r.E_G > prev + kMonotoneTolerance * std::max(1.0, std::abs(prev))) {
        if (res.first_violation < 0) res.first_violation = n;
        ++res.monotonicity_violations;
      }
    }
    res.trace.push_back(r);
    if (observe) observe(n, s);
  };

  auto start = gauss_rk6_start(d, pfc_initial_datum(d.grid(), c), c.tau, sd.k);
  for (std::size_t i = 0; i < start.size(); ++i) {
    const State s = start[i];
    h.push(std::move(start[i]));
    record(s, static_cast<long>(i));
  }
  for (long n = static_cast<long>(k); n <= N; ++n) {
    State next = step(d, h, sd);
    next.t = n * c.tau;
    h.push(next);
    record(next, n);
  }
  return res;
}

}  // namespace imexlmm::pde
