#include "imexlmm/pde/convergence.hpp"
#include "imexlmm/pde/energy.hpp"
#include "imexlmm/pde/gauss_rk.hpp"
#include "imexlmm/pde/pfc_experiment.hpp"
#include "imexlmm/schemes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace imexlmm;
using namespace imexlmm::pde;

namespace {

constexpr double kPi = std::numbers::pi;

ModelSpec linear_model(double l_scale) {
  ModelSpec m;
  m.name = "linear";
  m.m_symbol = [](double) { return -1.0; };
  m.l_symbol = [l_scale](double q) { return l_scale * q; };
  m.f = [](double) { return 0.0; };
  m.F = [](double) { return 0.0; };
  return m;
}

Field random_field(const Grid& g, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> uni(-amp, amp);
  Field u(g.size());
  for (double& x : u) x = uni(rng);
  return u;
}

Field sinsin(const Grid& g, double c = 1.0) {
  Field u(g.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = g.coords(i);
    u[i] = c * std::sin(x[0]) * std::sin(x[1]);
  }
  return u;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

History history_from(const Discretization& d, const std::vector<Field>& newest_first, double tau, double t_newest,
                     const Source* g = nullptr) {
  History h(newest_first.size(), tau);
  for (std::size_t i = newest_first.size(); i-- > 0;)
    h.push(make_state(d, newest_first[i], t_newest - static_cast<double>(i) * tau, g));
  return h;
}

EnergyWeights lmm6_weights(const ModelSpec& m) {
  const auto rep = certify_scheme(lmm6_scheme(), m.constants());
  return EnergyWeights::from_report(rep, to_double(reform(lmm6_scheme())));
}

}  // namespace

TEST(Grid, ParsevalInnerProduct) {
  const Grid g({16, 8}, {3.0, 5.0});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Field u = random_field(g, rng), v = random_field(g, rng);
    const double phys = g.inner(u, v);
    const double spec = g.inner_spectral(g.fft().forward(u), g.fft().forward(v));
    EXPECT_NEAR(phys, spec, 1e-12 * std::max(1.0, std::abs(phys)));
  }
}

TEST(Grid, RoundTripAndWavenumbers) {
  const Grid g = Grid::square(8, 2 * kPi, 1);
  EXPECT_EQ(Grid::wavenumber(4, 8), -4);
  EXPECT_EQ(Grid::wavenumber(3, 8), 3);
  EXPECT_DOUBLE_EQ(g.xi2()[5], 9.0);
  std::mt19937_64 rng(3);
  const Field u = random_field(g, rng);
  EXPECT_LT(max_diff(g.fft().inverse(g.fft().forward(u)), u), 1e-15);
  EXPECT_THROW(Grid({7}, {1.0}), std::invalid_argument);
}

TEST(Grid, InverseRejectsNonHermitianSpectrum) {
  const Grid g = Grid::square(8, 1.0, 1);
  Spectrum s(8, cplx(0.0));
  s[1] = cplx(1.0, 0.0);  // no matching conjugate at -1
  EXPECT_THROW(g.fft().inverse(s), InvariantViolation);
}

TEST(Model, PfcLipschitzConstant) {
  EXPECT_DOUBLE_EQ(phase_field_crystal(0.25).ell_f, 10.75);
  EXPECT_NEAR(phase_field_crystal(0.25).zeta, std::pow(2 * std::sqrt(2.0) - 2, -0.25), 1e-15);
  EXPECT_THROW(model_by_name("heat", 0.1), std::invalid_argument);
}

TEST(Step, StationaryDynamicsForBdf1) {
  const Discretization d(Grid::square(16, 2 * kPi), linear_model(0.0));
  std::mt19937_64 rng(1);
  const Field u = random_field(d.grid(), rng);
  History h = history_from(d, {u}, 0.1, 0.0);
  const auto bdf1 = to_double(bdf_coefficients(1));
  for (int n = 0; n < 10; ++n) h.push(step(d, h, bdf1));
  EXPECT_LT(max_diff(h.newest().u, u), 1e-14);
}

TEST(Step, RejectsMismatchedHistory) {
  const Discretization d(Grid::square(8, 1.0), linear_model(1.0));
  History h(2, 0.1);
  h.push(make_state(d, Field(64, 0.0), 0.0));
  EXPECT_THROW(step(d, h, to_double(bdf_coefficients(2))), std::invalid_argument);
}

TEST(Step, PfcMassIsConserved) {
  const Discretization d(Grid::square(32, 32.0), phase_field_crystal(0.25));
  std::mt19937_64 rng(5);
  Field u0 = random_field(d.grid(), rng, 0.3);
  for (double& x : u0) x += 0.285;
  const double tau = 0.01;
  auto start = gauss_rk6_start(d, u0, tau, 6);
  History h(6, tau);
  for (auto& s : start) h.push(std::move(s));
  const double mass0 = d.grid().mean(u0);
  const auto s = to_double(lmm6_scheme());
  double drift = 0.0;
  for (int n = 0; n < 300; ++n) {
    h.push(step(d, h, s));
    drift = std::max(drift, std::abs(d.grid().mean(h.newest().u) - mass0));
  }
  EXPECT_LE(drift, 1e-12);
}

TEST(Step, LocalErrorIsSeventhOrder) {
  // one step of the sixth-order scheme from exact history
  auto p = allen_cahn_problem(16);
  const auto s = to_double(lmm6_scheme());
  const double t1 = 1.0;
  std::vector<double> err;
  for (double tau : {0.2, 0.1, 0.05, 0.025}) {
    std::vector<Field> hist;
    for (int i = 0; i < 6; ++i) hist.push_back(p.exact(t1 - i * tau));
    const History h = history_from(*p.disc, hist, tau, t1, &p.source);
    const State next = step(*p.disc, h, s, &p.source);
    err.push_back(max_diff(next.u, p.exact(t1 + tau)));
  }
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double slope = std::log2(err[i - 1] / err[i]);
    EXPECT_GT(slope, 6.5) << "errors " << err[i - 1] << " " << err[i];
    EXPECT_LT(slope, 7.6) << "errors " << err[i - 1] << " " << err[i];
  }
}

TEST(Gauss, LinearFlowMatchesExponential) {
  const Discretization d(Grid::square(16, 2 * kPi), linear_model(1.0));
  Field u0(d.grid().size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const auto x = d.grid().coords(i);
    u0[i] = std::sin(x[0]) * std::sin(x[1]) + 0.5 * std::cos(x[0]) + 0.25;
  }
  const double tau = 0.02;
  const auto states = gauss_rk6_start(d, u0, tau, 6);
  ASSERT_EQ(states.size(), 6u);
  for (std::size_t n = 0; n < states.size(); ++n) {
    const double t = n * tau;
    Field ex(u0.size());
    for (std::size_t i = 0; i < ex.size(); ++i) {
      const auto x = d.grid().coords(i);
      ex[i] = std::exp(-2 * t) * std::sin(x[0]) * std::sin(x[1]) + 0.5 * std::exp(-t) * std::cos(x[0]) + 0.25;
    }
    EXPECT_LT(max_diff(states[n].u, ex), 1e-12) << "n = " << n;
    EXPECT_DOUBLE_EQ(states[n].t, t);
  }
}

TEST(Gauss, SingleStepReturnsInitialState) {
  const Discretization d(Grid::square(8, 1.0), linear_model(1.0));
  const Field u0(64, 0.5);
  const auto states = gauss_rk6_start(d, u0, 0.1, 1);
  ASSERT_EQ(states.size(), 1u);
  EXPECT_EQ(states[0].u, u0);
}

TEST(Gauss, StarterAccuracyOnAllenCahn) {
  auto p = allen_cahn_problem(16);
  const double tau = 1.0 / 80;
  const auto states = gauss_rk6_start(*p.disc, p.exact(0.0), tau, 6, &p.source);
  for (std::size_t n = 0; n < states.size(); ++n)
    EXPECT_LT(max_diff(states[n].u, p.exact(n * tau)), 1e-13) << "n = " << n;
}

TEST(Energy, ConstantStates) {
  const Discretization pfc(Grid::square(16, 128.0), phase_field_crystal(0.25));
  const double C0 = 1.25 * 1.25 / 4 * 128.0 * 128.0;
  EXPECT_NEAR(energy(pfc, Field(256, 0.0)), C0, 1e-12 * C0);
  EXPECT_NEAR(pfc_energy_shift(pfc.grid(), 0.25), C0, 1e-12 * C0);
  const Discretization ac(Grid::square(16, 2 * kPi), allen_cahn(0.01));
  EXPECT_NEAR(energy(ac, Field(256, 1.0)), 0.0, 1e-14);
}

TEST(Energy, MatchesQuadratureOracleOnPfcDatum) {
  PfcConfig c;
  c.patches = PfcConfig::default_patches(c.length);
  const Discretization d(Grid::square(c.n, c.length), phase_field_crystal(c.epsilon));
  const Field u = pfc_initial_datum(d.grid(), c);
  // direct double sum with L u applied through the symbol in physical space
  const Field Lu = d.apply_L(d.to_spectral(u));
  const double h2 = (c.length / c.n) * (c.length / c.n);
  double oracle = 0.0;
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      const double v = u[static_cast<std::size_t>(i * c.n + j)];
      const double F = 0.25 * (v * v - 1.25) * (v * v - 1.25);
      oracle += h2 * (0.5 * v * Lu[static_cast<std::size_t>(i * c.n + j)] + F);
    }
  const double E = energy(d, u);
  EXPECT_NEAR(E, oracle, 1e-10 * std::abs(oracle));
}

TEST(Energy, SpectralNormIdentity) {
  const Discretization d(Grid::square(32, 32.0), phase_field_crystal(0.25));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Spectrum v = d.to_spectral(random_field(d.grid(), rng));
    v[0] = 0.0;
    const auto& m = d.m_hat();
    const double by_symbol = d.grid().inner_spectral(v, v, [&](std::size_t j) { return j ? -1.0 / m[j] : 0.0; });
    Spectrum w = v;
    for (std::size_t j = 1; j < w.size(); ++j) w[j] /= -m[j];
    const double by_solve = d.grid().inner(d.to_physical(v), d.to_physical(w));
    EXPECT_NEAR(by_symbol, by_solve, 1e-12 * by_symbol);
  }
}

TEST(Energy, InterpolationInequality) {
  const auto model = phase_field_crystal(0.25);
  const Discretization d(Grid::square(128, 128.0), model);
  std::mt19937_64 rng(2024);
  const auto& m = d.m_hat();
  const auto& l = d.l_hat();
  for (int trial = 0; trial < 100; ++trial) {
    Spectrum v = d.to_spectral(random_field(d.grid(), rng));
    v[0] = 0.0;
    const Grid& g = d.grid();
    const double n0 = std::sqrt(g.inner_spectral(v, v));
    const double nm = std::sqrt(g.inner_spectral(v, v, [&](std::size_t j) { return j ? -1.0 / m[j] : 0.0; }));
    const double nl = std::sqrt(g.inner_spectral(v, v, [&](std::size_t j) { return l[j]; }));
    EXPECT_LE(n0, model.zeta * std::pow(nm, model.eta) * std::pow(nl, 1 - model.eta) * (1 + 1e-12));
  }
}

TEST(ModifiedEnergy, ConstantHistoryGivesEnergy) {
  const Discretization d(Grid::square(16, 16.0), phase_field_crystal(0.25));
  std::mt19937_64 rng(8);
  const Field u = random_field(d.grid(), rng, 0.5);
  const History h = history_from(d, std::vector<Field>(6, u), 0.01, 0.0);
  const double E = energy(d, u);
  EXPECT_EQ(modified_energy(d, h, lmm6_weights(d.model()), E), E);
}

TEST(ModifiedEnergy, Bdf1GivesEnergy) {
  const Discretization d(Grid::square(16, 16.0), phase_field_crystal(0.25));
  std::mt19937_64 rng(9);
  const Field u = random_field(d.grid(), rng, 0.5);
  const History h = history_from(d, {u}, 0.01, 0.0);
  const auto rep = certify_scheme(bdf_coefficients(1), d.model().constants());
  const auto w = EnergyWeights::from_report(rep, to_double(reform(bdf_coefficients(1))));
  const double E = energy(d, u);
  EXPECT_EQ(modified_energy(d, h, w, E), E);
}

TEST(ModifiedEnergy, DominatesEnergyOnRandomHistories) {
  const Discretization d(Grid::square(16, 16.0), phase_field_crystal(0.25));
  const auto w = lmm6_weights(d.model());
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Field base = random_field(d.grid(), rng, 0.5);
    std::vector<Field> hist;
    for (int i = 0; i < 6; ++i) {
      Spectrum s = d.to_spectral(random_field(d.grid(), rng, 0.1));
      s[0] = 0.0;
      Field pert = d.to_physical(s);
      for (std::size_t j = 0; j < pert.size(); ++j) pert[j] += base[j];
      hist.push_back(pert);
    }
    // the zero modes must agree exactly for the mass-conserving check
    const Spectrum ref = d.to_spectral(hist[0]);
    std::vector<Field> fixed;
    for (const Field& f : hist) {
      Spectrum s = d.to_spectral(f);
      s[0] = ref[0];
      fixed.push_back(d.to_physical(s));
    }
    const History h = history_from(d, fixed, 0.01, 0.0);
    const double E = energy(d, h.newest().u, h.newest().u_hat);
    EXPECT_GE(modified_energy(d, h, w, E), E - 1e-10 * std::max(1.0, std::abs(E)));
  }
}

TEST(ModifiedEnergy, RejectsMassChangeUnderConservativeModel) {
  const Discretization d(Grid::square(8, 8.0), phase_field_crystal(0.25));
  std::vector<Field> hist(6, Field(64, 0.1));
  hist[0] = Field(64, 0.2);
  const History h = history_from(d, hist, 0.01, 0.0);
  EXPECT_THROW(modified_energy(d, h, lmm6_weights(d.model()), 0.0), InvariantViolation);
}

TEST(Pfc, InitialDatumPatches) {
  PfcConfig c;
  c.patches = PfcConfig::default_patches(128.0);
  EXPECT_DOUBLE_EQ(c.patches[2].center[0], 98.0);
  const Grid g = Grid::square(c.n, c.length);
  const Field u = pfc_initial_datum(g, c);
  std::size_t perturbed = 0;
  double max_dev = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != c.background) ++perturbed;
    max_dev = std::max(max_dev, std::abs(u[i] - c.background));
  }
  EXPECT_EQ(perturbed, 3u * 11u * 11u);  // unit spacing, |x - c| <= 5
  EXPECT_LE(max_dev, 0.35);
  EXPECT_EQ(pfc_initial_datum(g, c), u);  // same seed, same field
}

TEST(Pfc, ZeroAmplitudesStayConstant) {
  PfcConfig c;
  c.n = 32;
  c.length = 32.0;
  c.T = 1.0;
  c.patches = PfcConfig::default_patches(c.length, 0.0, 0.0, 0.0);
  const auto res = run_pfc_experiment(c, lmm6_scheme(), [&](long, const State& s) {
    for (double x : s.u) ASSERT_NEAR(x, 0.285, 1e-14);
  });
  ASSERT_EQ(res.trace.size(), 101u);
  for (const auto& r : res.trace) EXPECT_NEAR(r.E, res.trace[0].E, 1e-12 * res.trace[0].E);
}

TEST(Pfc, ShortRunDissipates) {
  PfcConfig c;
  c.n = 64;
  c.length = 64.0;
  c.T = 5.0;
  c.patches = PfcConfig::default_patches(c.length);
  const auto res = run_pfc_experiment(c, lmm6_scheme());
  EXPECT_EQ(res.monotonicity_violations, 0) << "first at step " << res.first_violation;
  EXPECT_LT(res.max_norm, 2.0);
  EXPECT_LE(res.mass_drift, 1e-12);
  EXPECT_FALSE(res.warnings.empty());  // tau = 0.01 is above the certified bound
  for (const auto& r : res.trace)
    if (!std::isnan(r.E_G)) EXPECT_GE(r.E_G, r.E - 1e-10 * std::max(1.0, std::abs(r.E)));
}

TEST(Convergence, StationarySolutionIsReproduced) {
  // u = sin x sin y for all t, source chosen so the residual vanishes
  auto d = std::make_shared<const Discretization>(Grid::square(16, 2 * kPi), allen_cahn(0.01));
  ManufacturedProblem p;
  p.disc = d;
  const Field u = sinsin(d->grid());
  p.exact = [u](double) { return u; };
  p.source = manufactured_source(d, p.exact, [n = u.size()](double) { return Field(n, 0.0); });
  for (int N : {25, 40}) {
    const auto row = run_convergence(p, to_double(lmm6_scheme()), N);
    EXPECT_LT(row.e_inf, 1e-12);
  }
}

TEST(Convergence, AllenCahnSmallGridRates) {
  const auto rows = convergence_study([] { return allen_cahn_problem(16); }, to_double(lmm6_scheme()), {25, 40, 50});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(std::isnan(rows[0].rate_inf));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].rate_inf, 5.3);
    EXPECT_LE(rows[i].rate_inf, 6.0);
  }
}
