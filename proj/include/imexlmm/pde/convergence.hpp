#pragma once

// Temporal convergence against manufactured solutions: the source g is the
// residual u_t - M(L u + f(u)) of a known u, evaluated spectrally on the grid.

#include "imexlmm/pde/gauss_rk.hpp"
#include "imexlmm/pde/stepper.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <memory>
#include <string>
#include <vector>

namespace imexlmm::pde {

struct ManufacturedProblem {
  std::string name;
  std::shared_ptr<const Discretization> disc;
  std::function<Field(double)> exact;
  Source source;
  double T = 1.0;
};

/// g(t) = u_t(t) - M (L u + f(u)) for a given u and u_t.
inline Source manufactured_source(std::shared_ptr<const Discretization> d, std::function<Field(double)> u,
                                  std::function<Field(double)> u_t) {
  return [d, u = std::move(u), u_t = std::move(u_t)](double t) {
    const Field ut = u(t);
    Spectrum r = d->to_spectral(ut);
    const Spectrum fh = d->to_spectral(d->apply_f(ut));
    const auto& m = d->m_hat();
    const auto& l = d->l_hat();
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = m[j] * (l[j] * r[j] + fh[j]);
    const Field mr = d->to_physical(r);
    Field g = u_t(t);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= mr[i];
    return g;
  };
}

/// u = cos(t) sin(x) sin(y) on (0, 2 pi)^2.
inline ManufacturedProblem cos_sin_sin_problem(std::string name, ModelSpec model, int n) {
  auto d = std::make_shared<const Discretization>(Grid::square(n, 2.0 * std::numbers::pi), std::move(model));
  Field s(d->grid().size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = d->grid().coords(i);
    s[i] = std::sin(x[0]) * std::sin(x[1]);
  }
  auto scaled = [s](double c) {
    Field u = s;
    for (double& v : u) v *= c;
    return u;
  };
  auto u = [scaled](double t) { return scaled(std::cos(t)); };
  auto u_t = [scaled](double t) { return scaled(-std::sin(t)); };
  ManufacturedProblem p;
  p.name = std::move(name);
  p.disc = d;
  p.exact = u;
  p.source = manufactured_source(d, u, u_t);
  return p;
}

/// Allen-Cahn, eps = 0.01, with a source.
inline ManufacturedProblem allen_cahn_problem(int n = 128, double eps = 0.01) {
  return cos_sin_sin_problem("ac", allen_cahn(eps), n);
}

/// Phase field crystal, eps = 0.01, with a source.
inline ManufacturedProblem pfc_problem(int n = 128, double eps = 0.01) {
  return cos_sin_sin_problem("pfc", phase_field_crystal(eps), n);
}

struct ConvergenceRow {
  int N = 0;
  double tau = 0.0;
  double e_inf = 0.0;
  double e_2 = 0.0;
  double rate_inf = std::nan("");  // vs. the previous row
  double rate_2 = std::nan("");
};

/// Max over k-1 <= n <= N of the grid max norm and of the cell-volume L2 norm.
inline ConvergenceRow run_convergence(const ManufacturedProblem& p, const BasicScheme<double>& scheme, int N,
                                      const GaussOptions& opt = {}) {
  const Discretization& d = *p.disc;
  const double tau = p.T / N;
  const auto k = static_cast<std::size_t>(scheme.k);
  const Source* g = &p.source;

  ConvergenceRow row;
  row.N = N;
  row.tau = tau;
  auto measure = [&](const State& s, long n) {
    if (n < static_cast<long>(k) - 1) return;
    const Field ex = p.exact(n * tau);
    double emax = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      const double e = s.u[i] - ex[i];
      emax = std::max(emax, std::abs(e));
      sq += e * e;
    }
    row.e_inf = std::max(row.e_inf, emax);
    row.e_2 = std::max(row.e_2, std::sqrt(d.grid().cell_volume() * sq));
  };

  History h(k, tau);
  auto start = gauss_rk6_start(d, p.exact(0.0), tau, scheme.k, g, 0.0, opt);
  for (std::size_t i = 0; i < start.size(); ++i) {
    measure(start[i], static_cast<long>(i));
    h.push(std::move(start[i]));
  }
  for (long n = static_cast<long>(k); n <= N; ++n) {
    State next = step(d, h, scheme, g);
    next.t = n * tau;
    measure(next, n);
    h.push(std::move(next));
  }
  return row;
}

/// One row per N (run concurrently, each on its own discretization) with
/// log2-based rates between consecutive rows.
inline std::vector<ConvergenceRow> convergence_study(const std::function<ManufacturedProblem()>& make_problem,
                                                     const BasicScheme<double>& scheme, const std::vector<int>& Ns,
                                                     const GaussOptions& opt = {}) {
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int N : Ns)
    jobs.push_back(std::async(std::launch::async, [&, N] {
      const ManufacturedProblem p = make_problem();
      return run_convergence(p, scheme, N, opt);
    }));
  std::vector<ConvergenceRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = std::log2(static_cast<double>(rows[i].N) / rows[i - 1].N);
    rows[i].rate_inf = std::log2(rows[i - 1].e_inf / rows[i].e_inf) / r;
    rows[i].rate_2 = std::log2(rows[i - 1].e_2 / rows[i].e_2) / r;
  }
  return rows;
}

}  // namespace imexlmm::pde
