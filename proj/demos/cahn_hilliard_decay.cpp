// Cahn-Hilliard coarsening from small random noise with the sixth-order
// scheme on [0, 2pi)^2: prints E and the modified energy E_G every 100 steps.
//
//   cahn_hilliard_decay [steps] [tau]

#include "imexlmm/certify.hpp"
#include "imexlmm/pde/energy.hpp"
#include "imexlmm/pde/gauss_rk.hpp"
#include "imexlmm/pde/stepper.hpp"

#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>

int main(int argc, char** argv) {
  using namespace imexlmm;
  using namespace imexlmm::pde;
  const long steps = argc > 1 ? std::atol(argv[1]) : 2000;
  const double tau = argc > 2 ? std::atof(argv[2]) : 1e-4;

  const double eps = 0.1;
  const Discretization d(Grid::square(64, 2.0 * std::numbers::pi), cahn_hilliard(eps));
  const auto scheme = lmm6_scheme();
  const auto rep = certify_scheme(scheme, d.model().constants());
  const auto w = EnergyWeights::from_report(rep, to_double(reform(scheme)));
  std::printf("# alpha = %.6f  beta = %.6f  certified tau_max = %.3e  tau = %.3e\n", rep.alpha_max, rep.beta_max,
              rep.tau_max, tau);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-0.25, 0.25);
  Field u0(d.grid().size());
  for (double& x : u0) x = uni(rng);

  const auto s = to_double(scheme);
  History h(static_cast<std::size_t>(s.k), tau);
  for (auto& st : gauss_rk6_start(d, u0, tau, s.k)) h.push(std::move(st));

  std::printf("%8s %12s %18s %18s %12s\n", "step", "t", "E", "E_G", "max|u|");
  for (long n = s.k; n <= steps; ++n) {
    h.push(step(d, h, s));
    if (n % 100 == 0 || n == steps) {
      const State& cur = h.newest();
      const double E = energy(d, cur.u, cur.u_hat);
      std::printf("%8ld %12.5f %18.10f %18.10f %12.6f\n", n, cur.t, E, modified_energy(d, h, w, E), max_abs(cur.u));
    }
  }
}
