#pragma once

// Discrete free energy E[u] and the modified energy E_G built from the
// certificate matrices G_a, G_b and the weights chat.

#include "imexlmm/certify.hpp"
#include "imexlmm/errors.hpp"
#include "imexlmm/pde/stepper.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <vector>

namespace imexlmm::pde {

/// cell_volume * (1/2 sum u L u + sum F(u)); L u through its symbol.
inline double energy(const Discretization& d, const Field& u, const Spectrum& u_hat) {
  const auto& l = d.l_hat();
  const double quad = d.grid().inner_spectral(u_hat, u_hat, [&](std::size_t i) { return l[i]; });
  double pot = 0.0;
  for (double x : u) pot += d.model().F(x);
  return 0.5 * quad + d.grid().cell_volume() * pot;
}

inline double energy(const Discretization& d, const Field& u) { return energy(d, u, d.to_spectral(u)); }

/// What the modified energy needs from a certificate.
struct EnergyWeights {
  Eigen::MatrixXd Ga;  // (k-1) x (k-1)
  Eigen::MatrixXd Gb;
  std::vector<double> chat;  // chat_1 .. chat_{k-1}
  double ell_f = 0.0;

  static EnergyWeights from_report(const DissipationReport& rep, const BasicReformed<double>& reformed) {
    if (rep.refused || !rep.cert_a || !rep.cert_b)
      throw std::invalid_argument("EnergyWeights: the report carries no certificate");
    return {rep.cert_a->G, rep.cert_b->G, reformed.chat, rep.model.ell_f};
  }
};

/// Mean of a difference must vanish before M^{-1} is applied on the zero-mean
/// complement.
inline constexpr double kMeanTolerance = 1e-10;

/// E_G^n = E[u^n] - (1/tau) (v, M^{-1} v)_{G_a} + (v, L v)_{G_b} + ell_f sum chat_i |du^{n+1-i}|^2
/// with v = [du^n, ..., du^{n+2-k}] and du^j = u^j - u^{j-1}.
inline double modified_energy(const Discretization& d, const History& h, const EnergyWeights& w, double E_n) {
  if (!h.full()) throw std::invalid_argument("modified_energy: history not full");
  const std::size_t km1 = h.k() - 1;
  if (static_cast<std::size_t>(w.Ga.rows()) != km1 || static_cast<std::size_t>(w.Gb.rows()) != km1 ||
      w.chat.size() != km1)
    throw std::invalid_argument("modified_energy: certificate size differs from k - 1");
  if (km1 == 0) return E_n;

  const std::size_t n = d.grid().size();
  std::vector<Spectrum> du(km1, Spectrum(n));
  for (std::size_t i = 0; i < km1; ++i)
    for (std::size_t j = 0; j < n; ++j) du[i][j] = h.at(i).u_hat[j] - h.at(i + 1).u_hat[j];

  const auto& m = d.m_hat();
  const auto& l = d.l_hat();
  const bool skip_zero = d.model().mass_conserving;
  if (skip_zero)
    for (std::size_t i = 0; i < km1; ++i) {
      const double mean = du[i][0].real() / static_cast<double>(n);
      if (std::abs(mean) > kMeanTolerance) {
        std::ostringstream os;
        os << "modified_energy: difference " << i << " has mean " << mean << " under a mass-conserving model";
        throw InvariantViolation(os.str());
      }
    }
  std::vector<double> minv(n);
  for (std::size_t j = 0; j < n; ++j) minv[j] = (skip_zero && j == 0) ? 0.0 : 1.0 / m[j];

  const Grid& g = d.grid();
  double ga = 0.0, gb = 0.0, gc = 0.0;
  for (std::size_t i = 0; i < km1; ++i) {
    for (std::size_t j = 0; j < km1; ++j) {
      const double a = w.Ga(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const double b = w.Gb(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (a == 0.0 && b == 0.0) continue;
      if (a != 0.0) ga += a * g.inner_spectral(du[i], du[j], [&](std::size_t q) { return minv[q]; });
      if (b != 0.0) gb += b * g.inner_spectral(du[i], du[j], [&](std::size_t q) { return l[q]; });
    }
    gc += w.chat[i] * g.inner_spectral(du[i], du[i]);
  }
  return E_n - ga / h.tau() + gb + w.ell_f * gc;
}

}  // namespace imexlmm::pde
