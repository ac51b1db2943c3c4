#pragma once

// Gradient flows u_t = M (L u + f(u)) described by the Fourier symbols of M
// and L (functions of |xi|^2), the pointwise nonlinearity f and its potential F.

#include "imexlmm/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace imexlmm::pde {

struct ModelSpec {
  std::string name;
  double epsilon = 0.0;
  std::function<double(double)> m_symbol;  // of |xi|^2, <= 0
  std::function<double(double)> l_symbol;  // of |xi|^2, >= 0
  std::function<double(double)> f;
  std::function<double(double)> F;
  double ell_f = 1.0;  // Lipschitz constant of f on [-R, R]
  double R = 2.0;      // truncation radius behind ell_f
  double zeta = 1.0;
  double eta = 1.0;
  bool mass_conserving = false;

  ModelConstants constants() const { return {ell_f, zeta, eta}; }
};

/// max_{|s| <= R} |3 s^2 - c| for f(s) = s^3 - c s.
inline double cubic_lipschitz(double c, double R) { return std::max(std::abs(3.0 * R * R - c), std::abs(c)); }

inline ModelSpec allen_cahn(double eps, double R = 2.0) {
  ModelSpec m;
  m.name = "allen_cahn";
  m.epsilon = eps;
  m.m_symbol = [](double) { return -1.0; };
  m.l_symbol = [eps](double q) { return eps * eps * q; };
  m.f = [](double u) { return u * u * u - u; };
  m.F = [](double u) { return 0.25 * (u * u - 1.0) * (u * u - 1.0); };
  m.R = R;
  m.ell_f = cubic_lipschitz(1.0, R);
  m.zeta = 1.0;
  m.eta = 1.0;
  return m;
}

inline ModelSpec cahn_hilliard(double eps, double R = 2.0) {
  ModelSpec m = allen_cahn(eps, R);
  m.name = "cahn_hilliard";
  m.m_symbol = [](double q) { return -q; };
  m.zeta = 1.0 / std::sqrt(eps);
  m.eta = 0.5;
  m.mass_conserving = true;
  return m;
}

/// L = (I + Laplacian)^2 + I, f(u) = u^3 - (1 + eps) u.
inline ModelSpec phase_field_crystal(double eps, double R = 2.0) {
  ModelSpec m;
  m.name = "pfc";
  m.epsilon = eps;
  const double c = 1.0 + eps;
  m.m_symbol = [](double q) { return -q; };
  m.l_symbol = [](double q) { return (1.0 - q) * (1.0 - q) + 1.0; };
  m.f = [c](double u) { return u * u * u - c * u; };
  m.F = [c](double u) { return 0.25 * (u * u - c) * (u * u - c); };
  m.R = R;
  m.ell_f = cubic_lipschitz(c, R);
  m.zeta = std::pow(2.0 * std::sqrt(2.0) - 2.0, -0.25);
  m.eta = 0.5;
  m.mass_conserving = true;
  return m;
}

inline ModelSpec model_by_name(const std::string& name, double eps, double R = 2.0) {
  if (name == "ac" || name == "allen_cahn") return allen_cahn(eps, R);
  if (name == "ch" || name == "cahn_hilliard") return cahn_hilliard(eps, R);
  if (name == "pfc") return phase_field_crystal(eps, R);
  throw std::invalid_argument("unknown model '" + name + "' (ac|ch|pfc)");
}

}  // namespace imexlmm::pde
