#pragma once

// Linear stability of IMEX-LMMs on the split test equation y' = lambda_I y + lambda_E y:
// characteristic polynomials, root condition, stability-region slices and the
// A(theta) sector angle of the implicit part.

#include "imexlmm/errors.hpp"
#include "imexlmm/schemes.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace imexlmm {

using Complex = std::complex<double>;

/// Coefficients in descending powers: c[i] multiplies xi^{k-i}.
template <class T>
struct CharPolys {
  std::vector<T> rho;
  std::vector<T> sigma;
  std::vector<T> sigma_hat;  // sigma_hat[0] = 0
};

template <class T>
CharPolys<T> char_polys(const BasicScheme<T>& s) {
  check_shape(s);
  CharPolys<T> c;
  c.rho = s.A;
  c.sigma = s.B;
  c.sigma_hat.push_back(T(0));
  c.sigma_hat.insert(c.sigma_hat.end(), s.Bhat.begin(), s.Bhat.end());
  return c;
}

/// Evaluates a descending-coefficient polynomial (Horner).
template <class T>
T poly_eval(const std::vector<T>& c, const T& x) {
  T acc(0);
  for (const auto& v : c) acc = acc * x + v;
  return acc;
}

/// Descending coefficients of the derivative.
template <class T>
std::vector<T> poly_derivative(const std::vector<T>& c) {
  std::vector<T> d;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) d.push_back(c[i] * T(static_cast<long>(n - 1 - i)));
  return d;
}

namespace stability_tol {
inline constexpr double kOutside = 1e-7;   // |xi| <= 1 + kOutside
inline constexpr double kBoundary = 1e-7;  // |xi| >= 1 - kBoundary counts as on the circle
inline constexpr double kCluster = 1e-6;   // two boundary roots closer than this are a double root
inline constexpr double kLeading = 1e-12;  // relative size of a vanishing leading coefficient
}  // namespace stability_tol

/// Roots of a descending-coefficient polynomial from the companion matrix.
/// Leading exact zeros are dropped.
inline std::vector<Complex> poly_roots(std::vector<Complex> c) {
  while (!c.empty() && c.front() == Complex(0.0)) c.erase(c.begin());
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -c[static_cast<std::size_t>(j + 1)] / c[0];
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return roots;
}

struct RootConditionResult {
  bool zero_stable = true;
  std::vector<Complex> roots;
  std::vector<std::string> violations;
};

inline RootConditionResult root_condition(const std::vector<Complex>& poly, double tol = stability_tol::kOutside) {
  RootConditionResult res;
  bool nonzero = false;
  for (const auto& c : poly) nonzero = nonzero || c != Complex(0.0);
  if (!nonzero) throw std::invalid_argument("root_condition: zero polynomial");
  res.roots = poly_roots(poly);
  for (std::size_t i = 0; i < res.roots.size(); ++i) {
    const double r = std::abs(res.roots[i]);
    if (r > 1.0 + tol) {
      std::ostringstream os;
      os.precision(10);
      os << "root " << res.roots[i] << " outside the unit disk (|xi| = " << r << ")";
      res.violations.push_back(os.str());
      continue;
    }
    if (r < 1.0 - stability_tol::kBoundary) continue;
    for (std::size_t j = i + 1; j < res.roots.size(); ++j)
      if (std::abs(res.roots[i] - res.roots[j]) < stability_tol::kCluster) {
        std::ostringstream os;
        os.precision(10);
        os << "repeated root " << res.roots[i] << " on the unit circle";
        res.violations.push_back(os.str());
        break;
      }
  }
  res.zero_stable = res.violations.empty();
  return res;
}

inline RootConditionResult root_condition(const std::vector<double>& poly, double tol = stability_tol::kOutside) {
  return root_condition(std::vector<Complex>(poly.begin(), poly.end()), tol);
}

/// Root condition for rho - zI sigma - zE sigma_hat. A leading coefficient
/// that (numerically) vanishes sends a root to infinity and counts as unstable.
inline bool is_stable_point(const CharPolys<double>& cp, Complex zI, Complex zE) {
  std::vector<Complex> c(cp.rho.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = cp.rho[i] - zI * cp.sigma[i] - zE * cp.sigma_hat[i];
    scale = std::max(scale, std::abs(c[i]));
  }
  if (scale == 0.0) return false;
  if (std::abs(c[0]) <= stability_tol::kLeading * scale) return false;
  return root_condition(c).zero_stable;
}

enum class SlicePlane { implicit, explicit_, imex };

inline const char* to_string(SlicePlane p) {
  switch (p) {
    case SlicePlane::implicit: return "implicit";
    case SlicePlane::explicit_: return "explicit";
    default: return "imex";
  }
}

inline SlicePlane parse_plane(const std::string& s) {
  if (s == "implicit") return SlicePlane::implicit;
  if (s == "explicit") return SlicePlane::explicit_;
  if (s == "imex") return SlicePlane::imex;
  throw std::invalid_argument("unknown plane '" + s + "' (implicit|explicit|imex)");
}

struct SliceGrid {
  double re_min = -2.0, re_max = 1.0;
  double im_min = -1.5, im_max = 1.5;
  int nx = 400, ny = 400;

  double x(int j) const { return re_min + (re_max - re_min) * j / (nx - 1); }
  double y(int i) const { return im_min + (im_max - im_min) * i / (ny - 1); }
};

/// Default windows: the implicit plane needs a much larger box than the
/// explicit ones.
inline SliceGrid default_grid(SlicePlane p) {
  SliceGrid g;
  if (p == SlicePlane::implicit) {
    g.re_min = -10.0;
    g.re_max = 30.0;
    g.im_min = -20.0;
    g.im_max = 20.0;
  }
  return g;
}

struct RegionSlice {
  SlicePlane plane = SlicePlane::implicit;
  Complex fixed_value{0.0, 0.0};  // zI for the imex plane; unused otherwise
  SliceGrid grid;
  std::vector<std::vector<bool>> mask;  // mask[i][j] at (x(j), y(i))
};

inline RegionSlice region_slice(const SchemeCoefficients& s, SlicePlane plane, Complex fixed_value,
                                const SliceGrid& grid) {
  if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("region_slice: need at least 2 points per axis");
  const auto cp = char_polys(to_double(s));
  RegionSlice out;
  out.plane = plane;
  out.fixed_value = plane == SlicePlane::imex ? fixed_value : Complex(0.0);
  out.grid = grid;
  out.mask.assign(static_cast<std::size_t>(grid.ny), std::vector<bool>(static_cast<std::size_t>(grid.nx), false));
  for (int i = 0; i < grid.ny; ++i)
    for (int j = 0; j < grid.nx; ++j) {
      const Complex z(grid.x(j), grid.y(i));
      bool ok = false;
      switch (plane) {
        case SlicePlane::implicit: ok = is_stable_point(cp, z, 0.0); break;
        case SlicePlane::explicit_: ok = is_stable_point(cp, 0.0, z); break;
        case SlicePlane::imex: ok = is_stable_point(cp, fixed_value, z); break;
      }
      out.mask[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ok;
    }
  return out;
}

struct AngleOptions {
  int ray_samples = 200;
  double r_min = 1e-3;
  double r_max = 1e6;
  double scan_step_deg = 0.25;
  int bisection_steps = 30;
};

namespace stability_detail {

inline bool ray_stable(const CharPolys<double>& cp, double phi_deg, const std::vector<double>& radii) {
  const double phi = phi_deg * std::numbers::pi / 180.0;
  const Complex dir = -std::polar(1.0, phi);
  for (double r : radii)
    if (!is_stable_point(cp, r * dir, 0.0)) return false;
  return true;
}

}  // namespace stability_detail

/// Largest theta (degrees, capped at 90) such that every sampled point
/// z_I = -r e^{i phi}, |phi| <= theta, z_E = 0 satisfies the root condition.
/// Rays are sampled on a logarithmic r grid; the r -> infinity limit is the
/// root condition of sigma.
inline double stability_angle(const SchemeCoefficients& s, const AngleOptions& opt = {}) {
  const auto cp = char_polys(to_double(s));
  const auto rho = root_condition(cp.rho);
  if (!rho.zero_stable) throw DomainError("stability_angle: rho violates the root condition; the angle is undefined");
  if (!root_condition(cp.sigma).zero_stable) return 0.0;

  std::vector<double> radii(static_cast<std::size_t>(opt.ray_samples));
  const double l0 = std::log10(opt.r_min), l1 = std::log10(opt.r_max);
  for (int i = 0; i < opt.ray_samples; ++i)
    radii[static_cast<std::size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / std::max(1, opt.ray_samples - 1));

  // conjugate symmetry: phi >= 0 suffices
  double theta = 0.0;
  if (!stability_detail::ray_stable(cp, 0.0, radii)) return 0.0;
  while (theta + opt.scan_step_deg <= 90.0 && stability_detail::ray_stable(cp, theta + opt.scan_step_deg, radii))
    theta += opt.scan_step_deg;
  if (theta + opt.scan_step_deg > 90.0) return stability_detail::ray_stable(cp, 90.0, radii) ? 90.0 : theta;
  double lo = theta, hi = theta + opt.scan_step_deg;
  for (int it = 0; it < opt.bisection_steps; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stability_detail::ray_stable(cp, mid, radii) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace imexlmm
