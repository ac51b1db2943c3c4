#pragma once

// Chebyshev-series generating polynomials T(x; s) = sum_m s_m T_m(x) and
// their global minimum on [-1, 1] via the colleague matrix of T'.

#include "imexlmm/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace imexlmm {

struct ChebSeries {
  std::vector<double> coeffs;  // s_0 .. s_{k-1}

  ChebSeries() = default;
  explicit ChebSeries(std::vector<double> s) : coeffs(std::move(s)) {}

  std::size_t size() const { return coeffs.size(); }
};

struct MinResult {
  double min_value = 0.0;
  double argmin = -1.0;
  std::vector<double> critical_points;  // accepted roots of T' plus both endpoints
};

namespace cheb {

inline constexpr double kImagTolerance = 1e-8;
inline constexpr double kIntervalTolerance = 1e-10;
inline constexpr double kDuplicateTolerance = 1e-8;

/// Clenshaw recurrence; no domain check.
inline double clenshaw(const std::vector<double>& s, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t m = s.size(); m-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + s[m];
    b2 = b1;
    b1 = b0;
  }
  const double s0 = s.empty() ? 0.0 : s[0];
  return x * b1 - b2 + s0;
}

/// Index of the highest coefficient that is not negligible (-1 for a zero series).
inline int true_degree(const std::vector<double>& s) {
  double scale = 0.0;
  for (double c : s) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return -1;
  for (std::size_t m = s.size(); m-- > 0;)
    if (std::abs(s[m]) > 1e-14 * scale) return static_cast<int>(m);
  return -1;
}

}  // namespace cheb

inline double eval(const ChebSeries& series, double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("ChebSeries::eval: |x| must be <= 1");
  return cheb::clenshaw(series.coeffs, x);
}

/// Coefficients of T'(x) in the Chebyshev basis (same length; last entry 0).
inline ChebSeries derivative_coeffs(const ChebSeries& series) {
  const auto& s = series.coeffs;
  const std::size_t k = s.size();
  std::vector<double> d(k, 0.0);
  if (k < 2) return ChebSeries(d);
  // d[k-1] = 0, so m = k-1 gives d[k-2] = 2(k-1)s_{k-1} (halved when k = 2)
  for (std::size_t m = k - 1; m >= 1; --m) {
    const double next = (m + 1 < k) ? d[m + 1] : 0.0;
    d[m - 1] = (2.0 * static_cast<double>(m) * s[m] + next) / (m == 1 ? 2.0 : 1.0);
  }
  return ChebSeries(d);
}

/// Colleague matrix of sum_{j=0}^{n} c_j T_j with c_n != 0 (n >= 1).
inline Eigen::MatrixXd colleague_matrix(const std::vector<double>& c) {
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) {
    C(0, 0) = -c[0] / c[1];
    return C;
  }
  C(0, 1) = 1.0;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    C(i, i - 1) = 0.5;
    C(i, i + 1) = 0.5;
  }
  C(n - 1, n - 2) = 0.5;
  for (Eigen::Index j = 0; j < n; ++j) C(n - 1, j) -= c[static_cast<std::size_t>(j)] / (2.0 * c[static_cast<std::size_t>(n)]);
  return C;
}

/// Real critical points of T in [-1, 1] (roots of T'), deduplicated and sorted.
inline std::vector<double> interior_critical_points(const ChebSeries& series) {
  std::vector<double> s = series.coeffs;
  const int deg = cheb::true_degree(s);
  if (deg < 2) return {};
  s.resize(static_cast<std::size_t>(deg) + 1);
  const auto ds = derivative_coeffs(ChebSeries(s)).coeffs;  // degree deg-1, leading entry ds[deg-1]
  std::vector<double> c(ds.begin(), ds.begin() + deg);
  const Eigen::MatrixXd C = colleague_matrix(c);
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > cheb::kImagTolerance * std::max(1.0, std::abs(z.real()))) continue;
    if (std::abs(z.real()) > 1.0 + cheb::kIntervalTolerance) continue;
    roots.push_back(std::clamp(z.real(), -1.0, 1.0));
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots)
    if (unique.empty() || std::abs(r - unique.back()) > cheb::kDuplicateTolerance) unique.push_back(r);
  return unique;
}

inline MinResult global_min(const ChebSeries& series) {
  if (series.size() == 0) throw std::invalid_argument("global_min: empty series");
  MinResult out;
  const int deg = cheb::true_degree(series.coeffs);
  if (deg <= 0) {
    out.min_value = series.coeffs[0];
    out.argmin = -1.0;
    out.critical_points = {-1.0, 1.0};
    return out;
  }
  out.critical_points.push_back(-1.0);
  for (double x : interior_critical_points(series))
    if (x > -1.0 && x < 1.0) out.critical_points.push_back(x);
  out.critical_points.push_back(1.0);
  out.min_value = std::numeric_limits<double>::infinity();
  for (double x : out.critical_points) {
    const double v = cheb::clenshaw(series.coeffs, x);
    if (v < out.min_value) {
      out.min_value = v;
      out.argmin = x;
    }
  }
  return out;
}

}  // namespace imexlmm
