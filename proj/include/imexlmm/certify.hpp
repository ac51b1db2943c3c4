#pragma once

// Energy certificates for IMEX-LMMs.
//
// For a coefficient vector s and a constant 0 < gamma <= min T(x; s) the
// nonnegative trigonometric polynomial M(theta; s) - gamma is factorized as
// |P(e^{i theta})|^2. The coefficients p of P give an upper-triangular U with
// x^T U x >= gamma x_1^2, and U determines the upper-triangular PSD matrix G
// of the quadratic modification uniquely. Applied to the a- and b-vectors of
// a scheme this yields G_a, G_b and the step bound tau_max.

#include "imexlmm/chebpoly.hpp"
#include "imexlmm/errors.hpp"
#include "imexlmm/schemes.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace imexlmm {

struct EnergyCertificate {
  double gamma = 0.0;
  std::vector<double> p;  // coefficients of P(z) = p_1 + p_2 z + ... + p_k z^{k-1}
  Eigen::MatrixXd U;      // k x k upper triangular
  Eigen::MatrixXd G;      // (k-1) x (k-1) upper triangular
};

struct ModelConstants {
  double ell_f = 1.0;  // Lipschitz constant of f
  double zeta = 1.0;
  double eta = 1.0;  // in (0, 1]
};

struct DissipationReport {
  double alpha_max = 0.0;
  double beta_max = 0.0;
  MinResult min_a;
  MinResult min_b;
  std::optional<EnergyCertificate> cert_a;
  std::optional<EnergyCertificate> cert_b;
  double gamma_fraction = 1.0;
  double tau_max = 0.0;
  ModelConstants model;
  double chat1 = 0.0;
  bool refused = false;
  std::string refusal_reason;

  bool certifiable() const { return !refused; }
};

namespace certify_detail {

inline constexpr double kCircleBand = 1e-5;
inline constexpr double kPsdTolerance = 1e-10;

using cplx = std::complex<double>;

/// Roots of sum_j c_j z^j (c ascending, c.back() != 0) from the companion matrix.
inline std::vector<cplx> polynomial_roots(const std::vector<double>& c) {
  const auto n = static_cast<Eigen::Index>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cplx> roots;
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

/// Picks one root from every reciprocal pair (z, 1/conj z) of L. Roots close to
/// the unit circle stem from double roots there; the two perturbed copies are
/// paired up and replaced by their mean.
inline std::vector<cplx> select_inner_roots(std::vector<cplx> roots, std::size_t want) {
  std::vector<cplx> chosen;
  std::vector<cplx> band;
  for (const auto& z : roots) {
    const double r = std::abs(z);
    if (r < 1.0 - kCircleBand)
      chosen.push_back(z);
    else if (r <= 1.0 + kCircleBand)
      band.push_back(z);
  }
  std::vector<bool> used(band.size(), false);
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (used[i]) continue;
    std::size_t best = band.size();
    double dist = 0.0;
    for (std::size_t j = i + 1; j < band.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(band[i] - band[j]);
      if (best == band.size() || d < dist) {
        best = j;
        dist = d;
      }
    }
    used[i] = true;
    if (best == band.size()) {
      chosen.push_back(band[i] / std::abs(band[i]));
      continue;
    }
    used[best] = true;
    const cplx mean = 0.5 * (band[i] + band[best]);
    chosen.push_back(mean / std::abs(mean));
  }
  if (chosen.size() != want) {
    // inconsistent clustering; fall back to the smallest moduli
    std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    roots.resize(want);
    return roots;
  }
  return chosen;
}

inline double min_sym_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace certify_detail

/// Largest gamma admitting a certificate: the minimum of T(x; s) on [-1, 1].
inline double gamma_max(const ChebSeries& s) { return global_min(s).min_value; }

/// PSD in the sense of the symmetric part, with the library-wide tolerance.
inline bool is_psd(const Eigen::MatrixXd& m, double tol = certify_detail::kPsdTolerance) {
  return certify_detail::min_sym_eigenvalue(m) >= -tol;
}

/// Minimum eigenvalue of (m + m^T).
inline double min_eig_sym_sum(const Eigen::MatrixXd& m) { return 2.0 * certify_detail::min_sym_eigenvalue(m); }

/// Real p with |P(e^{i theta})|^2 = M(theta; s) - gamma. The roots of P are the
/// roots of the Laurent polynomial L(z) inside (or on) the unit circle.
inline std::vector<double> spectral_factorize(const ChebSeries& series, double gamma) {
  using certify_detail::cplx;
  const auto& s = series.coeffs;
  const std::size_t k = s.size();
  if (k == 0) throw std::invalid_argument("spectral_factorize: empty series");

  const double gmax = gamma_max(series);
  double scale = 1.0;
  for (double c : s) scale = std::max(scale, std::abs(c));
  const double tol = 1e-10 * scale;
  if (gamma > gmax + tol) {
    std::ostringstream os;
    os << "spectral_factorize: gamma = " << gamma << " exceeds min T(x;s) = " << gmax;
    throw CertificateInfeasible(os.str());
  }

  std::vector<double> p(k, 0.0);
  const int d = cheb::true_degree(s);
  const double c0 = s[0] - gamma;
  if (d <= 0) {
    p[0] = std::sqrt(std::max(0.0, c0));
    return p;
  }

  // z^d L(z), ascending: coefficient of z^{d+m} and z^{d-m} is s_m / 2
  const auto du = static_cast<std::size_t>(d);
  std::vector<double> lc(2 * du + 1, 0.0);
  lc[du] = c0;
  for (std::size_t m = 1; m <= du; ++m) {
    lc[du + m] += 0.5 * s[m];
    lc[du - m] += 0.5 * s[m];
  }
  const auto roots = certify_detail::select_inner_roots(certify_detail::polynomial_roots(lc), du);

  // Q(z) = prod (z - z_j), ascending coefficients
  std::vector<cplx> q{cplx(1.0)};
  for (const auto& z : roots) {
    std::vector<cplx> next(q.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i + 1] += q[i];
      next[i] -= z * q[i];
    }
    q = std::move(next);
  }
  double energy = 0.0;
  for (const auto& c : q) energy += std::norm(c.real());
  // sum p_i^2 = s_0 - gamma fixes the leading scale
  const double a0 = std::sqrt(std::max(0.0, c0) / energy);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] = a0 * q[i].real();

  for (double& x : p)
    if (x != 0.0) {
      if (x < 0.0)
        for (double& y : p) y = -y;
      break;
    }
  return p;
}

inline Eigen::MatrixXd build_U(const std::vector<double>& p, double gamma) {
  const auto k = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    U(i, i) = p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) U(i, j) = 2.0 * p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j)];
  }
  if (k > 0) U(0, 0) += gamma;
  return U;
}

/// G = sum_m (J^T)^m Utilde J^m with Utilde the trailing (k-1)x(k-1) block of U.
inline Eigen::MatrixXd recover_G(const Eigen::MatrixXd& U) {
  const Eigen::Index n = U.rows() - 1;
  if (n <= 0) return Eigen::MatrixXd(0, 0);
  const Eigen::MatrixXd Ut = U.bottomRightCorner(n, n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  // (J^T X J)_{ij} = X_{i+1, j+1}
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index m = 0; i + m < n && j + m < n; ++m) G(i, j) += Ut(i + m, j + m);

  Eigen::MatrixXd shifted = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    for (Eigen::Index j = 0; j + 1 < n; ++j) shifted(i, j) = G(i + 1, j + 1);
  const double resid = (G - shifted - Ut).cwiseAbs().maxCoeff();
  if (resid > 1e-12 * std::max(1.0, Ut.cwiseAbs().maxCoeff()))
    throw InvariantViolation("recover_G: -J^T G J + G != Utilde");
  return G;
}

/// Coefficients s recovered from (p, gamma): s_0 = |p|^2 + gamma, s_m = 2 sum p_i p_{i+m}.
inline std::vector<double> series_from_factor(const std::vector<double>& p, double gamma) {
  std::vector<double> s(p.size(), 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    double acc = 0.0;
    for (std::size_t i = 0; i + m < p.size(); ++i) acc += p[i] * p[i + m];
    s[m] = m == 0 ? acc + gamma : 2.0 * acc;
  }
  return s;
}

inline EnergyCertificate make_certificate(const ChebSeries& s, double gamma) {
  EnergyCertificate c;
  c.gamma = gamma;
  c.p = spectral_factorize(s, gamma);
  c.U = build_U(c.p, gamma);
  c.G = recover_G(c.U);
  return c;
}

inline double tau_max(double alpha, double beta, double chat1, const ModelConstants& m) {
  const double eta_bar = (1.0 - m.eta) / m.eta;
  const double lip = std::abs(0.5 * m.ell_f + 2.0 * m.ell_f * chat1);
  // 0^0 = 1 at eta = 1
  const double one_minus = m.eta == 1.0 ? 1.0 : std::pow(1.0 - m.eta, eta_bar);
  const double beta_term = eta_bar == 0.0 ? 1.0 : std::pow(beta, eta_bar);
  return alpha * beta_term / (std::pow(lip, 1.0 + eta_bar) * m.eta * one_minus * std::pow(m.zeta, 2.0 + 2.0 * eta_bar));
}

namespace certify_detail {

inline std::string describe_failure(const char* name, const ChebSeries& s, const MinResult& mr) {
  std::ostringstream os;
  os.precision(17);
  os << "T(x;" << name << ") is not positive on [-1,1]: min " << mr.min_value << " at x = " << mr.argmin;
  if (mr.argmin != 0.0 && cheb::clenshaw(s.coeffs, 0.0) < 0.0) os << "; T(0;" << name << ") = " << cheb::clenshaw(s.coeffs, 0.0);
  return os.str();
}

}  // namespace certify_detail

inline DissipationReport certify_scheme(const SchemeCoefficients& scheme, const ModelConstants& model,
                                        double gamma_fraction = 1.0) {
  check_shape(scheme);
  if (!(model.ell_f > 0.0) || !(model.zeta > 0.0) || !(model.eta > 0.0 && model.eta <= 1.0))
    throw std::invalid_argument("certify_scheme: need ell_f > 0, zeta > 0, 0 < eta <= 1");
  if (!(gamma_fraction > 0.0 && gamma_fraction <= 1.0))
    throw std::invalid_argument("certify_scheme: gamma fraction must lie in (0, 1]");

  const auto rf = to_double(reform(scheme));
  const ChebSeries a(rf.a), b(rf.b);

  DissipationReport rep;
  rep.model = model;
  rep.gamma_fraction = gamma_fraction;
  rep.chat1 = rf.chat.empty() ? 0.0 : rf.chat[0];
  rep.min_a = global_min(a);
  rep.min_b = global_min(b);
  rep.alpha_max = rep.min_a.min_value;
  rep.beta_max = rep.min_b.min_value;

  const bool eta_one = model.eta == 1.0;
  std::vector<std::string> reasons;
  if (!(rep.alpha_max > 0.0)) reasons.push_back(certify_detail::describe_failure("a", a, rep.min_a));
  if (!(rep.beta_max > 0.0 || (eta_one && rep.beta_max >= 0.0)))
    reasons.push_back(certify_detail::describe_failure("b", b, rep.min_b));
  if (!reasons.empty()) {
    rep.refused = true;
    for (std::size_t i = 0; i < reasons.size(); ++i) rep.refusal_reason += (i ? "; " : "") + reasons[i];
    return rep;
  }

  const double alpha = gamma_fraction * rep.alpha_max;
  const double beta = gamma_fraction * std::max(0.0, rep.beta_max);
  rep.cert_a = make_certificate(a, alpha);
  rep.cert_b = make_certificate(b, beta);
  rep.tau_max = tau_max(alpha, beta, rep.chat1, model);
  return rep;
}

}  // namespace imexlmm
