#pragma once

// IMEX-LMM time stepping in diagonal Fourier form. The linear part is solved
// mode by mode, the nonlinearity is evaluated pointwise (pseudo-spectral) and
// extrapolated with the Bhat weights; an optional source g(t, x) enters with
// the same weights outside the M bracket.

#include "imexlmm/errors.hpp"
#include "imexlmm/pde/grid.hpp"
#include "imexlmm/pde/model.hpp"
#include "imexlmm/schemes.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace imexlmm::pde {

/// Physical source field g(t, .) on the grid.
using Source = std::function<Field(double)>;

class Discretization {
 public:
  Discretization(Grid grid, ModelSpec model, bool dealias = false)
      : grid_(std::move(grid)), model_(std::move(model)), dealias_(dealias) {
    const auto& xi2 = grid_.xi2();
    m_.resize(xi2.size());
    l_.resize(xi2.size());
    filter_.assign(xi2.size(), 1.0);
    for (std::size_t i = 0; i < xi2.size(); ++i) {
      m_[i] = model_.m_symbol(xi2[i]);
      l_[i] = model_.l_symbol(xi2[i]);
    }
    if (model_.mass_conserving && m_[0] != 0.0)
      throw std::invalid_argument("Discretization: mass-conserving model needs m(0) = 0");
    if (dealias_) {
      // 2/3 rule: drop modes with |k_a| > n_a / 3 on any axis
      for (std::size_t i = 0; i < xi2.size(); ++i) {
        const auto k = grid_.mode(i);
        for (std::size_t a = 0; a < k.size(); ++a)
          if (3 * std::abs(k[a]) > grid_.points()[a]) filter_[i] = 0.0;
      }
    }
  }

  const Grid& grid() const { return grid_; }
  const ModelSpec& model() const { return model_; }
  const std::vector<double>& m_hat() const { return m_; }
  const std::vector<double>& l_hat() const { return l_; }
  bool dealiased() const { return dealias_; }

  Spectrum to_spectral(const Field& u) const { return grid_.fft().forward(u); }
  Field to_physical(const Spectrum& s) const { return grid_.fft().inverse(s); }

  Field apply_f(const Field& u) const {
    Field out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = model_.f(u[i]);
    return out;
  }

  /// Transform of f(u), filtered when de-aliasing is on.
  Spectrum nonlinear_hat(const Field& u) const {
    Spectrum s = to_spectral(apply_f(u));
    if (dealias_)
      for (std::size_t i = 0; i < s.size(); ++i) s[i] *= filter_[i];
    return s;
  }

  /// L u evaluated through its symbol.
  Field apply_L(const Spectrum& u_hat) const {
    Spectrum s = u_hat;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= l_[i];
    return to_physical(s);
  }

 private:
  Grid grid_;
  ModelSpec model_;
  bool dealias_ = false;
  std::vector<double> m_, l_, filter_;
};

struct State {
  double t = 0.0;
  Field u;
  Spectrum u_hat;
  Spectrum f_hat;
  Spectrum g_hat;  // empty without a source
};

/// State at time t from its spectrum (authoritative) with cached f and g.
inline State make_state(const Discretization& d, Spectrum u_hat, double t, const Source* g = nullptr) {
  State s;
  s.t = t;
  s.u_hat = std::move(u_hat);
  s.u = d.to_physical(s.u_hat);
  s.f_hat = d.nonlinear_hat(s.u);
  if (g && *g) s.g_hat = d.to_spectral((*g)(t));
  return s;
}

inline State make_state(const Discretization& d, const Field& u, double t, const Source* g = nullptr) {
  return make_state(d, d.to_spectral(u), t, g);
}

/// The last k states, newest first: at(0) = u^n, at(k-1) = u^{n+1-k}.
class History {
 public:
  History(std::size_t k, double tau) : k_(k), tau_(tau) {
    if (k < 1) throw std::invalid_argument("History: k must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("History: tau must be positive");
  }

  void push(State s) {
    if (!states_.empty() && s.u.size() != states_.front().u.size())
      throw std::invalid_argument("History: states must share one grid");
    states_.push_front(std::move(s));
    if (states_.size() > k_) states_.pop_back();
    ++pushed_;
  }

  bool full() const { return states_.size() == k_; }
  std::size_t k() const { return k_; }
  double tau() const { return tau_; }
  /// Index n of the newest state u^n.
  long step_index() const { return static_cast<long>(pushed_) - 1; }
  const State& at(std::size_t i) const { return states_.at(i); }
  const State& newest() const { return states_.front(); }

 private:
  std::size_t k_;
  double tau_;
  std::deque<State> states_;
  std::size_t pushed_ = 0;
};

/// One step of the k-step IMEX-LMM:
///   (A_0 - tau m B_0 l) u^{n+1} = -sum A_i u^{n+1-i}
///       + tau m (sum B_i l u^{n+1-i} + sum Bhat_i f^{n+1-i}) + tau sum Bhat_i g^{n+1-i}
inline State step(const Discretization& d, const History& h, const BasicScheme<double>& s, const Source* g = nullptr) {
  if (!h.full()) throw std::invalid_argument("step: history not full");
  if (h.k() != static_cast<std::size_t>(s.k)) throw std::invalid_argument("step: history length differs from scheme k");
  const double tau = h.tau();
  const auto& m = d.m_hat();
  const auto& l = d.l_hat();
  const std::size_t n = d.grid().size();
  const bool with_source = g && *g;

  Spectrum rhs(n, cplx(0.0));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(s.k); ++i) {
    const State& st = h.at(i - 1);
    const double a = s.A[i], b = s.B[i], bh = s.Bhat[i - 1];
    for (std::size_t j = 0; j < n; ++j) {
      const double mj = m[j];
      rhs[j] += -a * st.u_hat[j] + tau * mj * (b * l[j] * st.u_hat[j] + bh * st.f_hat[j]);
    }
    if (with_source) {
      if (st.g_hat.size() != n) throw std::invalid_argument("step: source given but history lacks g values");
      for (std::size_t j = 0; j < n; ++j) rhs[j] += tau * bh * st.g_hat[j];
    }
  }
  // Modes with m = 0 only see the A part. Writing it through the cumulative
  // sums a_i = A_0 + ... + A_i keeps a constant history exactly constant,
  // which the plain form does not once sum A_i = 0 is rounded.
  std::vector<double> cum(static_cast<std::size_t>(s.k));
  for (std::size_t i = 0; i < cum.size(); ++i) cum[i] = (i ? cum[i - 1] : 0.0) + s.A[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (m[j] != 0.0) continue;
    cplx acc(0.0);
    for (std::size_t i = 1; i < cum.size(); ++i) acc -= cum[i] * (h.at(i - 1).u_hat[j] - h.at(i).u_hat[j]);
    if (with_source)
      for (std::size_t i = 1; i <= static_cast<std::size_t>(s.k); ++i) acc += tau * s.Bhat[i - 1] * h.at(i - 1).g_hat[j];
    rhs[j] = acc;
  }
  const double scale = std::abs(s.A[0]) + std::abs(s.B[0]);
  for (std::size_t j = 0; j < n; ++j) {
    const double pivot = s.A[0] - tau * m[j] * s.B[0] * l[j];
    if (std::abs(pivot) <= 1e-14 * scale) {
      std::ostringstream os;
      os << "step: zero pivot A_0 - tau m B_0 l at mode " << j;
      throw IllPosedStep(os.str());
    }
    rhs[j] /= pivot;
    if (m[j] == 0.0) rhs[j] += h.newest().u_hat[j];
  }
  return make_state(d, std::move(rhs), h.newest().t + tau, g);
}

}  // namespace imexlmm::pde
