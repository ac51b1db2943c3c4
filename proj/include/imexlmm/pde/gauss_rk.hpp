#pragma once

// Three-stage Gauss-Legendre collocation (order 6) for the starting values.
// Per mode the ODE is  u' = lambda u + m f(u)^ + g^(t)  with lambda = m l.
// The stiff linear part is inverted exactly per mode through (I - h lambda A);
// the remaining coupling is resolved by fixed-point iteration.

#include "imexlmm/errors.hpp"
#include "imexlmm/pde/stepper.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace imexlmm::pde {

struct GaussOptions {
  double tolerance = 1e-14;  // max-norm change between iterates (relative to max(1, |U|))
  int max_iterations = 200;
  int max_halvings = 6;  // substeps down to tau / 64
};

class GaussRK3 {
 public:
  GaussRK3(const Discretization& d, double h) : d_(d), h_(h) {
    const double s15 = std::sqrt(15.0);
    A_ << 5.0 / 36, 2.0 / 9 - s15 / 15, 5.0 / 36 - s15 / 30,  //
        5.0 / 36 + s15 / 24, 2.0 / 9, 5.0 / 36 - s15 / 24,    //
        5.0 / 36 + s15 / 30, 2.0 / 9 + s15 / 15, 5.0 / 36;
    c_ = {0.5 - s15 / 10, 0.5, 0.5 + s15 / 10};
    const Eigen::RowVector3d b(5.0 / 18, 4.0 / 9, 5.0 / 18);
    d_weights_ = b * A_.inverse();  // u_new = u + d^T (U - u)

    const auto& m = d.m_hat();
    const auto& l = d.l_hat();
    inv_.resize(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
      const Eigen::Matrix3d M = Eigen::Matrix3d::Identity() - h * m[j] * l[j] * A_;
      inv_[j] = M.inverse();
    }
  }

  /// One step of size h from `start`. Returns false if the fixed-point
  /// iteration does not converge.
  bool advance(const State& start, const Source* g, const GaussOptions& opt, Spectrum& out) const {
    const std::size_t n = d_.grid().size();
    const auto& m = d_.m_hat();
    const bool with_source = g && *g;

    std::array<Spectrum, 3> src;
    for (int s = 0; s < 3; ++s) {
      if (with_source)
        src[s] = d_.to_spectral((*g)(start.t + c_[static_cast<std::size_t>(s)] * h_));
      else
        src[s].assign(n, cplx(0.0));
    }

    // initial guess U_s = u, N_s = m f(u)^ + g^(t_s)
    std::array<Spectrum, 3> U, N;
    std::array<Field, 3> Uphys;
    for (int s = 0; s < 3; ++s) {
      U[s] = start.u_hat;
      Uphys[s] = start.u;
      N[s].resize(n);
      for (std::size_t j = 0; j < n; ++j) N[s][j] = m[j] * start.f_hat[j] + src[s][j];
    }

    bool converged = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
      // solve (I - h lambda A) U = u 1 + h A N per mode
      for (std::size_t j = 0; j < n; ++j) {
        Eigen::Vector3cd r;
        for (int s = 0; s < 3; ++s) {
          cplx acc = start.u_hat[j];
          for (int q = 0; q < 3; ++q) acc += h_ * A_(s, q) * N[q][j];
          r(s) = acc;
        }
        const Eigen::Vector3cd sol = inv_[j].cast<cplx>() * r;
        for (int s = 0; s < 3; ++s) U[s][j] = sol(s);
      }
      double change = 0.0, size = 1.0;
      for (int s = 0; s < 3; ++s) {
        Field next = d_.to_physical(U[s]);
        for (std::size_t i = 0; i < n; ++i) {
          change = std::max(change, std::abs(next[i] - Uphys[s][i]));
          size = std::max(size, std::abs(next[i]));
        }
        Uphys[s] = std::move(next);
        const Spectrum fh = d_.nonlinear_hat(Uphys[s]);
        for (std::size_t j = 0; j < n; ++j) N[s][j] = m[j] * fh[j] + src[s][j];
      }
      if (!std::isfinite(change)) break;
      if (change <= opt.tolerance * size) {
        converged = true;
        break;
      }
    }
    if (!converged) return false;

    out.assign(n, cplx(0.0));
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = start.u_hat[j];
      for (int s = 0; s < 3; ++s) acc += d_weights_(s) * (U[s][j] - start.u_hat[j]);
      out[j] = acc;
    }
    return true;
  }

 private:
  const Discretization& d_;
  double h_;
  Eigen::Matrix3d A_;
  std::array<double, 3> c_{};
  Eigen::RowVector3d d_weights_;
  std::vector<Eigen::Matrix3d> inv_;
};

/// Advances `start` by tau, splitting into 2^j substeps when the iteration
/// fails to contract.
inline State gauss_rk6_step(const Discretization& d, const State& start, double tau, const Source* g = nullptr,
                            const GaussOptions& opt = {}) {
  for (int halving = 0; halving <= opt.max_halvings; ++halving) {
    const int sub = 1 << halving;
    const double h = tau / sub;
    const GaussRK3 rk(d, h);
    State cur = start;
    bool ok = true;
    for (int i = 0; i < sub && ok; ++i) {
      Spectrum next;
      ok = rk.advance(cur, g, opt, next);
      if (ok) cur = make_state(d, std::move(next), start.t + (i + 1) * h, g);
    }
    if (ok) {
      cur.t = start.t + tau;
      return cur;
    }
  }
  std::ostringstream os;
  os << "Gauss collocation starter: fixed-point iteration did not converge down to tau/" << (1 << opt.max_halvings);
  throw StarterFailure(os.str());
}

/// u^0 .. u^{k-1}: u0 followed by k-1 Gauss collocation steps of size tau.
inline std::vector<State> gauss_rk6_start(const Discretization& d, const Field& u0, double tau, int k,
                                          const Source* g = nullptr, double t0 = 0.0, const GaussOptions& opt = {}) {
  if (k < 1) throw std::invalid_argument("gauss_rk6_start: k must be >= 1");
  std::vector<State> out;
  out.push_back(make_state(d, u0, t0, g));
  for (int i = 1; i < k; ++i) {
    State next = gauss_rk6_step(d, out.back(), tau, g, opt);
    next.t = t0 + i * tau;
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace imexlmm::pde
