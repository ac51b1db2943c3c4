#pragma once

// Feasibility of energy-dissipative k-step schemes in the moment parameters w,
// and the exact Farkas certificate showing that no seventh-order scheme exists.
//
// Positivity of T(x; a) and T(x; b) at the Chebyshev points cos(j pi/(k-1))
// is linear in w and reads Q w <= q. For k = 7 a multiplier lambda >= 0 with
// Q^T lambda = 0 and q^T lambda < 0 rules this out; everything here is exact
// in Q(sqrt 3).

#include "imexlmm/chebpoly.hpp"
#include "imexlmm/errors.hpp"
#include "imexlmm/exact_linalg.hpp"
#include "imexlmm/quadext.hpp"
#include "imexlmm/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace imexlmm {

using QMatrix = DenseMatrix<QuadExt>;
using QVector = std::vector<QuadExt>;

struct FarkasSystem {
  int k = 0;
  QMatrix Q;  // 2k x k, rows of Q1 then Q2
  QVector q;  // 2k

  QMatrix Q1() const { return block(0); }
  QMatrix Q2() const { return block(static_cast<std::size_t>(k)); }
  QVector q1() const { return {q.begin(), q.begin() + k}; }
  QVector q2() const { return {q.begin() + k, q.end()}; }

 private:
  QMatrix block(std::size_t first) const {
    const auto n = static_cast<std::size_t>(k);
    QMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = Q(first + i, j);
    return b;
  }
};

namespace barrier_detail {

/// cos(n pi / 6) as an element of Q(sqrt 3).
inline QuadExt cos_pi_sixths(long n) {
  n %= 12;
  if (n < 0) n += 12;
  const Rational half(1, 2);
  switch (n) {
    case 0: return QuadExt(1);
    case 1: return {Rational(0), half};
    case 2: return QuadExt(half);
    case 3: return QuadExt(0);
    case 4: return QuadExt(Rational(-half));
    case 5: return {Rational(0), Rational(-half)};
    case 6: return QuadExt(-1);
    case 7: return {Rational(0), Rational(-half)};
    case 8: return QuadExt(Rational(-half));
    case 9: return QuadExt(0);
    case 10: return QuadExt(half);
    default: return {Rational(0), half};
  }
}

inline QMatrix lower_ones(std::size_t k) {
  QMatrix e(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) e(i, j) = QuadExt(1);
  return e;
}

}  // namespace barrier_detail

/// Node-value matrix Z_{j,m} = T_m(cos(j pi/(k-1))). Exact only when every
/// cosine lies in Q(sqrt 3), i.e. k - 1 divides 6.
inline QMatrix chebyshev_node_matrix(int k) {
  if (k < 2 || 6 % (k - 1) != 0)
    throw std::invalid_argument("chebyshev_node_matrix: k must be one of 2, 3, 4, 7 for exact Q(sqrt 3) entries");
  const auto n = static_cast<std::size_t>(k);
  const long scale = 6 / (k - 1);
  QMatrix z(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) z(j, m) = barrier_detail::cos_pi_sixths(static_cast<long>(m * j) * scale);
  return z;
}

inline FarkasSystem build_farkas_system(int k = 7) {
  const QMatrix Z = chebyshev_node_matrix(k);
  const auto n = static_cast<std::size_t>(k);

  QVector nodes1, nodes2;
  for (int i = 0; i <= k; ++i) nodes1.emplace_back(-i);
  for (int i = 0; i < k; ++i) nodes2.emplace_back(-i);
  const QMatrix W1inv = inverse(transposed_vandermonde(nodes1));
  const QMatrix W2inv = inverse(transposed_vandermonde(nodes2));
  const QMatrix E = barrier_detail::lower_ones(n);

  QMatrix E0(n, n + 1);  // [E_k, 0]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) E0(i, j) = E(i, j);

  QMatrix sel(n + 1, n);  // w -> [0; 0; w_1..w_{k-1}]
  for (std::size_t i = 0; i + 1 < n; ++i) sel(i + 2, i) = QuadExt(1);

  QMatrix dz(n, n + 1);  // [D_k, -z]
  QuadExt power(1);
  for (std::size_t m = 0; m < n; ++m) {
    dz(m, m) = QuadExt(Rational(1, static_cast<long>(m + 1)));
    dz(m, n) = -power;
    power *= QuadExt(-k);
  }
  QMatrix shift(n + 1, n);  // w -> [0; w_1..w_k]
  for (std::size_t i = 0; i < n; ++i) shift(i + 1, i) = QuadExt(1);

  const QMatrix ZEW1 = Z * E0 * W1inv;
  const QMatrix ZEW2 = Z * E * W2inv;
  const QMatrix Q1 = -(ZEW1 * sel);
  const QMatrix Q2 = -(ZEW2 * dz * shift);

  QVector e1_ext(n + 1, QuadExt(0));  // [0; e_1]
  e1_ext[1] = QuadExt(1);
  const QVector q1 = ZEW1 * e1_ext;
  QVector e1(n, QuadExt(0));
  e1[0] = QuadExt(1);
  QVector h(n, QuadExt(1));
  h[0] = QuadExt(Rational(1, 2));
  const QVector zh = Z * h;
  QVector q2 = ZEW2 * e1;
  for (std::size_t i = 0; i < n; ++i) q2[i] -= zh[i];

  FarkasSystem sys;
  sys.k = k;
  sys.Q = QMatrix(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      sys.Q(i, j) = Q1(i, j);
      sys.Q(n + i, j) = Q2(i, j);
    }
  sys.q = q1;
  sys.q.insert(sys.q.end(), q2.begin(), q2.end());
  return sys;
}

struct FarkasReport {
  std::vector<QVector> kernel_vectors;  // r^(1), r^(2), r^(3)
  QVector lambda;
  std::vector<bool> kernel_ok;
  bool lambda_nonnegative = false;
  std::vector<int> nonzero_indices;  // 1-based
  QuadExt q_dot_lambda;
  bool passed = false;
};

namespace barrier_detail {

inline QuadExt qe(long p_num, long p_den, long q_num, long q_den) {
  return {Rational(p_num, p_den), Rational(q_num, q_den)};
}

inline QVector transpose_times(const QMatrix& Q, const QVector& r) {
  QVector out(Q.cols(), QuadExt(0));
  for (std::size_t i = 0; i < Q.rows(); ++i) {
    if (r[i] == QuadExt(0)) continue;
    for (std::size_t j = 0; j < Q.cols(); ++j) out[j] += Q(i, j) * r[i];
  }
  return out;
}

}  // namespace barrier_detail

/// Checks the seventh-order certificate exactly. Throws CertificateInvalid
/// when any of the conditions fails.
inline FarkasReport verify_farkas_certificate(const FarkasSystem& sys) {
  using barrier_detail::qe;
  if (sys.k != 7) throw std::invalid_argument("verify_farkas_certificate: the certificate is for k = 7");

  FarkasReport rep;
  rep.kernel_vectors.assign(3, QVector(14, QuadExt(0)));
  auto& r1 = rep.kernel_vectors[0];
  auto& r2 = rep.kernel_vectors[1];
  auto& r3 = rep.kernel_vectors[2];
  r1[2] = qe(-7, 20, 6, 20);
  r1[4] = qe(37, 540, 94, 540);
  r1[6] = qe(-13, 640, 24, 640);
  r1[12] = QuadExt(1);
  r2[2] = QuadExt(Rational(2, 5));
  r2[4] = QuadExt(Rational(-62, 135));
  r2[6] = QuadExt(Rational(-11, 80));
  r2[10] = QuadExt(1);
  r3[2] = qe(-7, 20, -6, 20);
  r3[4] = qe(37, 540, -94, 540);
  r3[6] = qe(-13, 640, -24, 640);
  r3[8] = QuadExt(1);

  const QuadExt c2 = qe(3, 8, -1, 8);  // (3 - sqrt 3)/8
  const QuadExt c3 = qe(2, 1, -1, 1);  // 2 - sqrt 3
  rep.lambda.assign(14, QuadExt(0));
  for (std::size_t i = 0; i < 14; ++i) rep.lambda[i] = r1[i] + c2 * r2[i] + c3 * r3[i];

  const QVector zero(7, QuadExt(0));
  for (const auto& r : rep.kernel_vectors) rep.kernel_ok.push_back(barrier_detail::transpose_times(sys.Q, r) == zero);
  const bool lambda_kernel = barrier_detail::transpose_times(sys.Q, rep.lambda) == zero;

  rep.lambda_nonnegative = true;
  for (std::size_t i = 0; i < 14; ++i) {
    if (rep.lambda[i].sign() < 0) rep.lambda_nonnegative = false;
    if (rep.lambda[i].sign() != 0) rep.nonzero_indices.push_back(static_cast<int>(i + 1));
  }
  const bool support_ok = rep.nonzero_indices == std::vector<int>{5, 9, 11, 13} &&
                          rep.lambda[4] == qe(15, 27, -5, 27) && rep.lambda[8] == c3 && rep.lambda[10] == c2 &&
                          rep.lambda[12] == QuadExt(1);

  for (std::size_t i = 0; i < 14; ++i) rep.q_dot_lambda += sys.q[i] * rep.lambda[i];

  std::ostringstream err;
  for (std::size_t l = 0; l < 3; ++l)
    if (!rep.kernel_ok[l]) err << " Q^T r(" << l + 1 << ") != 0;";
  if (!lambda_kernel) err << " Q^T lambda != 0;";
  if (!rep.lambda_nonnegative) err << " lambda has a negative entry;";
  if (!support_ok) err << " lambda support differs from {5, 9, 11, 13};";
  if (rep.q_dot_lambda.sign() >= 0) err << " q^T lambda = " << rep.q_dot_lambda << " is not negative;";
  if (!err.str().empty()) throw CertificateInvalid("Farkas certificate rejected:" + err.str());
  rep.passed = true;
  return rep;
}

inline FarkasReport verify_farkas_certificate() { return verify_farkas_certificate(build_farkas_system(7)); }

/// True when Q w <= q holds row by row (exact).
inline bool satisfies_node_inequalities(const FarkasSystem& sys, const std::vector<Rational>& w) {
  if (w.size() != static_cast<std::size_t>(sys.k)) throw std::invalid_argument("satisfies_node_inequalities: size mismatch");
  for (std::size_t i = 0; i < sys.Q.rows(); ++i) {
    QuadExt acc(0);
    for (std::size_t j = 0; j < sys.Q.cols(); ++j) acc += sys.Q(i, j) * QuadExt(w[j]);
    if (acc > sys.q[i]) return false;
  }
  return true;
}

struct FeasibilityResult {
  double min_a = 0.0;
  double min_b = 0.0;
  bool feasible = false;
};

template <class T>
FeasibilityResult evaluate_feasibility(const BasicParameterVector<T>& w) {
  if (w.size() < 2) throw std::invalid_argument("evaluate_feasibility: need k >= 2");
  const auto r = to_double(reform(lmm_from_parameters(w)));
  FeasibilityResult out;
  out.min_a = global_min(ChebSeries(r.a)).min_value;
  out.min_b = global_min(ChebSeries(r.b)).min_value;
  out.feasible = out.min_a > 0.0 && out.min_b > 0.0;
  return out;
}

struct SearchOptions {
  int k = 6;
  long budget = 20000;  // objective evaluations
  std::uint64_t seed = 1;
  double kappa = 1.0;
  int restarts = 20;
};

struct SearchResult {
  std::vector<double> w;
  FeasibilityResult minima;  // re-evaluated with the exact rational value of w
  double objective = -std::numeric_limits<double>::infinity();
  long evaluations = 0;
};

/// Multi-start compass search maximizing min(min_a, min_b / kappa). The first
/// start is w = 0 (BDFk), the second the sixth-order point when k = 6; later
/// starts perturb the incumbent.
inline SearchResult search_feasible(const SearchOptions& opt) {
  if (opt.k < 2) throw std::invalid_argument("search_feasible: need k >= 2");
  if (opt.budget < 1 || opt.restarts < 1 || !(opt.kappa > 0.0))
    throw std::invalid_argument("search_feasible: budget, restarts and kappa must be positive");
  const auto n = static_cast<std::size_t>(opt.k);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  SearchResult best;
  best.w.assign(n, 0.0);
  const auto objective = [&](const std::vector<double>& w) {
    ++best.evaluations;
    try {
      const auto f = evaluate_feasibility(w);
      const double v = std::min(f.min_a, f.min_b / opt.kappa);
      return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  const long per_start = std::max<long>(1, opt.budget / opt.restarts);
  for (int start = 0; start < opt.restarts && best.evaluations < opt.budget; ++start) {
    std::vector<double> w(n, 0.0);
    if (start == 1 && opt.k == 6) {
      w = to_double(lmm6_parameters());
    } else if (start > 0) {
      w = best.w;
      for (auto& x : w) x += 0.5 * std::max(1.0, std::abs(x)) * unit(rng);
    }
    std::vector<double> step(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = 0.1 * std::max(1.0, std::abs(w[i]));
    double fw = objective(w);
    const long stop = std::min(opt.budget, best.evaluations - 1 + per_start);
    while (best.evaluations < stop) {
      bool improved = false;
      for (std::size_t i = 0; i < n && best.evaluations < stop; ++i) {
        for (double dir : {1.0, -1.0}) {
          auto trial = w;
          trial[i] += dir * step[i];
          const double ft = objective(trial);
          if (ft > fw) {
            w = std::move(trial);
            fw = ft;
            improved = true;
            break;
          }
          if (best.evaluations >= stop) break;
        }
      }
      if (!improved) {
        double largest = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          step[i] *= 0.5;
          largest = std::max(largest, step[i] / std::max(1.0, std::abs(w[i])));
        }
        if (largest < 1e-12) break;
      }
    }
    if (fw > best.objective) {
      best.objective = fw;
      best.w = w;
    }
  }

  // exact re-evaluation; doubles convert to rationals without rounding
  ParameterVector exact;
  for (double x : best.w) exact.emplace_back(x);
  best.minima = evaluate_feasibility(exact);
  return best;
}

}  // namespace imexlmm
