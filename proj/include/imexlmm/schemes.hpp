#pragma once

// Coefficient tables of k-step IMEX linear multistep methods
//
//   sum_{i=0}^k A_i u^{n+1-i} = tau M [ sum_{i=0}^k B_i L u^{n+1-i} + sum_{i=1}^k Bhat_i f(u^{n+1-i}) ]
//
// together with the cumulative-sum ("difference form") coefficients and the
// moment parametrization w_1..w_k used to construct high-order schemes.
// Everything is templated on the scalar so the same code runs in exact
// rational arithmetic and, for searches, in double precision.

#include "imexlmm/errors.hpp"
#include "imexlmm/exact_linalg.hpp"
#include "imexlmm/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace imexlmm {

template <class T>
struct BasicScheme {
  int k = 0;
  std::vector<T> A;     // A_0 .. A_k
  std::vector<T> B;     // B_0 .. B_k
  std::vector<T> Bhat;  // Bhat_1 .. Bhat_k
};

using SchemeCoefficients = BasicScheme<Rational>;

template <class T>
struct BasicReformed {
  std::vector<T> a;     // a_0 .. a_{k-1}
  std::vector<T> b;     // b_0 .. b_{k-1}
  std::vector<T> bhat;  // bhat_1 .. bhat_{k-1}, 0
  std::vector<T> chat;  // chat_1 .. chat_{k-1}
};

using ReformedCoefficients = BasicReformed<Rational>;

/// Free parameters w_1..w_k; w_0 = 1 is implied by the normalization.
template <class T>
using BasicParameterVector = std::vector<T>;
using ParameterVector = BasicParameterVector<Rational>;

namespace detail {

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

template <class T>
T int_power(T base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Throws std::invalid_argument when the table has inconsistent lengths or a
/// vanishing implicit coefficient.
template <class T>
void check_shape(const BasicScheme<T>& s) {
  const auto k = static_cast<std::size_t>(s.k);
  if (s.k < 1) throw std::invalid_argument("scheme: k must be >= 1");
  if (s.A.size() != k + 1 || s.B.size() != k + 1 || s.Bhat.size() != k)
    throw std::invalid_argument("scheme: coefficient vectors must have lengths k+1, k+1, k");
  if (s.A[0] == T(0) || s.B[0] == T(0)) throw std::invalid_argument("scheme: A_0 and B_0 must be nonzero");
}

/// Solves the three transposed Vandermonde systems for the scheme determined
/// by the moments w (length k).
template <class T>
BasicScheme<T> lmm_from_parameters(const BasicParameterVector<T>& w) {
  const int k = static_cast<int>(w.size());
  if (k < 1) throw std::invalid_argument("lmm_from_parameters: need at least one parameter");

  // wt = [w_0, ..., w_{k-1}] with w_0 = 1
  std::vector<T> wt(static_cast<std::size_t>(k));
  wt[0] = T(1);
  for (int m = 1; m < k; ++m) wt[static_cast<std::size_t>(m)] = w[static_cast<std::size_t>(m - 1)];
  const T wk = w[static_cast<std::size_t>(k - 1)];

  std::vector<T> nodes1, nodes2, nodes3;
  for (int i = 0; i <= k; ++i) nodes1.push_back(T(-i));
  for (int i = 0; i < k; ++i) nodes2.push_back(T(-i));
  for (int i = 1; i <= k; ++i) nodes3.push_back(T(-i));

  std::vector<T> rhs1(static_cast<std::size_t>(k + 1), T(0));
  for (int m = 0; m < k; ++m) rhs1[static_cast<std::size_t>(m + 1)] = wt[static_cast<std::size_t>(m)];

  std::vector<T> scaled(static_cast<std::size_t>(k));  // D_k wt
  for (int m = 0; m < k; ++m) scaled[static_cast<std::size_t>(m)] = wt[static_cast<std::size_t>(m)] / T(m + 1);

  std::vector<T> rhs2 = scaled;  // D_k wt - w_k z, z_m = (-k)^m
  for (int m = 0; m < k; ++m) rhs2[static_cast<std::size_t>(m)] -= wk * detail::int_power(T(-k), m);

  BasicScheme<T> s;
  s.k = k;
  s.A = solve(transposed_vandermonde(nodes1), rhs1);
  s.B = solve(transposed_vandermonde(nodes2), rhs2);
  s.B.push_back(wk);
  s.Bhat = solve(transposed_vandermonde(nodes3), scaled);
  return s;
}

/// IMEX-BDFk: B_i = delta_{i,0}, which corresponds to w = 0.
inline SchemeCoefficients bdf_coefficients(int k) {
  if (k < 1 || k > 6) throw RangeError("bdf_coefficients: k must lie in 1..6, got " + std::to_string(k));
  return lmm_from_parameters(ParameterVector(static_cast<std::size_t>(k), Rational(0)));
}

/// Moments of a scheme: w_m = sum_i A_i (-i)^{m+1} for m = 1..k-1, w_k = B_k.
template <class T>
BasicParameterVector<T> parameters_from_scheme(const BasicScheme<T>& s) {
  BasicParameterVector<T> w;
  for (int m = 1; m < s.k; ++m) {
    T acc(0);
    for (int i = 0; i <= s.k; ++i) acc += s.A[static_cast<std::size_t>(i)] * detail::int_power(T(-i), m + 1);
    w.push_back(acc);
  }
  w.push_back(s.B[static_cast<std::size_t>(s.k)]);
  return w;
}

template <class T>
BasicReformed<T> reform(const BasicScheme<T>& s) {
  const auto k = static_cast<std::size_t>(s.k);
  BasicReformed<T> r;
  T acc_a(0), acc_b(0), acc_bh(0);
  for (std::size_t i = 0; i < k; ++i) {
    acc_a += s.A[i];
    acc_b += s.B[i];
    r.a.push_back(acc_a);
    r.b.push_back(i == 0 ? T(acc_b - T(1) + T(1) / T(2)) : T(acc_b - T(1)));
  }
  for (std::size_t i = 1; i < k; ++i) {
    acc_bh += s.Bhat[i - 1];
    r.bhat.push_back(acc_bh - T(1));
  }
  r.bhat.push_back(T(0));
  // chat_i = 1/2 sum_{j>=i} |bhat_j|, i = 1..k-1
  r.chat.assign(k > 0 ? k - 1 : 0, T(0));
  T tail(0);
  for (std::size_t i = k - 1; i-- > 0;) {
    tail += detail::abs_value(r.bhat[i]);
    r.chat[i] = tail / T(2);
  }
  return r;
}

struct OrderReport {
  int order = 0;
  Rational consistency;                    // sum A_i
  std::vector<Rational> implicit_residuals;  // sum A_i(-i)^{m+1} - (m+1) sum B_i(-i)^m
  std::vector<Rational> explicit_residuals;  // same with Bhat
  Rational normalization_A;                // sum A_i(-i) - 1
  Rational normalization_B;                // sum B_i - 1
  Rational normalization_Bhat;             // sum Bhat_i - 1

  bool normalized() const { return normalization_A == 0 && normalization_B == 0 && normalization_Bhat == 0; }
};

/// Exact residuals of the order conditions for m = 0..max_index (defaults to k-1).
inline OrderReport verify_order_conditions(const SchemeCoefficients& s, int max_index = -1) {
  if (max_index < 0) max_index = s.k - 1;
  OrderReport rep;
  for (const auto& a : s.A) rep.consistency += a;
  bool ok = rep.consistency == 0;
  for (int m = 0; m <= max_index; ++m) {
    Rational lhs(0), rb(0), rbh(0);
    for (int i = 0; i <= s.k; ++i) {
      lhs += s.A[static_cast<std::size_t>(i)] * detail::int_power(Rational(-i), m + 1);
      rb += s.B[static_cast<std::size_t>(i)] * detail::int_power(Rational(-i), m);
    }
    for (int i = 1; i <= s.k; ++i) rbh += s.Bhat[static_cast<std::size_t>(i - 1)] * detail::int_power(Rational(-i), m);
    rep.implicit_residuals.push_back(lhs - Rational(m + 1) * rb);
    rep.explicit_residuals.push_back(lhs - Rational(m + 1) * rbh);
    ok = ok && rep.implicit_residuals.back() == 0 && rep.explicit_residuals.back() == 0;
    if (ok) rep.order = m + 1;
  }
  Rational first_moment(0), sum_b(0), sum_bh(0);
  for (int i = 0; i <= s.k; ++i) {
    first_moment += s.A[static_cast<std::size_t>(i)] * Rational(-i);
    sum_b += s.B[static_cast<std::size_t>(i)];
  }
  for (const auto& x : s.Bhat) sum_bh += x;
  rep.normalization_A = first_moment - 1;
  rep.normalization_B = sum_b - 1;
  rep.normalization_Bhat = sum_bh - 1;
  return rep;
}

/// Parameters of the sixth-order energy-dissipative scheme (w_1..w_6).
inline ParameterVector lmm6_parameters() {
  return {Rational(64, 5), Rational(-141, 5), Rational(111), Rational(-1034), Rational(9886), Rational(-23, 100)};
}

inline SchemeCoefficients lmm6_scheme() { return lmm_from_parameters(lmm6_parameters()); }

template <class T>
BasicScheme<double> to_double(const BasicScheme<T>& s) {
  BasicScheme<double> d;
  d.k = s.k;
  for (const auto& x : s.A) d.A.push_back(to_double(x));
  for (const auto& x : s.B) d.B.push_back(to_double(x));
  for (const auto& x : s.Bhat) d.Bhat.push_back(to_double(x));
  return d;
}

template <class T>
BasicReformed<double> to_double(const BasicReformed<T>& r) {
  BasicReformed<double> d;
  for (const auto& x : r.a) d.a.push_back(to_double(x));
  for (const auto& x : r.b) d.b.push_back(to_double(x));
  for (const auto& x : r.bhat) d.bhat.push_back(to_double(x));
  for (const auto& x : r.chat) d.chat.push_back(to_double(x));
  return d;
}

}  // namespace imexlmm
