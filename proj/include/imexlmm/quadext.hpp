#pragma once

// Exact arithmetic in Q(sqrt 3): elements p + q*sqrt(3) with rational p, q.

#include "imexlmm/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace imexlmm {

class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(int p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational p) : p_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational p, Rational q) : p_(std::move(p)), q_(std::move(q)) {}

  static QuadExt sqrt3() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt3_part() const { return q_; }

  bool is_rational() const { return q_ == 0; }

  /// p^2 - 3 q^2; nonzero for every nonzero element since sqrt 3 is irrational.
  Rational norm() const { return p_ * p_ - 3 * q_ * q_; }
  QuadExt conjugate() const { return {p_, -q_}; }

  /// Exact sign: -1, 0 or +1.
  int sign() const {
    const int sp = p_.sign(), sq = q_.sign();
    if (sp >= 0 && sq >= 0) return (sp > 0 || sq > 0) ? 1 : 0;
    if (sp <= 0 && sq <= 0) return -1;
    // opposite signs: compare p^2 with 3 q^2
    const Rational d = p_ * p_ - 3 * q_ * q_;
    return sp > 0 ? d.sign() : -d.sign();
  }

  QuadExt& operator+=(const QuadExt& o) {
    p_ += o.p_;
    q_ += o.q_;
    return *this;
  }
  QuadExt& operator-=(const QuadExt& o) {
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
  }
  QuadExt& operator*=(const QuadExt& o) {
    Rational p = p_ * o.p_ + 3 * q_ * o.q_;
    q_ = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(p);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    const Rational n = o.norm();
    if (n == 0) throw std::domain_error("QuadExt: division by zero");
    *this *= o.conjugate();
    p_ /= n;
    q_ /= n;
    return *this;
  }

  QuadExt inverse() const { return QuadExt(1) / *this; }

  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
  friend QuadExt operator-(const QuadExt& a) { return {-a.p_, -a.q_}; }

  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }
  friend bool operator<(const QuadExt& a, const QuadExt& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadExt& a, const QuadExt& b) { return b < a; }
  friend bool operator<=(const QuadExt& a, const QuadExt& b) { return !(b < a); }
  friend bool operator>=(const QuadExt& a, const QuadExt& b) { return !(a < b); }

 private:
  Rational p_{0};
  Rational q_{0};
};

inline double to_double(const QuadExt& x) {
  return to_double(x.rational_part()) + to_double(x.sqrt3_part()) * std::sqrt(3.0);
}

/// "p/q + r/s*sqrt(3)"; the sqrt(3) term is dropped when it vanishes.
inline std::string to_string(const QuadExt& x) {
  if (x.sqrt3_part() == 0) return to_string(x.rational_part());
  const Rational& q = x.sqrt3_part();
  std::string s = to_string(x.rational_part());
  s += q < 0 ? " - " : " + ";
  s += to_string(q < 0 ? Rational(-q) : q) + "*sqrt(3)";
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << to_string(x); }

}  // namespace imexlmm
