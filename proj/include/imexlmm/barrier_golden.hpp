#pragma once

// Published entries of the k = 7 inequality system Q w <= q, typed in by hand.
// Kept apart from the assembler so that a transcription slip and an assembly
// bug cannot cancel.

#include "imexlmm/barrier.hpp"

#include <sstream>

namespace imexlmm::golden {

namespace detail {

inline QuadExt r(long n, long d = 1) { return QuadExt(Rational(n, d)); }
inline QuadExt s(long a, long b) { return {Rational(a), Rational(b)}; }  // a + b sqrt 3

}  // namespace detail

inline FarkasSystem farkas_k7() {
  using detail::r;
  using detail::s;
  const QuadExt c1 = s(-3734, 2183), c2 = s(-41, 24), c3 = s(-233, 134), c4 = s(-7, 4), c5 = s(-67, 29);
  const QuadExt d1 = s(-3734, -2183), d2 = s(-41, -24), d3 = s(-233, -134), d4 = s(-7, -4), d5 = s(-67, -29);

  const std::vector<std::vector<QuadExt>> q1_rows = {
      {r(0), r(0), r(0), r(0), r(0), r(0), r(0)},
      {c1 / r(720), r(7) * c2 / r(96), c3 / r(288), r(7) * c4 / r(480), c4 / r(1440), r(0), r(0)},
      {r(91, 720), r(1, 1440), r(-35, 288), r(-59, 1440), r(-7, 1440), r(-1, 5040), r(0)},
      {r(649, 180), r(35, 12), r(8, 9), r(7, 60), r(1, 180), r(0), r(0)},
      {r(1197, 80), r(2237, 160), r(189, 32), r(201, 160), r(21, 160), r(3, 560), r(0)},
      {d1 / r(720), r(7) * d2 / r(96), d3 / r(288), r(7) * d4 / r(480), d4 / r(1440), r(0), r(0)},
      {r(-2156, 45), r(-1708, 45), r(-133, 9), r(-136, 45), r(-14, 45), r(-4, 315), r(0)},
  };
  const std::vector<std::vector<QuadExt>> q2_rows = {
      {r(-1, 2), r(0), r(0), r(0), r(0), r(0), r(0)},
      {r(7) * c5 / r(240), c1 / r(2160), r(7) * c2 / r(384), c3 / r(1440), r(7) * c4 / r(2880), c4 / r(10080), r(0)},
      {r(-49, 120), r(343, 2160), r(31, 384), r(7, 1440), r(-1, 960), r(-1, 10080), r(1)},
      {r(7, 30), r(649, 540), r(35, 48), r(8, 45), r(7, 360), r(1, 1260), r(0)},
      {r(9, 20), r(147, 80), r(169, 128), r(63, 160), r(17, 320), r(3, 1120), r(-27)},
      {r(7) * d5 / r(240), d1 / r(2160), r(7) * d2 / r(384), d3 / r(1440), r(7) * d4 / r(2880), d4 / r(10080), r(0)},
      {r(-104, 15), r(-1148, 135), r(-13, 3), r(-49, 45), r(-2, 15), r(-2, 315), r(64)},
  };
  const QVector q1 = {r(1), r(-7) * c5 / r(120), r(403, 420), r(-7, 15), r(-333, 70), r(-7) * d5 / r(120), r(2416, 105)};

  FarkasSystem sys;
  sys.k = 7;
  sys.Q = QMatrix(14, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      sys.Q(i, j) = q1_rows[i][j];
      sys.Q(7 + i, j) = q2_rows[i][j];
    }
  sys.q = q1;
  for (int i = 0; i < 7; ++i) sys.q.push_back(r(1, 2));
  return sys;
}

/// Throws InvariantViolation naming the first differing entry.
inline void check_against_published(const FarkasSystem& sys) {
  const FarkasSystem ref = farkas_k7();
  if (sys.k != 7 || sys.Q.rows() != 14 || sys.Q.cols() != 7 || sys.q.size() != 14)
    throw InvariantViolation("Farkas system: shape differs from the published k = 7 system");
  for (std::size_t i = 0; i < 14; ++i) {
    for (std::size_t j = 0; j < 7; ++j)
      if (sys.Q(i, j) != ref.Q(i, j)) {
        std::ostringstream os;
        os << "Farkas system: Q(" << i + 1 << "," << j + 1 << ") = " << sys.Q(i, j) << ", published " << ref.Q(i, j);
        throw InvariantViolation(os.str());
      }
    if (sys.q[i] != ref.q[i]) {
      std::ostringstream os;
      os << "Farkas system: q(" << i + 1 << ") = " << sys.q[i] << ", published " << ref.q[i];
      throw InvariantViolation(os.str());
    }
  }
}

}  // namespace imexlmm::golden
