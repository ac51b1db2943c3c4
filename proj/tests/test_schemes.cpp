#include "imexlmm/schemes.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace imexlmm;
using testutil::R;
using testutil::Rs;

namespace {

// Lagrange-interpolation oracle for BDFk, independent of the Vandermonde path:
// A_i = l_i'(0) on nodes 0,-1,..,-k; Bhat_i = l_i(0) on nodes -1,..,-k.
SchemeCoefficients lagrange_bdf(int k) {
  SchemeCoefficients s;
  s.k = k;
  for (int i = 0; i <= k; ++i) {
    // l_i'(0) = sum_{j != i} 1/(x_i - x_j) * prod_{l != i,j} (0 - x_l)/(x_i - x_l)
    Rational d(0);
    for (int j = 0; j <= k; ++j) {
      if (j == i) continue;
      Rational term = Rational(1) / Rational(-i + j);
      for (int l = 0; l <= k; ++l) {
        if (l == i || l == j) continue;
        term *= Rational(l) / Rational(-i + l);
      }
      d += term;
    }
    s.A.push_back(d);
    s.B.push_back(i == 0 ? Rational(1) : Rational(0));
  }
  for (int i = 1; i <= k; ++i) {
    Rational v(1);
    for (int l = 1; l <= k; ++l)
      if (l != i) v *= Rational(l) / Rational(l - i);
    s.Bhat.push_back(v);
  }
  return s;
}

}  // namespace

TEST(Schemes, BdfMatchesLagrangeOracle) {
  for (int k = 1; k <= 6; ++k) {
    const auto s = bdf_coefficients(k);
    const auto o = lagrange_bdf(k);
    EXPECT_EQ(s.A, o.A) << "k=" << k;
    EXPECT_EQ(s.B, o.B) << "k=" << k;
    EXPECT_EQ(s.Bhat, o.Bhat) << "k=" << k;
  }
}

TEST(Schemes, BdfReformedColumns) {
  const std::vector<std::vector<Rational>> a = {
      Rs({"1"}),
      Rs({"3/2", "-1/2"}),
      Rs({"11/6", "-7/6", "1/3"}),
      Rs({"25/12", "-23/12", "13/12", "-1/4"}),
      Rs({"137/60", "-163/60", "137/60", "-21/20", "1/5"}),
      Rs({"49/20", "-71/20", "79/20", "-163/60", "31/30", "-1/6"}),
  };
  const std::vector<std::vector<Rational>> bhat = {
      Rs({"0"}),
      Rs({"1", "0"}),
      Rs({"2", "-1", "0"}),
      Rs({"3", "-3", "1", "0"}),
      Rs({"4", "-6", "4", "-1", "0"}),
      Rs({"5", "-10", "10", "-5", "1", "0"}),
  };
  for (int k = 1; k <= 6; ++k) {
    const auto r = reform(bdf_coefficients(k));
    EXPECT_EQ(r.a, a[static_cast<std::size_t>(k - 1)]) << "k=" << k;
    EXPECT_EQ(r.bhat, bhat[static_cast<std::size_t>(k - 1)]) << "k=" << k;
    std::vector<Rational> b(static_cast<std::size_t>(k), Rational(0));
    b[0] = R("1/2");
    EXPECT_EQ(r.b, b);
  }
}

TEST(Schemes, BdfOutOfRangeThrows) {
  EXPECT_THROW(bdf_coefficients(0), RangeError);
  EXPECT_THROW(bdf_coefficients(7), RangeError);
}

TEST(Schemes, Bdf2FromZeroParameters) {
  const auto s = lmm_from_parameters(ParameterVector{Rational(0), Rational(0)});
  EXPECT_EQ(s.A, Rs({"3/2", "-2", "1/2"}));
  EXPECT_EQ(s.B, Rs({"1", "0", "0"}));
  EXPECT_EQ(s.Bhat, Rs({"2", "-1"}));
}

TEST(Schemes, Bdf1FromParameter) {
  const auto s = lmm_from_parameters(ParameterVector{Rational(0)});
  EXPECT_EQ(s.A, Rs({"1", "-1"}));
  EXPECT_EQ(s.B, Rs({"1", "0"}));
  EXPECT_EQ(s.Bhat, Rs({"1"}));
  const auto r = reform(s);
  EXPECT_EQ(r.a, Rs({"1"}));
  EXPECT_EQ(r.b, Rs({"1/2"}));
  EXPECT_TRUE(r.chat.empty());
}

TEST(Schemes, Bdf3Chat) {
  const auto r = reform(bdf_coefficients(3));
  EXPECT_EQ(r.chat, Rs({"3/2", "1/2"}));
}

TEST(Schemes, SixthOrderTable) {
  const auto s = lmm6_scheme();
  EXPECT_EQ(s.A, Rs({"2617/200", "-6897/200", "4481/120", "-319/12", "647/40", "-4231/600", "911/600"}));
  EXPECT_EQ(s.B, Rs({"1525/288", "-2999/7200", "-4001/720", "79/144", "557/288", "-827/1440", "-23/100"}));
  EXPECT_EQ(s.Bhat, Rs({"225751/7200", "-122377/1440", "15329/144", "-11159/144", "44923/1440", "-39781/7200"}));
  const auto r = reform(s);
  EXPECT_EQ(r.a, Rs({"2617/200", "-107/5", "1913/120", "-1277/120", "83/15", "-911/600"}));
  EXPECT_EQ(r.b, Rs({"1381/288", "13963/3600", "-1007/600", "-4067/3600", "5791/7200", "23/100"}));
  EXPECT_EQ(r.bhat, Rs({"218551/7200", "-196667/3600", "31093/600", "-92417/3600", "39781/7200", "0"}));
}

TEST(Schemes, OrderReports) {
  const auto rep6 = verify_order_conditions(lmm6_scheme());
  EXPECT_EQ(rep6.order, 6);
  EXPECT_TRUE(rep6.normalized());
  for (const auto& x : rep6.implicit_residuals) EXPECT_EQ(x, 0);
  for (const auto& x : rep6.explicit_residuals) EXPECT_EQ(x, 0);

  EXPECT_EQ(verify_order_conditions(bdf_coefficients(6)).order, 6);

  auto broken = bdf_coefficients(2);
  broken.A[0] += 1;
  const auto rep = verify_order_conditions(broken);
  EXPECT_EQ(rep.order, 0);
  EXPECT_EQ(rep.consistency, 1);
}

TEST(Schemes, CheckShapeRejectsBadTables) {
  auto s = bdf_coefficients(3);
  s.Bhat.pop_back();
  EXPECT_THROW(check_shape(s), std::invalid_argument);
  auto z = bdf_coefficients(3);
  z.A[0] = 0;
  EXPECT_THROW(check_shape(z), std::invalid_argument);
}

TEST(SchemesProperty, ParameterRoundTrip) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> num(-400, 400), den(1, 60), kd(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = kd(rng);
    ParameterVector w;
    for (int i = 0; i < k; ++i) w.emplace_back(num(rng), den(rng));
    const auto s = lmm_from_parameters(w);
    EXPECT_EQ(parameters_from_scheme(s), w);
    const auto rep = verify_order_conditions(s);
    EXPECT_EQ(rep.order, k);
    EXPECT_TRUE(rep.normalized());
    // bhat_{k-1} = -Bhat_k follows from sum Bhat = 1
    const auto r = reform(s);
    if (k >= 2) EXPECT_EQ(r.bhat[static_cast<std::size_t>(k - 2)], -s.Bhat.back());
    for (std::size_t i = 1; i < r.chat.size(); ++i) EXPECT_GE(r.chat[i - 1], r.chat[i]);
  }
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(to_string(R("-6/4")), "-3/2");
  EXPECT_EQ(to_string(R("+8")), "8");
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
