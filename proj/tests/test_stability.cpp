#include "imexlmm/stability.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace imexlmm;
using testutil::Rs;

TEST(Stability, CharPolysBdf6) {
  const auto c = char_polys(bdf_coefficients(6));
  EXPECT_EQ(c.rho, Rs({"49/20", "-6", "15/2", "-20/3", "15/4", "-6/5", "1/6"}));
  EXPECT_EQ(c.sigma, Rs({"1", "0", "0", "0", "0", "0", "0"}));
  EXPECT_EQ(c.sigma_hat, Rs({"0", "6", "-15", "20", "-15", "6", "-1"}));
}

TEST(Stability, CharPolysBdf1AndSixthOrder) {
  const auto c = char_polys(bdf_coefficients(1));
  EXPECT_EQ(c.rho, Rs({"1", "-1"}));
  EXPECT_EQ(c.sigma, Rs({"1", "0"}));
  EXPECT_EQ(c.sigma_hat, Rs({"0", "1"}));
  EXPECT_EQ(char_polys(lmm6_scheme()).rho.front(), Rational(2617, 200));
}

TEST(Stability, ConsistencyIdentitiesExact) {
  std::vector<SchemeCoefficients> all = {lmm6_scheme()};
  for (int k = 1; k <= 6; ++k) all.push_back(bdf_coefficients(k));
  all.push_back(lmm_from_parameters(Rs({"3/7", "-2", "11/5"})));
  for (const auto& s : all) {
    const auto c = char_polys(s);
    const Rational one(1);
    EXPECT_EQ(poly_eval(c.rho, one), 0);
    EXPECT_EQ(poly_eval(poly_derivative(c.rho), one), 1);
    EXPECT_EQ(poly_eval(c.sigma, one), 1);
    EXPECT_EQ(poly_eval(c.sigma_hat, one), 1);
  }
}

TEST(Stability, RootCondition) {
  EXPECT_TRUE(root_condition(to_double(char_polys(lmm6_scheme()).rho)).zero_stable);
  EXPECT_TRUE(root_condition(to_double(char_polys(bdf_coefficients(6)).rho)).zero_stable);
  const auto dbl = root_condition(std::vector<double>{1.0, -2.0, 1.0});
  EXPECT_FALSE(dbl.zero_stable);
  EXPECT_FALSE(dbl.violations.empty());
  EXPECT_FALSE(root_condition(std::vector<double>{1.0, -2.5}).zero_stable);
  EXPECT_TRUE(root_condition(std::vector<double>{3.0}).zero_stable);
  EXPECT_TRUE(root_condition(std::vector<double>{1.0, 0.0, 1.0}).zero_stable);  // +-i, simple
}

TEST(Stability, PointChecks) {
  const auto bdf6 = char_polys(to_double(bdf_coefficients(6)));
  EXPECT_TRUE(is_stable_point(bdf6, {-1.0, 0.0}, 0.0));
  const auto l6 = char_polys(to_double(lmm6_scheme()));
  EXPECT_TRUE(is_stable_point(l6, {-10.0, 0.0}, 0.0));
  // origin <=> zero stability of rho
  EXPECT_TRUE(is_stable_point(l6, 0.0, 0.0));
  auto unstable = bdf_coefficients(2);
  EXPECT_TRUE(is_stable_point(char_polys(to_double(unstable)), 0.0, 0.0));
  // A_0 = B_0 zI sends a root to infinity
  EXPECT_FALSE(is_stable_point(char_polys(to_double(bdf_coefficients(1))), 1.0, 0.0));
}

TEST(Stability, SliceSymmetryAndOrigin) {
  SliceGrid g;
  g.re_min = -3;
  g.re_max = 1;
  g.im_min = -2;
  g.im_max = 2;
  g.nx = 41;
  g.ny = 41;
  for (auto plane : {SlicePlane::implicit, SlicePlane::explicit_, SlicePlane::imex}) {
    const auto sl = region_slice(lmm6_scheme(), plane, {-1.0, 0.0}, g);
    for (int i = 0; i < g.ny; ++i)
      for (int j = 0; j < g.nx; ++j)
        EXPECT_EQ(sl.mask[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                  sl.mask[static_cast<std::size_t>(g.ny - 1 - i)][static_cast<std::size_t>(j)]);
  }
  const auto sl = region_slice(bdf_coefficients(6), SlicePlane::implicit, 0.0, g);
  EXPECT_TRUE(sl.mask[20][30]);  // (0, 0)
  EXPECT_THROW(region_slice(lmm6_scheme(), SlicePlane::imex, 0.0, SliceGrid{0, 1, 0, 1, 1, 5}), std::invalid_argument);
}

TEST(Stability, Angles) {
  const auto t0 = std::chrono::steady_clock::now();
  const double bdf6 = stability_angle(bdf_coefficients(6));
  const double l6 = stability_angle(lmm6_scheme());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
  EXPECT_NEAR(bdf6, 17.84, 0.05);
  EXPECT_NEAR(l6, 26.15, 0.05);
  EXPECT_EQ(stability_angle(bdf_coefficients(1)), 90.0);
  EXPECT_EQ(stability_angle(bdf_coefficients(2)), 90.0);
}

TEST(Stability, AngleRefinement) {
  AngleOptions fine;
  fine.ray_samples = 400;
  EXPECT_NEAR(stability_angle(lmm6_scheme(), fine), stability_angle(lmm6_scheme()), 0.1);
  EXPECT_NEAR(stability_angle(bdf_coefficients(6), fine), stability_angle(bdf_coefficients(6)), 0.1);
}

TEST(Stability, AngleUndefinedWhenNotZeroStable) {
  // k = 2: rho has roots 1 and (w1 + 1)/(w1 + 3) = 2
  const auto s = lmm_from_parameters(Rs({"-5", "0"}));
  ASSERT_FALSE(root_condition(to_double(char_polys(s).rho)).zero_stable);
  EXPECT_THROW(stability_angle(s), DomainError);
}
