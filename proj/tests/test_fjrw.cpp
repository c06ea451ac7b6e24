#include <gtest/gtest.h>

#include "msp/fjrw.hpp"
#include "properties.hpp"

using namespace msp;
using namespace msp::fjrw;

TEST(Bernoulli, Values) {
  EXPECT_EQ(bernoulli_eval(1, Rat(0)), rat(-1, 2));
  EXPECT_EQ(bernoulli_eval(2, Rat(0)), rat(1, 6));
  EXPECT_EQ(bernoulli_eval(4, Rat(0)), rat(-1, 30));
  // B_2(x) = x^2 - x + 1/6
  EXPECT_EQ(bernoulli_eval(2, rat(2, 5)), rat(4, 25) - rat(2, 5) + rat(1, 6));
}

TEST(BernoulliProperty, DifferenceIdentity) {
  auto r = props::bernoulli_difference(8);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Sectors, VanishingAndDimension) {
  EXPECT_EQ(fjrw_vdim(1, {1}), 1);
  EXPECT_FALSE(fjrw_vdim(1, {2}).has_value());
  EXPECT_EQ(fjrw_vdim(2, {2, 2}), 0);
  EXPECT_FALSE(fjrw_vanishes(1, {1}));
  EXPECT_TRUE(fjrw_vanishes(1, {3, 3, 1, 1, 2}));
  EXPECT_FALSE(fjrw_vanishes(0, {1, 2, 3}));
  EXPECT_FALSE(fjrw_vanishes(0, {1, 1, 4}));
  EXPECT_FALSE(fjrw_vanishes(0, {1, 1, 1, 2, 3}));
  EXPECT_TRUE(fjrw_vanishes(0, {2, 2, 2}));
  EXPECT_THROW(fjrw_vdim(1, {0}), FjrwError);
}

TEST(Sectors, DualRankOfSpecialVertex) {
  // k = 7g - 2 + 5m insertions of zeta_5^2 give rank 3 - 7g - 4m, which is the
  // number of t-factors the special graph has to absorb.
  for (int g = 1; g <= 3; ++g)
    for (int m = 0; m <= 2; ++m) {
      std::vector<int> ms(7 * g - 2 + 5 * m, 2);
      EXPECT_EQ(dual_rank(g, ms), 3 - 7 * g - 4 * m);
    }
  EXPECT_EQ(dual_rank(1, {1}), -1);
}

TEST(Seeds, ExceptionalGenusZeroDegree) { EXPECT_EQ(exceptional_g0_degree(), rat(1, 5)); }

TEST(Seeds, GenusOnePsiIntegral) {
  auto d = g1_single_marking();
  EXPECT_EQ(d.psi_on_m0, rat(1, 600));
  EXPECT_EQ(d.psi_on_m1, rat(1, 25));
  EXPECT_EQ(d.m0_weight, -1024);
  EXPECT_EQ(d.psi_virtual(), Rat(-1024) / 600 + rat(1, 25));
}

TEST(GrrCoefficients, DegreeOne) {
  auto c = grr_chern_character({1}, 1);
  // B_2(-1/5)/2 = (1/25 + 1/5 + 1/6)/2
  EXPECT_EQ(c.kappa, (rat(1, 25) + rat(1, 5) + rat(1, 6)) / 2);
  EXPECT_EQ(c.psi_bar.at(0), -bernoulli_eval(2, rat(4, 5)) / 2);
  ASSERT_EQ(c.boundary.size(), 5u);
  EXPECT_EQ(c.boundary[0], 5 * bernoulli_eval(2, Rat(0)) / 2 / 2 / 5);
  EXPECT_EQ(c.boundary[1], c.boundary[4]);
}

TEST(GrrCoefficients, GenusOneChernCharacterMatchesDirectComputation) {
  // Independent route. On M_0 the bundle L(-x) is a fifth root of the Hodge
  // bundle E, so R pi_* L^vee = E^{-1/5} (x) (-E^vee) and ch_1 = (6/5) lambda_1.
  // On M_1 it is E^{1/5} times a torsion bundle T with R pi_* T^vee = 0, so
  // ch_1 = (1/5) lambda_1. The lambda_1 degrees are (1/5)(1/24) and
  // (24/5)(1/24).
  Rat on_m0 = rat(6, 5) * rat(1, 5) * rat(1, 24);
  Rat on_m1 = rat(1, 5) * rat(24, 5) * rat(1, 24);
  EXPECT_EQ(g1_single_marking_ch1(), -1024 * on_m0 + on_m1);
}

TEST(GenusOneBracket, ClosedForm) {
  // With w = -t the bracket is (5/3 - 51/5)/t.
  RatFuncT w = RatFuncT::t_pow(1, -1);
  EXPECT_EQ(g1_single_flag_bracket(w), RatFuncT::t_pow(-1, rat(5, 3) - rat(51, 5)));
}

TEST(EulerFromCh, LineBundleTwist) {
  // A rank-one bundle with ch_1 = x, twisted by weight a: e = a t + x.
  SpacePtr p4 = make_p4_space();
  ClassExpr x = ClassExpr::generator(p4, 0);
  std::vector<ClassExpr> ch{ClassExpr(p4, 1), x, x * x * rat(1, 2), x * x * x * rat(1, 6), x * x * x * x * rat(1, 24)};
  ClassExpr e = euler_from_ch(ch, 1, Rat(3), p4);
  EXPECT_EQ(e, ClassExpr(p4, RatFuncT::t_pow(1, 3)) + x);
}
