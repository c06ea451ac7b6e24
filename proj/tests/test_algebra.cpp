#include <gtest/gtest.h>

#include "msp/algebra.hpp"
#include "properties.hpp"

using namespace msp;

TEST(Rational, ParseAndPrintLowestTerms) {
  EXPECT_EQ(to_string(parse_rat("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rat("-0/7")), "0");
  EXPECT_EQ(to_string(rat(10, -4)), "-5/2");
  EXPECT_TRUE(is_integer(parse_rat("8/4")));
  EXPECT_EQ(floor_rat(rat(-1, 5)), -1);
  EXPECT_EQ(ceil_rat(rat(-1, 5)), 0);
}

TEST(RatFuncT, CanonicalForm) {
  // (t^2 - 1)/(t - 1) reduces to t + 1.
  RatFuncT f(Poly::monomial(1, 2) - Poly(Rat(1)), Poly::monomial(1, 1) - Poly(Rat(1)));
  EXPECT_EQ(f, RatFuncT(Poly::monomial(1, 1) + Poly(Rat(1)), Poly(Rat(1))));
  EXPECT_EQ(RatFuncT::t_pow(-2, 3) * RatFuncT::t_pow(2), RatFuncT(3));
  auto m = (RatFuncT::t_pow(3, rat(1, 2)) / RatFuncT::t_pow(5)).as_monomial();
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->first, rat(1, 2));
  EXPECT_EQ(m->second, -2);
}

TEST(RatFuncT, LaurentCoefficients) {
  // 1/(t^2 (1 - t)) = t^-2 + t^-1 + 1 + t + ...
  RatFuncT f = RatFuncT(1) / (RatFuncT::t_pow(2) * (RatFuncT(1) - RatFuncT::t_pow(1)));
  for (int k = -2; k <= 4; ++k) EXPECT_EQ(laurent_coeff(f, k), 1) << k;
  EXPECT_EQ(laurent_coeff(f, -3), 0);
  // 1/(5 + t) = (1/5) sum (-t/5)^k
  RatFuncT g = RatFuncT(1) / (RatFuncT(5) + RatFuncT::t_pow(1));
  EXPECT_EQ(laurent_coeff(g, 3), rat(-1, 625));
}

TEST(ClassRing, TruncationAndIntegration) {
  SpacePtr p4 = make_p4_space();
  ClassExpr h = ClassExpr::generator(p4, 0);
  EXPECT_TRUE(class_pow(h, 5).is_zero());
  // integral over P^4 of 1/(1 + h) = 1 (coefficient of h^4).
  ClassExpr inv = class_invert(ClassExpr(p4, 1) + h);
  EXPECT_EQ(class_integrate(inv), RatFuncT(1));
  // (t + h)^-1 over P^4 integrates to t^-5.
  ClassExpr th = ClassExpr(p4, RatFuncT::t_pow(1)) + h;
  EXPECT_EQ(class_integrate(class_pow(th, -1)), RatFuncT::t_pow(-5));
}

TEST(ClassRing, InvertRejectsNilpotent) {
  SpacePtr p4 = make_p4_space();
  EXPECT_THROW(class_invert(ClassExpr::generator(p4, 0)), AlgebraError);
}

TEST(ClassRingProperty, InverseProductIsOne) {
  auto r = props::class_invert_identity(200, 20261019u);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 200);
}
