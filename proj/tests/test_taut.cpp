#include <gtest/gtest.h>

#include "msp/taut.hpp"
#include "properties.hpp"

using namespace msp;
using taut::hodge_psi_integral;
using taut::psi_integral;

TEST(PsiIntegrals, KnownValues) {
  EXPECT_EQ(psi_integral(0, {0, 0, 0}), 1);
  EXPECT_EQ(psi_integral(0, {1, 1, 0, 0, 0}), 2);
  EXPECT_EQ(psi_integral(1, {1}), rat(1, 24));
  EXPECT_EQ(psi_integral(2, {4}), rat(1, 1152));
  EXPECT_EQ(psi_integral(2, {2, 3}), rat(29, 5760));
  EXPECT_EQ(psi_integral(1, {2, 0}), rat(1, 24));  // string equation
  EXPECT_EQ(psi_integral(1, {1, 1}), rat(1, 24));  // dilaton equation
  EXPECT_EQ(psi_integral(0, {2, 0, 0}), 0);        // wrong dimension
  EXPECT_THROW(psi_integral(0, {0, 0}), taut::TautError);
}

TEST(HodgeIntegrals, KnownValues) {
  EXPECT_EQ(hodge_psi_integral(1, {0}, 1), rat(1, 24));
  // Mumford's relation lambda_1^2 = 2 lambda_2 on M_2 and the classical
  // values of lambda_1^3 and lambda_1 lambda_2.
  EXPECT_EQ(hodge_psi_integral(2, {}, 3, 0), rat(1, 2880));
  EXPECT_EQ(hodge_psi_integral(2, {}, 1, 1), rat(1, 5760));
  // lambda_g formula: int psi^{2g-3+n} lambda_g = b_g, b_2 = 7/5760.
  EXPECT_EQ(hodge_psi_integral(2, {2}, 0, 1), rat(7, 5760));
  EXPECT_THROW(hodge_psi_integral(3, {}, 0, 0), taut::TautError);
}

TEST(KappaIntegrals, KappaOneOnM11) { EXPECT_EQ(taut::kappa_psi_integral(1, {0}, {1}), rat(1, 24)); }

TEST(StringDilaton, ReducesToBaseCases) {
  auto r = taut::string_dilaton_reduce({1, {0, 0, 1, 1, 3}});
  ASSERT_FALSE(r.empty());
  Rat total = 0;
  for (const auto& [d, c] : r) total += c * psi_integral(d.g, d.a);
  EXPECT_EQ(total, psi_integral(1, {0, 0, 1, 1, 3}));
}

TEST(StringDilatonProperty, GenusZeroUpToEightPoints) {
  auto r = props::genus0_string_dilaton(8);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GT(r.checked, 100);
}
