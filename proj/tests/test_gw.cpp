#include <gtest/gtest.h>

#include "msp/gw.hpp"

using namespace msp;
using namespace msp::gw;

namespace {

std::map<std::string, Rat> reduce(int g, int d, std::vector<Insertion> ins) {
  GWCorrelator c{g, d, std::move(ins)};
  return gw_reduce(c);
}

const std::string N11 = "GW(g=1,d=1)";
const std::string N21 = "GW(g=2,d=1)";

}  // namespace

TEST(GwVertexValue, SignAndTPower) {
  auto v = gw_vertex_value(1, 1, {});
  EXPECT_EQ(v.sign, -1);
  EXPECT_EQ(v.corr.key(), N11);
  auto w = gw_vertex_value(0, 1, {});
  EXPECT_EQ(w.sign, 1);
  // Rank d + 1 - g of the twisting class, inverted in the integrand.
  EXPECT_EQ(w.tpow, -2);
  EXPECT_EQ(gw_vertex_value(3, 3, {}).tpow, -1);
}

TEST(GwReduce, PrimaryIsFixedPoint) {
  auto r = reduce(1, 1, {});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.at(N11), 1);
  EXPECT_EQ(primary_key(1, 1), N11);
}

TEST(GwReduce, DimensionViolationIsZero) {
  EXPECT_TRUE(reduce(1, 1, {{1, 1}}).empty());
  EXPECT_TRUE(reduce(2, 1, {{0, 4}}).empty());  // h^4 = 0 on the quintic
}

TEST(GwReduce, DivisorEquation) {
  // <tau_0(h)>_{1,1} = 1 * N_{1,1}
  EXPECT_EQ(reduce(1, 1, {{0, 1}}).at(N11), 1);
  EXPECT_EQ(reduce(1, 3, {{0, 1}, {0, 1}}).at("GW(g=1,d=3)"), 9);
}

TEST(GwReduce, StringAndDilatonAgreeWithDivisor) {
  // <tau_1(1) tau_0(h)>_{2,1}: dilaton first gives 3 <tau_0(h)> = 3 N_{2,1};
  // the divisor equation gives <tau_1> + <tau_0(h)> = 2 N + N. Both routes
  // must agree with whatever order the reducer picks.
  EXPECT_EQ(reduce(2, 1, {{1, 0}, {0, 1}}).at(N21), 3);
  // String: <tau_0(1) tau_2(1)>_{2,1} = <tau_1(1)>_{2,1} = 2 N_{2,1}.
  EXPECT_EQ(reduce(2, 1, {{0, 0}, {2, 0}}).at(N21), 2);
  // Dilaton with n = 0 at genus one kills the term.
  EXPECT_TRUE(reduce(1, 1, {{1, 0}}).empty());
}

TEST(GwReduce, DegreeZeroBaseCases) {
  auto r = reduce(0, 0, {{0, 1}, {0, 1}, {0, 1}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.at(""), 5);  // triple intersection h^3 on the quintic
  // Genus one, degree zero: the virtual class is c_3(T) - lambda_1 c_2(T) on
  // M_{1,1} x Q with c_3 = -40 h^3 and c_2 = 10 h^2.
  EXPECT_EQ(reduce(1, 0, {{1, 0}}).at(""), rat(-200, 24));
  EXPECT_EQ(reduce(1, 0, {{0, 1}}).at(""), rat(-50, 24));
}
