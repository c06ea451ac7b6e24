#include <gtest/gtest.h>

#include <map>

#include "msp/contrib.hpp"

using namespace msp;
using namespace msp::contrib;

namespace {

std::vector<DecoratedGraph> graphs_of(int g, const char* gamma, Rat d0, Rat dinf) {
  return enumerate_graphs(g, parse_gamma(gamma), d0, dinf).graphs;
}

SymValue number(const Rat& c) { return c == 0 ? SymValue{} : SymValue{{CorrProduct{}, c}}; }
SymValue term(const std::string& key, const Rat& c) { return SymValue{{CorrProduct{key}, c}}; }

// The graphs of a datum identified by their one-line description.
std::map<std::string, SymValue> contributions(int g, const char* gamma, int d0, int dinf, int delta,
                                              const EvalOptions& o = {}) {
  std::map<std::string, SymValue> out;
  for (const auto& G : graphs_of(g, gamma, Rat(d0), Rat(dinf))) out[describe(G)] = graph_contribution(G, delta, o);
  return out;
}

const char* kBracket = "DTW(g=1,e=[-1/5],s=[])";

}  // namespace

TEST(Contribution, FirstWorkedExample) {
  auto c = contributions(1, "rho", 0, 0, 1);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.at("v0[L0,g1,d0,rho,VS]"), number(rat(25, 3)));
  EXPECT_EQ(c.at("v0[L1,g1,rho,VS]"), number(rat(1, 5)));
  EXPECT_EQ(c.at("v0[Linf,g1,VS] v1[L1,g0,rho,V11] e0(1-0,d_e=-1/5)"), term(kBracket, 1));
}

TEST(Contribution, SecondWorkedExample) {
  auto c = contributions(1, "", 1, 0, 1);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.at("v0[L0,g1,d1,VS]"), term("GW(g=1,d=1)", -1));
  EXPECT_EQ(c.at("v0[L0,g1,d0,VS] v1[L1,g0,V01] e0(0-1,d_e=1)"), number(rat(9625, 6)));
  EXPECT_EQ(c.at("v0[L0,g0,d0,V01] v1[L1,g1,VS] e0(0-1,d_e=1)"), number(rat(-4087, 12)));
  EXPECT_EQ(c.at("v0[L0,g0,d0,V01] v1[Linf,g1,VS] v2[L1,g0,V02] e0(0-2,d_e=1) e1(2-1,d_e=-1/5)"),
            term(kBracket, 120));
}

TEST(Contribution, ClosedFormBracket) {
  EvalOptions o;
  o.dtw_closed_form = true;
  auto a = contributions(1, "rho", 0, 0, 1, o);
  EXPECT_EQ(a.at("v0[Linf,g1,VS] v1[L1,g0,rho,V11] e0(1-0,d_e=-1/5)"), number(rat(-128, 15)));
  auto b = contributions(1, "", 1, 0, 1, o);
  EXPECT_EQ(b.at("v0[L0,g0,d0,V01] v1[Linf,g1,VS] v2[L1,g0,V02] e0(0-2,d_e=1) e1(2-1,d_e=-1/5)"),
            number(Rat(-1024)));
}

TEST(Contribution, SpecialGraphThetaCoefficient) {
  for (int g = 1; g <= 2; ++g)
    for (int m = 0; m <= 1; ++m) {
      DecoratedGraph G = make_theta_special_graph(g, m);
      const int k = 7 * g - 2 + 5 * m;
      const int delta = static_cast<int>(to_long(G.d0 + G.dinf)) + 1 - g;
      SymValue v = graph_contribution(G, delta);
      Rat expected = Rat(m % 2 == 0 ? -1 : 1) / factorial(k);
      EXPECT_EQ(v, term("FJRW(g=" + std::to_string(g) + ",k=" + std::to_string(k) + ")", expected))
          << "g=" << g << " m=" << m;
    }
}

TEST(Contribution, PrefactorAndEdgeFactors) {
  auto gs = graphs_of(1, "rho", 0, 0);
  for (const auto& G : gs) EXPECT_EQ(prefactor(G), 1) << describe(G);
  // Level-inf edge of degree -1/5 ending at an unstable rho vertex: A_e = 1/(5t).
  for (const auto& G : gs) {
    if (G.edges.size() != 1) continue;
    GraphSpace S = build_graph_space(G);
    ClassExpr a = edge_factor(S, 0);
    EXPECT_EQ(a.constant_term(), RatFuncT::t_pow(-1, rat(1, 5)));
    EXPECT_EQ(dtw_key(G, G.edges[0].u == 0 ? 0 : G.edges[0].v), kBracket);
  }
}

TEST(Contribution, BracketKeyRoundTrip) {
  DtwSignature s = parse_dtw_key("DTW(g=2,e=[-2/5,-1/5],s=[z1])");
  EXPECT_EQ(s.g, 2);
  ASSERT_EQ(s.degrees.size(), 2u);
  EXPECT_EQ(s.degrees[0], rat(-2, 5));
  ASSERT_EQ(s.legs.size(), 1u);
  EXPECT_EQ(s.legs[0], Monodromy::zeta(1));
  EXPECT_THROW(parse_dtw_key("GW(g=1,d=1)"), ContribError);
}

TEST(Contribution, UnsupportedGenusIsReported) {
  // A genus-3 level-1 vertex needs Hodge integrals beyond genus two.
  DecoratedGraph G = deserialize(
      "graph g=3 gamma=rho d=0,0\n"
      "vertex 0 level=1 genus=3 legs=0 deg=0,0\n"
      "end\n");
  EXPECT_THROW(graph_contribution(G, -1), ContribError);
}
