#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "msp/graphs.hpp"
#include "properties.hpp"

using namespace msp;

namespace {

std::vector<DecoratedGraph> graphs_of(int g, const char* gamma, Rat d0, Rat dinf, bool reverse = false) {
  EnumerationOptions o;
  o.reverse_order = reverse;
  return enumerate_graphs(g, parse_gamma(gamma), d0, dinf, o).graphs;
}

std::set<std::string> canonical_set(const std::vector<DecoratedGraph>& gs) {
  std::set<std::string> s;
  for (const auto& G : gs) s.insert(canonical_form(G));
  return s;
}

}  // namespace

TEST(Gamma, ParseAndPrint) {
  auto g = parse_gamma("rho,z2,phi");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], Monodromy::rho());
  EXPECT_EQ(g[1], Monodromy::zeta(2));
  EXPECT_EQ(gamma_str(g), "rho,z2,phi");
  EXPECT_TRUE(parse_gamma("").empty());
  EXPECT_THROW(parse_gamma("z5"), GraphError);
}

TEST(Enumeration, WorkedExampleCounts) {
  EXPECT_EQ(graphs_of(1, "rho", 0, 0).size(), 3u);
  EXPECT_EQ(graphs_of(1, "", 1, 0).size(), 4u);
  EXPECT_TRUE(graphs_of(0, "", 0, 0).empty());
}

TEST(Enumeration, GraphsAreValidFlatRegularAndDistinct) {
  for (auto [g, d0, dinf] : {std::tuple{1, 0, 1}, std::tuple{1, 1, 0}, std::tuple{2, 0, 1}}) {
    auto gs = graphs_of(g, "", Rat(d0), Rat(dinf));
    for (const auto& G : gs) {
      EXPECT_TRUE(validate(G).empty()) << describe(G);
      EXPECT_TRUE(is_flat(G));
      EXPECT_TRUE(is_regular(G));
      EXPECT_EQ(G.h1() + [&] {
        int s = 0;
        for (const auto& v : G.vertices) s += v.genus;
        return s;
      }(), g);
    }
    EXPECT_EQ(canonical_set(gs).size(), gs.size());
  }
}

TEST(Enumeration, ReverseOrderFindsTheSameGraphs) {
  for (auto [g, gamma, d0, dinf] : {std::tuple{1, "rho", 0, 0}, std::tuple{1, "", 1, 0}, std::tuple{1, "", 0, 1},
                                    std::tuple{1, "", 1, 1}}) {
    auto fwd = graphs_of(g, gamma, Rat(d0), Rat(dinf));
    auto rev = graphs_of(g, gamma, Rat(d0), Rat(dinf), true);
    EXPECT_EQ(canonical_set(fwd), canonical_set(rev));
    EXPECT_EQ(fwd.size(), rev.size());
  }
}

TEST(Enumeration, NodeLimitIsReported) {
  EnumerationOptions o;
  o.max_nodes = 10;
  EXPECT_THROW(enumerate_graphs(2, {}, Rat(1), Rat(1), o), BoundViolation);
}

TEST(Canonical, InvariantUnderRelabeling) {
  for (const auto& G : props::synthetic_graphs(20, 7u)) {
    EXPECT_TRUE(validate(G).empty());
    DecoratedGraph back = canonical_relabel(G);
    EXPECT_EQ(canonical_form(back), canonical_form(G));
  }
}

TEST(Serialization, RoundTrip) {
  for (const auto& G : graphs_of(1, "", 1, 1)) {
    std::string text = serialize(G);
    DecoratedGraph H = deserialize(text);
    EXPECT_EQ(serialize(H), text);
    EXPECT_EQ(canonical_form(H), canonical_form(G));
  }
  EXPECT_THROW(deserialize("graph g=1\nnonsense\n"), GraphError);
}

TEST(AutomorphismProperty, WorkedExampleGraphs) {
  auto a = graphs_of(1, "rho", 0, 0);
  auto b = graphs_of(1, "", 1, 0);
  a.insert(a.end(), b.begin(), b.end());
  auto r = props::aut_matches_bruteforce(a);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 7);
  for (const auto& G : a) EXPECT_EQ(automorphism_order(G), 1u) << describe(G);
}

TEST(AutomorphismProperty, SyntheticGraphs) {
  auto r = props::aut_matches_bruteforce(props::synthetic_graphs(20, 11u));
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 20);
}

TEST(Automorphism, SpecialGraphPermutesItsStars) {
  // The k identical stars of the special graph can be permuted freely.
  EXPECT_EQ(automorphism_order(make_theta_special_graph(1, 0)), 120u);
  EXPECT_EQ(automorphism_order_bruteforce(make_theta_special_graph(1, 0)), 120u);
}

TEST(Flatten, FlatGraphIsUnchanged) {
  for (const auto& G : graphs_of(1, "", 1, 0)) EXPECT_EQ(canonical_form(flatten(G)), canonical_form(G));
}
