#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msp/algebra.hpp"
#include "msp/graphs.hpp"
#include "msp/symbolic.hpp"

namespace msp::contrib {

class ContribError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  // Evaluate the genus-one level-inf vertex with a single zeta_5 flag by its
  // closed form instead of leaving the bracket symbolic.
  bool dtw_closed_form = false;
};

// Class ring of one graph. Every vertex moduli carrying classes is a factor
// of the space; evaluators[f] integrates the part of a monomial on factor f.
struct GraphSpace {
  DecoratedGraph graph;
  SpacePtr space;
  std::map<std::pair<int, int>, int> psi;  // (edge, vertex) -> psi generator of that flag
  std::map<int, int> h;                    // E0 edge -> hyperplane class at its level-0 end
  std::map<int, int> lambda1, lambda2;     // vertex -> Hodge class generators
  std::map<int, int> vertex_h;             // level-0 vertex with constant maps -> its h
  std::vector<std::function<SymExpr(const Monomial&)>> evaluators;
};

GraphSpace build_graph_space(const DecoratedGraph& G);

// w_(e,v) of the flag (e, v).
ClassExpr edge_weight(const GraphSpace& S, int edge, int vertex);
// A_e; throws for E0inf edges.
ClassExpr edge_factor(const GraphSpace& S, int edge);
// B_v for every vertex except stable level-inf ones (see infinity_vertex_value).
ClassExpr vertex_factor(const GraphSpace& S, int vertex);

// Integral of B_v over a stable level-inf vertex moduli: a number or Theta
// times a t-power when the virtual cycle is zero-dimensional, otherwise
// c * t^p with c the bracket keyed by dtw_key.
SymExpr infinity_vertex_value(const DecoratedGraph& G, int vertex, const EvalOptions& opts = {});

// Key of a dual-twisted bracket, e.g. DTW(g=1,e=[-1/5],s=[]). It lists the
// vertex genus, the sorted degrees of its flags and its leg monodromies.
std::string dtw_key(const DecoratedGraph& G, int vertex);
struct DtwSignature {
  int g = 0;
  std::vector<Rat> degrees;
  std::vector<Monodromy> legs;
};
DtwSignature parse_dtw_key(const std::string& key);

// 1/|Aut| * 1/prod_{E0} d_e * 1/prod_{Einf} |G_e|.
Rat prefactor(const DecoratedGraph& G);

// Integrates a class over all vertex moduli of the graph.
SymExpr integrate(const GraphSpace& S, const ClassExpr& c);

// Contr(Gamma): coefficient of t^0 in t^delta times the localized integrand.
SymValue graph_contribution(const DecoratedGraph& G, int delta, const EvalOptions& opts = {});

}  // namespace msp::contrib
