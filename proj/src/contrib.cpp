#include "msp/contrib.hpp"

#include <algorithm>
#include <sstream>

#include "msp/fjrw.hpp"
#include "msp/gw.hpp"
#include "msp/taut.hpp"

namespace msp::contrib {

namespace {

RatFuncT T(const Rat& c = Rat(1)) { return RatFuncT::t_pow(1, c); }

ClassExpr scalar(const GraphSpace& S, const RatFuncT& c) { return ClassExpr(S.space, c); }

// a * generator + b
ClassExpr affine(const GraphSpace& S, int gen, const RatFuncT& a, const RatFuncT& b) {
  return ClassExpr::generator(S.space, gen, a) + scalar(S, b);
}

bool is_symbolic_gw(const Vertex& v) { return v.d0 > 0 || v.genus >= 2; }

int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

const Vertex& other_end(const DecoratedGraph& G, const Edge& e, int v) { return G.vertices[e.u == v ? e.v : e.u]; }

SymExpr from_combo(const std::map<std::string, Rat>& combo, const RatFuncT& scale) {
  SymExpr out;
  for (const auto& [k, c] : combo) {
    if (k.empty())
      out.add({}, scale * RatFuncT(c));
    else
      out.add({k}, scale * RatFuncT(c));
  }
  return out;
}

int exponent_of(const Monomial& m, int gen) {
  for (auto [id, p] : m)
    if (id == gen) return p;
  return 0;
}

}  // namespace

GraphSpace build_graph_space(const DecoratedGraph& G) {
  GraphSpace S;
  S.graph = G;
  auto space = std::make_shared<Space>();
  for (const auto& e : G.edges)
    if (e.cls == EdgeClass::E0inf) throw ContribError("unsupported edge class E0inf (no edge factor is available)");

  auto set_eval = [&S](int f, std::function<SymExpr(const Monomial&)> fn) {
    if (static_cast<int>(S.evaluators.size()) <= f) S.evaluators.resize(f + 1);
    S.evaluators[f] = std::move(fn);
  };
  auto psi_gens_for = [&](int v, int f) {
    std::vector<int> gens;
    for (int eid : G.incident_edges(v)) {
      int id = space->add_generator("psi_" + std::to_string(eid) + "_" + std::to_string(v), 1, f);
      S.psi[{eid, v}] = id;
      gens.push_back(id);
    }
    return gens;
  };
  // Evaluator for a Hodge/psi integral over M_{g,n}; flags come first, legs
  // carry no psi.
  auto hodge_eval = [](int g, std::vector<int> psi, int nlegs, int l1, int l2) {
    return [=](const Monomial& part) -> SymExpr {
      std::vector<int> a;
      for (int id : psi) a.push_back(exponent_of(part, id));
      a.insert(a.end(), nlegs, 0);
      int e1 = l1 >= 0 ? exponent_of(part, l1) : 0;
      int e2 = l2 >= 0 ? exponent_of(part, l2) : 0;
      try {
        return SymExpr(RatFuncT(taut::hodge_psi_integral(g, a, e1, e2)));
      } catch (const taut::TautError& err) {
        throw ContribError(std::string("missing intersection number: ") + err.what());
      }
    };
  };

  for (const auto& v : G.vertices) {
    const int nlegs = static_cast<int>(v.legs.size());
    const int n = nlegs + G.valence(v.id);
    const auto inc = G.incident_edges(v.id);
    const std::string tag = std::to_string(v.id);
    if (v.level == Level::inf) continue;
    if (v.level == Level::one) {
      if (!is_stable(G, v)) continue;
      int f = space->add_factor("M" + tag, 3 * v.genus - 3 + n);
      auto psi = psi_gens_for(v.id, f);
      int l1 = -1, l2 = -1;
      if (v.genus >= 1) l1 = S.lambda1[v.id] = space->add_generator("lambda1_" + tag, 1, f);
      if (v.genus >= 2) l2 = S.lambda2[v.id] = space->add_generator("lambda2_" + tag, 2, f);
      set_eval(f, hodge_eval(v.genus, psi, nlegs, l1, l2));
      continue;
    }
    if (!is_stable(G, v)) {
      int f = space->add_factor("P4_" + tag, 4);
      int hg = space->add_generator("h_" + tag, 1, f);
      S.vertex_h[v.id] = hg;
      for (int eid : inc) S.h[eid] = hg;
      set_eval(f, [hg](const Monomial& part) {
        return SymExpr(RatFuncT(exponent_of(part, hg) == 4 ? Rat(1) : Rat(0)));
      });
      continue;
    }
    if (!is_symbolic_gw(v)) {
      // Constant maps: the moduli is M_{g,n} x Q.
      int fm = space->add_factor("M" + tag, 3 * v.genus - 3 + n);
      auto psi = psi_gens_for(v.id, fm);
      int l1 = -1;
      if (v.genus == 1) l1 = S.lambda1[v.id] = space->add_generator("lambda1_" + tag, 1, fm);
      int fq = space->add_factor("Q" + tag, 3);
      int hg = space->add_generator("h_" + tag, 1, fq, 3);
      S.vertex_h[v.id] = hg;
      for (int eid : inc) S.h[eid] = hg;
      set_eval(fm, hodge_eval(v.genus, psi, nlegs, l1, -1));
      set_eval(fq, [hg](const Monomial& part) {
        return SymExpr(RatFuncT(exponent_of(part, hg) == 3 ? Rat(5) : Rat(0)));  // deg Q = 5
      });
      continue;
    }
    // Positive degree (or genus >= 2): quintic GW descendants, kept symbolic.
    int f = space->add_factor("GW" + tag, n);
    std::vector<std::pair<int, int>> flag_gens;
    for (int eid : inc) {
      int p = space->add_generator("psi_" + std::to_string(eid) + "_" + tag, 1, f);
      int h = space->add_generator("h_" + std::to_string(eid), 1, f, 3);
      S.psi[{eid, v.id}] = p;
      S.h[eid] = h;
      flag_gens.emplace_back(p, h);
    }
    const int g = v.genus;
    const int d = static_cast<int>(to_long(v.d0));
    set_eval(f, [=](const Monomial& part) {
      std::vector<gw::Insertion> ins;
      for (auto [p, h] : flag_gens) ins.push_back({exponent_of(part, p), exponent_of(part, h)});
      ins.insert(ins.end(), nlegs, gw::Insertion{0, 0});
      auto val = gw::gw_vertex_value(g, d, ins);
      return from_combo(gw::gw_reduce(val.corr), RatFuncT::t_pow(val.tpow, Rat(val.sign)));
    });
  }
  S.evaluators.resize(space->num_factors());
  S.space = space;
  return S;
}

ClassExpr edge_weight(const GraphSpace& S, int edge, int vertex) {
  const DecoratedGraph& G = S.graph;
  const Edge& e = G.edges.at(edge);
  const Vertex& v = G.vertices.at(vertex);
  if (e.u != vertex && e.v != vertex) throw ContribError("vertex is not an endpoint of the edge");
  const Rat d = e.de();
  switch (e.cls) {
    case EdgeClass::E0: {
      // (h_e + t)/d_e at level 0, its negative at level 1.
      Rat s = v.level == Level::zero ? Rat(1) / d : Rat(-1) / d;
      return affine(S, S.h.at(edge), RatFuncT(s), T(s));
    }
    case EdgeClass::Einf: {
      const Vertex& far = G.vertices[e.v];
      bool far_v01 = classify_vertex(G, far) == VertexClass::V01;
      if (far_v01) {
        Rat s = Rat(5) / (5 * d + 1);
        return scalar(S, T(v.level == Level::inf ? s : -s));
      }
      if (v.level == Level::inf) return scalar(S, T(Rat(1) / (edge_r(e) * d)));
      return scalar(S, T(Rat(-1) / d));
    }
    case EdgeClass::E0inf: break;
  }
  throw ContribError("unsupported edge class E0inf (no edge factor is available)");
}

ClassExpr edge_factor(const GraphSpace& S, int edge) {
  const DecoratedGraph& G = S.graph;
  const Edge& e = G.edges.at(edge);
  const Rat d = e.de();
  if (e.cls == EdgeClass::E0) {
    const long dd = to_long(d);
    const int hg = S.h.at(edge);
    const Rat inv = Rat(1) / d;
    ClassExpr num = scalar(S, 1), den = scalar(S, 1);
    for (long j = 1; j <= 5 * dd - 1; ++j)  // -5h + j(h+t)/d
      num *= affine(S, hg, RatFuncT(Rat(-5) + j * inv), T(j * inv));
    for (long j = 1; j <= dd; ++j) {
      ClassExpr f = affine(S, hg, RatFuncT(Rat(1) - j * inv), T(-j * inv));  // h - j(h+t)/d
      den *= class_pow(f, 5);
      den *= affine(S, hg, RatFuncT(j * inv), T(j * inv));
    }
    return num * class_invert(den);
  }
  if (e.cls == EdgeClass::Einf) {
    const Rat md = -d;  // positive
    RatFuncT num = 1, den = 1;
    if (classify_vertex(G, G.vertices[e.v]) == VertexClass::V01) {
      const long k = to_long(md);
      const Rat c = Rat(5) / (5 * d + 1);
      for (long j = 1; j <= k - 1; ++j) {
        RatFuncT f = T(Rat(-1) - j * c);
        num *= f * f * f * f * f;
      }
      for (long j = 1; j <= 5 * k - 1; ++j) den *= T(-j * c);
      for (long j = 1; j <= k; ++j) den *= T(j * c);
    } else {
      const long up = mpz_class(ceil_rat(md)).get_si() - 1;
      const long low = mpz_class(floor_rat(md)).get_si();
      for (long j = 1; j <= up; ++j) {
        RatFuncT f = T(Rat(-1) - Rat(j) / d);
        num *= f * f * f * f * f;
      }
      for (long j = 1; j <= to_long(5 * md); ++j) den *= T(Rat(-j) / d);
      for (long j = 1; j <= low; ++j) den *= T(Rat(j) / d);
    }
    return scalar(S, num / den);
  }
  throw ContribError("unsupported edge class E0inf (no edge factor is available)");
}

namespace {

// Product over flags of 1/(w - psi) at a stable vertex.
ClassExpr flag_denominators(const GraphSpace& S, int v) {
  ClassExpr out = scalar(S, 1);
  for (int eid : S.graph.incident_edges(v)) {
    ClassExpr w = edge_weight(S, eid, v);
    ClassExpr psi = ClassExpr::generator(S.space, S.psi.at({eid, v}));
    out *= class_invert(w - psi);
  }
  return out;
}

// Sum of w over the two flags of a V^{0,2} vertex.
ClassExpr weight_sum(const GraphSpace& S, int v) {
  auto inc = S.graph.incident_edges(v);
  return edge_weight(S, inc[0], v) + edge_weight(S, inc[1], v);
}

}  // namespace

ClassExpr vertex_factor(const GraphSpace& S, int vertex) {
  const DecoratedGraph& G = S.graph;
  const Vertex& v = G.vertices.at(vertex);
  const VertexClass cls = classify_vertex(G, v);
  const auto inc = G.incident_edges(vertex);

  if (v.level == Level::zero) {
    if (cls == VertexClass::VS) {
      ClassExpr b = scalar(S, 1);
      for (int eid : inc) b *= affine(S, S.h.at(eid), 1, T());  // flag factor h_e + t
      b *= flag_denominators(S, vertex);
      if (is_symbolic_gw(v)) return b;  // twisting class handled by the GW normalization
      // Degree zero, genus <= 1: explicit virtual class and twisting factor.
      const int hg = S.vertex_h.at(vertex);
      ClassExpr h = ClassExpr::generator(S.space, hg);
      ClassExpr ht = affine(S, hg, 1, T());
      ClassExpr vir = scalar(S, 1), twist = class_invert(ht);
      if (v.genus == 1) {
        ClassExpr l1 = ClassExpr::generator(S.space, S.lambda1.at(vertex));
        vir = h * h * h * RatFuncT(-40) - l1 * h * h * RatFuncT(10);
        twist = (ht - l1) * class_invert(ht);
      }
      return b * vir * twist * RatFuncT(sign_pow(1 - v.genus));
    }
    // Unstable: [-Q_5] = -5h on P^4 times B_v.
    const int hg = S.vertex_h.at(vertex);
    ClassExpr q = ClassExpr::generator(S.space, hg, RatFuncT(-5));
    switch (cls) {
      case VertexClass::V01: return q * edge_weight(S, inc[0], vertex);
      case VertexClass::V11: return q;
      case VertexClass::V02: return q * affine(S, hg, 1, T()) * class_invert(weight_sum(S, vertex));
      default: break;
    }
  }

  if (v.level == Level::one) {
    if (cls == VertexClass::VS) {
      const int g = v.genus;
      // e_T(E^vee (x) L_{-1}) = sum (-1)^i lambda_i (-t)^{g-i}; e_T(E (x) L_5) = sum lambda_i (5t)^{g-i}.
      auto lambda = [&](int i) -> ClassExpr {
        if (i == 0) return scalar(S, 1);
        if (i == 1) return ClassExpr::generator(S.space, S.lambda1.at(vertex));
        if (i == 2) return ClassExpr::generator(S.space, S.lambda2.at(vertex));
        throw ContribError("unsupported genus " + std::to_string(g) + " at a level-1 vertex");
      };
      ClassExpr e1(S.space), e2(S.space);
      for (int i = 0; i <= g; ++i) {
        e1 += lambda(i) * RatFuncT::t_pow(g - i, Rat(sign_pow(i) * sign_pow(g - i)));
        e2 += lambda(i) * RatFuncT::t_pow(g - i, rat_pow(Rat(5), g - i));
      }
      ClassExpr a = class_pow(e1 * (RatFuncT(1) / T(-1)), 5) * class_invert(e2) * T(5);
      int nphi = 0;
      for (int leg : v.legs)
        if (G.gamma[leg].kind == Monodromy::Kind::phi) ++nphi;
      RatFuncT extra = RatFuncT::t_pow(5 * static_cast<int>(inc.size()), Rat(sign_pow(static_cast<long>(inc.size())))) *
                       RatFuncT::t_pow(4 * nphi, rat_pow(rat(-1, 5), nphi));
      return a * extra * flag_denominators(S, vertex);
    }
    switch (cls) {
      case VertexClass::V01: return edge_weight(S, inc[0], vertex) * T(5);
      case VertexClass::V11: {
        bool phi = G.gamma[v.legs[0]].kind == Monodromy::Kind::phi;
        return scalar(S, phi ? RatFuncT::t_pow(5, Rat(-1)) : T(5));
      }
      case VertexClass::V02: return scalar(S, RatFuncT::t_pow(6, Rat(-5))) * class_invert(weight_sum(S, vertex));
      default: break;
    }
  }

  if (v.level == Level::inf) {
    switch (cls) {
      case VertexClass::V01: return edge_weight(S, inc[0], vertex);
      case VertexClass::V11: return scalar(S, 1);
      case VertexClass::V02: {
        bool integral = is_integer(G.edges[inc[0]].de());
        RatFuncT a = integral ? RatFuncT::t_pow(6) : RatFuncT(1);  // (-t)^6 = t^6
        return scalar(S, a) * class_invert(weight_sum(S, vertex));
      }
      default: throw ContribError("stable level-inf vertices are evaluated by infinity_vertex_value");
    }
  }
  throw ContribError("unclassified vertex");
}

std::string dtw_key(const DecoratedGraph& G, int vertex) {
  const Vertex& v = G.vertices.at(vertex);
  std::vector<Rat> ds;
  for (int eid : G.incident_edges(vertex)) ds.push_back(G.edges[eid].de());
  std::sort(ds.begin(), ds.end());
  std::vector<std::string> legs;
  for (int leg : v.legs) legs.push_back(G.gamma[leg].str());
  std::sort(legs.begin(), legs.end());
  std::ostringstream os;
  os << "DTW(g=" << v.genus << ",e=[";
  for (size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << to_string(ds[i]);
  os << "],s=[";
  for (size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i];
  os << "])";
  return os.str();
}

DtwSignature parse_dtw_key(const std::string& key) {
  DtwSignature sig;
  auto fail = [&]() { return ContribError("malformed bracket key '" + key + "'"); };
  if (key.rfind("DTW(g=", 0) != 0 || key.back() != ')') throw fail();
  auto e_pos = key.find(",e=[");
  auto s_pos = key.find("],s=[");
  if (e_pos == std::string::npos || s_pos == std::string::npos) throw fail();
  sig.g = std::stoi(key.substr(6, e_pos - 6));
  std::string elist = key.substr(e_pos + 4, s_pos - e_pos - 4);
  std::string slist = key.substr(s_pos + 5, key.size() - s_pos - 5 - 2);
  std::stringstream es(elist);
  std::string tok;
  while (std::getline(es, tok, ','))
    if (!tok.empty()) sig.degrees.push_back(parse_rat(tok));
  if (!slist.empty()) sig.legs = parse_gamma(slist);
  return sig;
}

SymExpr infinity_vertex_value(const DecoratedGraph& G, int vertex, const EvalOptions& opts) {
  const Vertex& v = G.vertices.at(vertex);
  std::vector<int> ms = infinity_monodromies(G, v);
  if (std::any_of(ms.begin(), ms.end(), [](int m) { return m == 0; }))
    throw ContribError("broad monodromy at a level-inf vertex (irregular graph)");
  if (fjrw::fjrw_vanishes(v.genus, ms)) return SymExpr();
  const long r = fjrw::dual_rank(v.genus, ms);
  const int D = *fjrw::fjrw_vdim(v.genus, ms);
  const auto inc = G.incident_edges(vertex);

  RatFuncT inv_w = 1;
  for (int eid : inc) {
    const Edge& e = G.edges[eid];
    inv_w *= RatFuncT(1) / T(Rat(1) / (edge_r(e) * e.de()));
  }
  if (D == 0) {
    // Only the degree-zero part of 1/e_T pairs with a zero-dimensional cycle.
    RatFuncT lead = RatFuncT::t_pow(static_cast<int>(-r), rat_pow(Rat(-1), -r)) * inv_w;
    if (v.genus == 0) return SymExpr(lead * RatFuncT(fjrw::exceptional_g0_degree()));
    long k = std::count(ms.begin(), ms.end(), 2);
    return SymExpr::key("FJRW(g=" + std::to_string(v.genus) + ",k=" + std::to_string(k) + ")", lead);
  }
  if (opts.dtw_closed_form && v.genus == 1 && inc.size() == 1 && v.legs.empty() && ms == std::vector<int>{1}) {
    const Edge& e = G.edges[inc[0]];
    return SymExpr(fjrw::g1_single_flag_bracket(T(Rat(1) / (edge_r(e) * e.de()))));
  }
  const int p = static_cast<int>(-r) - static_cast<int>(inc.size()) - D;
  return SymExpr::key(dtw_key(G, vertex), RatFuncT::t_pow(p));
}

Rat prefactor(const DecoratedGraph& G) {
  Rat p = Rat(1) / Rat(static_cast<unsigned long>(automorphism_order(G)));
  for (const auto& e : G.edges) {
    if (e.cls == EdgeClass::E0) p /= e.de();
    if (e.cls == EdgeClass::Einf) p /= Rat(gerbe_order(G, e));
  }
  p.canonicalize();
  return p;
}

SymExpr integrate(const GraphSpace& S, const ClassExpr& c) {
  SymExpr out;
  const Space& sp = *S.space;
  for (const auto& [mono, coef] : c.terms()) {
    SymExpr term(coef);
    for (int f = 0; f < sp.num_factors() && !term.is_zero(); ++f) {
      if (!S.evaluators[f]) throw ContribError("no integrator for factor " + sp.factor(f).name);
      Monomial part = sp.factor_part(mono, f);
      if (sp.factor_degree(mono, f) != sp.factor(f).budget) {
        term = SymExpr();
        break;
      }
      term = term * S.evaluators[f](part);
    }
    out += term;
  }
  return out;
}

SymValue graph_contribution(const DecoratedGraph& G, int delta, const EvalOptions& opts) {
  if (!is_regular(G)) throw ContribError("graph is not regular");
  GraphSpace S = build_graph_space(G);
  SymExpr inf(RatFuncT(1));
  ClassExpr total(S.space, RatFuncT(1));
  for (const auto& v : G.vertices) {
    if (v.level == Level::inf && classify_vertex(G, v) == VertexClass::VS)
      inf *= infinity_vertex_value(G, v.id, opts);
    else
      total *= vertex_factor(S, v.id);
  }
  if (inf.is_zero()) return {};
  for (const auto& e : G.edges) total *= edge_factor(S, e.id);
  SymExpr all = integrate(S, total) * inf * RatFuncT::t_pow(delta, prefactor(G));
  return sym_extract(all, 0);
}

}  // namespace msp::contrib
