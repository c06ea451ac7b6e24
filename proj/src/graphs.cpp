#include "msp/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace msp {

Monodromy Monodromy::zeta(int m) {
  if (m < 1 || m > 4) throw GraphError("narrow monodromy exponent must be in 1..4");
  return {Kind::zeta, m};
}

std::string Monodromy::str() const {
  switch (kind) {
    case Kind::zeta: return "z" + std::to_string(m);
    case Kind::rho: return "rho";
    case Kind::phi: return "phi";
  }
  return "?";
}

std::vector<Monodromy> parse_gamma(const std::string& text) {
  std::vector<Monodromy> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "rho") {
      out.push_back(Monodromy::rho());
    } else if (tok == "phi") {
      out.push_back(Monodromy::phi());
    } else if (tok.size() == 2 && tok[0] == 'z' && tok[1] >= '1' && tok[1] <= '4') {
      out.push_back(Monodromy::zeta(tok[1] - '0'));
    } else {
      throw GraphError("bad gamma token '" + tok + "' (expected z1..z4, rho, phi)");
    }
  }
  return out;
}

std::string gamma_str(const std::vector<Monodromy>& gamma) {
  std::string s;
  for (size_t i = 0; i < gamma.size(); ++i) s += (i ? "," : "") + gamma[i].str();
  return s;
}

std::string level_str(Level l) {
  switch (l) {
    case Level::zero: return "0";
    case Level::one: return "1";
    case Level::inf: return "inf";
  }
  return "?";
}

std::string edge_class_str(EdgeClass c) {
  switch (c) {
    case EdgeClass::E0: return "E0";
    case EdgeClass::Einf: return "Einf";
    case EdgeClass::E0inf: return "E0inf";
  }
  return "?";
}

std::string vertex_class_str(VertexClass c) {
  switch (c) {
    case VertexClass::VS: return "VS";
    case VertexClass::V01: return "V01";
    case VertexClass::V02: return "V02";
    case VertexClass::V11: return "V11";
  }
  return "?";
}

// ---------------------------------------------------------------- model

std::vector<int> DecoratedGraph::incident_edges(int v) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.u == v) out.push_back(e.id);
    if (e.v == v) out.push_back(e.id);
  }
  return out;
}

int DecoratedGraph::h1() const {
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
}

bool DecoratedGraph::connected() const {
  if (vertices.empty()) return false;
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  int root = find(0);
  for (size_t i = 0; i < vertices.size(); ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

bool is_stable(const DecoratedGraph& G, const Vertex& v) {
  int n = static_cast<int>(v.legs.size()) + G.valence(v.id);
  if (2 * v.genus - 2 + n > 0) return true;
  return v.level == Level::zero && v.d0 > 0;
}

VertexClass classify_vertex(const DecoratedGraph& G, const Vertex& v) {
  if (is_stable(G, v)) return VertexClass::VS;
  int a = static_cast<int>(v.legs.size()), b = G.valence(v.id);
  if (a == 0 && b == 1) return VertexClass::V01;
  if (a == 0 && b == 2) return VertexClass::V02;
  if (a == 1 && b == 1) return VertexClass::V11;
  throw GraphError("invalid graph: unstable vertex " + std::to_string(v.id) + " with " + std::to_string(a) +
                   " legs and " + std::to_string(b) + " edges");
}

int edge_r(const Edge& e) { return is_integer(e.de()) ? 1 : 5; }

int flag_monodromy(const Edge& e) {
  Rat x = -5 * e.de();
  if (!is_integer(x)) throw GraphError("edge degree is not a multiple of 1/5");
  long m = to_long(x) % 5;
  return static_cast<int>((m + 5) % 5);
}

long gerbe_order(const DecoratedGraph& G, const Edge& e) {
  if (e.cls != EdgeClass::Einf) throw GraphError("gerbe order is defined for level-inf edges only");
  const Vertex& far = G.vertices.at(e.v);
  long delta = classify_vertex(G, far) == VertexClass::V01 ? -1 : 0;
  return to_long(-5 * e.de()) + delta;
}

std::vector<int> infinity_monodromies(const DecoratedGraph& G, const Vertex& v) {
  std::vector<int> ms;
  for (int eid : G.incident_edges(v.id)) ms.push_back(flag_monodromy(G.edges[eid]));
  for (int leg : v.legs) {
    const Monodromy& m = G.gamma.at(leg);
    ms.push_back(m.kind == Monodromy::Kind::zeta ? m.m : 0);
  }
  std::sort(ms.begin(), ms.end());
  return ms;
}

bool is_exceptional_sector(const std::vector<int>& ms) {
  std::map<int, int> cnt;
  for (int m : ms) cnt[m]++;
  int ones = cnt.count(1) ? cnt[1] : 0;
  int total = static_cast<int>(ms.size());
  if (cnt.count(4) && cnt[4] == 1 && ones == total - 1 && ones >= 2) return true;
  if (cnt.count(2) && cnt.count(3) && cnt[2] == 1 && cnt[3] == 1 && ones == total - 2 && ones >= 1) return true;
  return false;
}

std::vector<std::string> validate(const DecoratedGraph& G) {
  std::vector<std::string> issues;
  auto bad = [&](const std::string& s) { issues.push_back(s); };
  const int nv = static_cast<int>(G.vertices.size());
  for (int i = 0; i < nv; ++i)
    if (G.vertices[i].id != i) bad("vertex ids are not consecutive");
  for (size_t i = 0; i < G.edges.size(); ++i) {
    const Edge& e = G.edges[i];
    if (e.id != static_cast<int>(i)) bad("edge ids are not consecutive");
    if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv) {
      bad("edge endpoint out of range");
      return issues;
    }
    if (e.u == e.v) bad("loop edge " + std::to_string(e.id));
  }
  if (!issues.empty()) return issues;
  if (!G.connected()) bad("graph is not connected");
  int gsum = 0;
  for (const auto& v : G.vertices) gsum += v.genus;
  if (gsum + G.h1() != G.g) bad("genus mismatch: sum g_v + h1 != g");

  std::vector<int> seen(G.gamma.size(), 0);
  for (const auto& v : G.vertices) {
    for (int leg : v.legs) {
      if (leg < 0 || leg >= static_cast<int>(G.gamma.size())) {
        bad("leg index out of range");
        continue;
      }
      seen[leg]++;
      const Monodromy& m = G.gamma[leg];
      bool ok = (m.kind == Monodromy::Kind::rho && v.level != Level::inf) ||
                (m.kind == Monodromy::Kind::phi && v.level != Level::zero) ||
                (m.kind == Monodromy::Kind::zeta && v.level == Level::inf);
      if (!ok) bad("leg " + m.str() + " not allowed at level " + level_str(v.level));
    }
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 1) bad("leg " + std::to_string(i) + " is not attached exactly once");

  for (const auto& e : G.edges) {
    const Level lu = G.vertices[e.u].level, lv = G.vertices[e.v].level;
    switch (e.cls) {
      case EdgeClass::E0:
        if (lu != Level::zero || lv != Level::one) bad("E0 edge must join level 0 to level 1");
        if (!is_integer(e.d0) || e.d0 <= 0 || e.dinf != 0) bad("E0 edge degree must be a positive integer");
        break;
      case EdgeClass::Einf:
        if (lu != Level::one || lv != Level::inf) bad("Einf edge must join level 1 to level inf");
        if (e.d0 != 0 || e.dinf <= 0 || !is_integer(5 * e.dinf)) bad("Einf edge degree must be a negative fifth");
        break;
      case EdgeClass::E0inf:
        if (lu != Level::zero || lv != Level::inf) bad("E0inf edge must join level 0 to level inf");
        if (e.d0 != e.dinf || !is_integer(e.d0) || e.d0 <= 0) bad("E0inf edge degrees must be equal positive integers");
        break;
    }
  }
  if (!issues.empty()) return issues;

  Rat s0 = 0, sinf = 0;
  for (const auto& e : G.edges) {
    s0 += e.d0;
    sinf += e.dinf;
  }
  for (const auto& v : G.vertices) {
    VertexClass cls;
    try {
      cls = classify_vertex(G, v);
    } catch (const GraphError& err) {
      bad(err.what());
      continue;
    }
    s0 += v.d0;
    sinf += v.dinf;
    int n = static_cast<int>(v.legs.size()) + G.valence(v.id);
    switch (v.level) {
      case Level::zero:
        if (!is_integer(v.d0) || v.d0 < 0 || v.dinf != 0) bad("level-0 vertex degree must be a nonnegative integer");
        break;
      case Level::one:
        if (v.d0 != 0 || v.dinf != 0) bad("level-1 vertex must have degree (0,0)");
        break;
      case Level::inf: {
        if (v.d0 != 0) bad("level-inf vertex must have zero L-degree");
        Rat expect = cls == VertexClass::VS ? Rat(-(2 * v.genus - 2 + n)) / 5 : Rat(0);
        if (v.dinf != expect) bad("level-inf vertex " + std::to_string(v.id) + " has wrong N-degree");
        auto inc = G.incident_edges(v.id);
        if (cls == VertexClass::V01) {
          if (!is_integer(G.edges[inc[0]].de())) bad("edge at a level-inf V01 vertex must have integer degree");
        } else if (cls == VertexClass::V02) {
          if (!is_integer(G.edges[inc[0]].de() + G.edges[inc[1]].de())) bad("unbalanced monodromy at a level-inf node");
        } else if (cls == VertexClass::V11) {
          const Monodromy& m = G.gamma[v.legs[0]];
          Rat x = 5 * G.edges[inc[0]].de();
          long r = ((to_long(x) % 5) + 5) % 5;
          long want = m.kind == Monodromy::Kind::zeta ? m.m : 0;
          if (r != want) bad("leg monodromy incompatible with edge degree at a level-inf marking");
        } else {
          auto ms = infinity_monodromies(G, v);
          long s = 2 * v.genus - 2 + n;
          for (int m : ms) s -= m;
          if (((s % 5) + 5) % 5 != 0) bad("monodromy congruence fails at level-inf vertex " + std::to_string(v.id));
        }
        break;
      }
    }
  }
  if (s0 != G.d0) bad("d0 degree sum mismatch");
  if (sinf != G.dinf) bad("dinf degree sum mismatch");

  // rho must vanish at the level-1 end of a level-inf edge. On the edge curve
  // rho is c*x^N with N = -5 d_e + delta + delta', so N >= 1 is required.
  for (const auto& e : G.edges) {
    if (e.cls != EdgeClass::Einf) continue;
    const Vertex& one = G.vertices[e.u];
    const Vertex& far = G.vertices[e.v];
    long delta = classify_vertex(G, far) == VertexClass::V01 ? -1 : 0;
    long delta1 = classify_vertex(G, one) == VertexClass::V01 ? -1 : 0;
    if (to_long(-5 * e.de()) + delta + delta1 < 1) bad("rho cannot vanish at the level-1 end of edge " + std::to_string(e.id));
  }
  return issues;
}

bool is_flat(const DecoratedGraph& G) {
  for (const auto& v : G.vertices) {
    if (v.level != Level::one || classify_vertex(G, v) != VertexClass::V02) continue;
    auto inc = G.incident_edges(v.id);
    const Edge& a = G.edges[inc[0]];
    const Edge& b = G.edges[inc[1]];
    if (a.de() + b.de() != 0) continue;
    const Edge& einf = a.cls == EdgeClass::Einf ? a : b;
    if (einf.cls != EdgeClass::Einf) continue;
    if (classify_vertex(G, G.vertices[einf.v]) != VertexClass::V01) return false;
  }
  for (const auto& e : G.edges)
    if (e.cls == EdgeClass::E0inf) return false;
  return true;
}

bool is_regular(const DecoratedGraph& G) {
  for (const auto& v : G.vertices) {
    if (v.level != Level::inf) continue;
    VertexClass cls = classify_vertex(G, v);
    auto inc = G.incident_edges(v.id);
    if (cls == VertexClass::VS) {
      auto ms = infinity_monodromies(G, v);
      bool narrow12 = std::all_of(ms.begin(), ms.end(), [](int m) { return m == 1 || m == 2; });
      bool exceptional = v.genus == 0 && is_exceptional_sector(ms);
      if (!narrow12 && !exceptional) return false;
    } else if (cls == VertexClass::V02 || cls == VertexClass::V11) {
      // A scheme point here would be a node or marking.
      if (is_integer(G.edges[inc[0]].de())) return false;
    }
  }
  return true;
}

DecoratedGraph flatten(const DecoratedGraph& G) {
  std::vector<bool> drop_vertex(G.vertices.size(), false), drop_edge(G.edges.size(), false);
  std::vector<Edge> added;
  for (const auto& v : G.vertices) {
    if (v.level != Level::one || classify_vertex(G, v) != VertexClass::V02) continue;
    auto inc = G.incident_edges(v.id);
    const Edge& a = G.edges[inc[0]];
    const Edge& b = G.edges[inc[1]];
    if (a.de() + b.de() != 0) continue;
    const Edge* e0 = a.cls == EdgeClass::E0 ? &a : (b.cls == EdgeClass::E0 ? &b : nullptr);
    const Edge* ei = a.cls == EdgeClass::Einf ? &a : (b.cls == EdgeClass::Einf ? &b : nullptr);
    if (!e0 || !ei) continue;
    if (classify_vertex(G, G.vertices[ei->v]) == VertexClass::V01) continue;
    drop_vertex[v.id] = true;
    drop_edge[e0->id] = drop_edge[ei->id] = true;
    Edge ne;
    ne.u = e0->u;
    ne.v = ei->v;
    ne.cls = EdgeClass::E0inf;
    ne.d0 = e0->d0;
    ne.dinf = ei->dinf;
    added.push_back(ne);
  }
  DecoratedGraph out;
  out.g = G.g;
  out.gamma = G.gamma;
  out.d0 = G.d0;
  out.dinf = G.dinf;
  std::vector<int> remap(G.vertices.size(), -1);
  for (const auto& v : G.vertices) {
    if (drop_vertex[v.id]) continue;
    Vertex nv = v;
    nv.id = static_cast<int>(out.vertices.size());
    remap[v.id] = nv.id;
    out.vertices.push_back(nv);
  }
  auto push_edge = [&](Edge e) {
    e.id = static_cast<int>(out.edges.size());
    e.u = remap[e.u];
    e.v = remap[e.v];
    out.edges.push_back(e);
  };
  for (const auto& e : G.edges)
    if (!drop_edge[e.id]) push_edge(e);
  for (const auto& e : added) push_edge(e);
  return out;
}

// ---------------------------------------------------------------- canonical form

namespace {

std::string vertex_color(const Vertex& v) {
  std::string s = "L" + level_str(v.level) + "g" + std::to_string(v.genus) + "l";
  for (size_t i = 0; i < v.legs.size(); ++i) s += (i ? "." : "") + std::to_string(v.legs[i]);
  s += "d" + to_string(v.d0) + "," + to_string(v.dinf);
  return s;
}

std::string edge_label(const Edge& e) { return edge_class_str(e.cls) + ":" + to_string(e.d0) + "," + to_string(e.dinf); }

bool is_hub(const Vertex& v) { return v.level != Level::one; }

struct CanonData {
  std::vector<int> hubs;                    // hub vertex ids, grouped by refined color
  std::vector<std::pair<int, int>> blocks;  // [begin, end) ranges of equal color in hubs
  std::vector<std::string> hub_colors;
  std::vector<int> stars;
};

CanonData canon_prepare(const DecoratedGraph& G) {
  CanonData cd;
  std::vector<std::pair<std::string, int>> hc;
  for (const auto& v : G.vertices) {
    if (!is_hub(v)) {
      cd.stars.push_back(v.id);
      continue;
    }
    // Refine by the multiset of (neighbor color, edge label) pairs.
    std::vector<std::string> nb;
    for (int eid : G.incident_edges(v.id)) {
      const Edge& e = G.edges[eid];
      int other = e.u == v.id ? e.v : e.u;
      nb.push_back(vertex_color(G.vertices[other]) + "/" + edge_label(e));
    }
    std::sort(nb.begin(), nb.end());
    std::string color = vertex_color(v) + "{";
    for (const auto& s : nb) color += s + ";";
    color += "}";
    hc.emplace_back(color, v.id);
  }
  std::stable_sort(hc.begin(), hc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < hc.size();) {
    size_t j = i;
    while (j < hc.size() && hc[j].first == hc[i].first) ++j;
    cd.blocks.emplace_back(static_cast<int>(i), static_cast<int>(j));
    i = j;
  }
  for (auto& [c, id] : hc) {
    cd.hubs.push_back(id);
    cd.hub_colors.push_back(c);
  }
  return cd;
}

struct Encoding {
  std::string text;
  std::vector<std::string> star_codes;  // aligned with CanonData::stars
};

// position[v] gives the canonical slot of hub v.
Encoding encode(const DecoratedGraph& G, const CanonData& cd, const std::vector<int>& position) {
  Encoding enc;
  std::string s = "H[";
  for (const auto& c : cd.hub_colors) s += c + "|";
  s += "]X[";
  std::vector<std::string> xs;
  for (const auto& e : G.edges) {
    if (!is_hub(G.vertices[e.u]) || !is_hub(G.vertices[e.v])) continue;
    int a = position[e.u], b = position[e.v];
    if (a > b) std::swap(a, b);
    xs.push_back(std::to_string(a) + "-" + std::to_string(b) + ":" + edge_label(e));
  }
  std::sort(xs.begin(), xs.end());
  for (const auto& x : xs) s += x + "|";
  s += "]S[";
  std::vector<std::string> codes;
  for (int sid : cd.stars) {
    std::vector<std::string> es;
    for (int eid : G.incident_edges(sid)) {
      const Edge& e = G.edges[eid];
      int other = e.u == sid ? e.v : e.u;
      es.push_back(std::to_string(position[other]) + ":" + edge_label(e));
    }
    std::sort(es.begin(), es.end());
    std::string code = vertex_color(G.vertices[sid]) + "<";
    for (const auto& x : es) code += x + ";";
    code += ">";
    enc.star_codes.push_back(code);
    codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());
  for (const auto& c : codes) s += c + "|";
  s += "]";
  enc.text = s;
  return enc;
}

// Calls fn(position) for every hub relabeling that permutes within blocks.
void for_each_hub_labeling(const DecoratedGraph& G, const CanonData& cd,
                           const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> order = cd.hubs;  // order[slot] = vertex id
  std::vector<int> position(G.vertices.size(), -1);
  std::function<void(size_t)> rec = [&](size_t b) {
    if (b == cd.blocks.size()) {
      for (size_t slot = 0; slot < order.size(); ++slot) position[order[slot]] = static_cast<int>(slot);
      fn(position);
      return;
    }
    auto [lo, hi] = cd.blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
}

std::uint64_t factorial_u64(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

std::string canonical_form(const DecoratedGraph& G) {
  CanonData cd = canon_prepare(G);
  std::optional<std::string> best;
  for_each_hub_labeling(G, cd, [&](const std::vector<int>& pos) {
    std::string t = encode(G, cd, pos).text;
    if (!best || t < *best) best = t;
  });
  return "g" + std::to_string(G.g) + "/" + gamma_str(G.gamma) + "/" + to_string(G.d0) + "," + to_string(G.dinf) +
         "/" + *best;
}

std::uint64_t automorphism_order(const DecoratedGraph& G) {
  CanonData cd = canon_prepare(G);
  std::vector<int> id_pos(G.vertices.size(), -1);
  for (size_t slot = 0; slot < cd.hubs.size(); ++slot) id_pos[cd.hubs[slot]] = static_cast<int>(slot);
  Encoding ref = encode(G, cd, id_pos);
  std::uint64_t hub_perms = 0;
  for_each_hub_labeling(G, cd, [&](const std::vector<int>& pos) {
    if (encode(G, cd, pos).text == ref.text) ++hub_perms;
  });
  std::uint64_t mult = 1;
  std::map<std::string, int> star_classes;
  for (const auto& c : ref.star_codes) star_classes[c]++;
  for (const auto& [c, k] : star_classes) mult *= factorial_u64(k);
  // Parallel edges with equal decorations can be permuted freely.
  std::map<std::tuple<int, int, std::string>, int> parallel;
  for (const auto& e : G.edges) parallel[{std::min(e.u, e.v), std::max(e.u, e.v), edge_label(e)}]++;
  for (const auto& [k, c] : parallel) mult *= factorial_u64(c);
  return hub_perms * mult;
}

std::uint64_t automorphism_order_bruteforce(const DecoratedGraph& G) {
  const int nv = static_cast<int>(G.vertices.size());
  const int ne = static_cast<int>(G.edges.size());
  if (nv > 8 || ne > 10) throw GraphError("graph too large for brute-force automorphism search");
  std::vector<std::string> color(nv);
  for (int i = 0; i < nv; ++i) color[i] = vertex_color(G.vertices[i]);
  std::vector<int> sigma(nv);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < nv && ok; ++i) ok = color[i] == color[sigma[i]];
    if (!ok) continue;
    // Count edge bijections tau compatible with sigma by backtracking.
    std::vector<bool> used(ne, false);
    std::function<void(int)> rec = [&](int i) {
      if (i == ne) {
        ++count;
        return;
      }
      const Edge& e = G.edges[i];
      int a = sigma[e.u], b = sigma[e.v];
      for (int j = 0; j < ne; ++j) {
        if (used[j]) continue;
        const Edge& f = G.edges[j];
        bool ends = (f.u == a && f.v == b) || (f.u == b && f.v == a);
        if (!ends || f.cls != e.cls || f.d0 != e.d0 || f.dinf != e.dinf) continue;
        used[j] = true;
        rec(i + 1);
        used[j] = false;
      }
    };
    rec(0);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

DecoratedGraph canonical_relabel(const DecoratedGraph& G) {
  CanonData cd = canon_prepare(G);
  std::optional<std::string> best;
  std::vector<int> best_pos;
  for_each_hub_labeling(G, cd, [&](const std::vector<int>& pos) {
    std::string t = encode(G, cd, pos).text;
    if (!best || t < *best) {
      best = t;
      best_pos = pos;
    }
  });
  Encoding enc = encode(G, cd, best_pos);
  std::vector<int> order(cd.hubs.size());
  for (int h : cd.hubs) order[best_pos[h]] = h;
  std::vector<std::pair<std::string, int>> stars;
  for (size_t i = 0; i < cd.stars.size(); ++i) stars.emplace_back(enc.star_codes[i], cd.stars[i]);
  std::stable_sort(stars.begin(), stars.end());
  for (auto& s : stars) order.push_back(s.second);

  DecoratedGraph out;
  out.g = G.g;
  out.gamma = G.gamma;
  out.d0 = G.d0;
  out.dinf = G.dinf;
  std::vector<int> remap(G.vertices.size());
  for (size_t i = 0; i < order.size(); ++i) {
    Vertex v = G.vertices[order[i]];
    remap[v.id] = static_cast<int>(i);
    v.id = static_cast<int>(i);
    out.vertices.push_back(v);
  }
  for (const auto& e : G.edges) {
    Edge ne = e;
    ne.u = remap[e.u];
    ne.v = remap[e.v];
    out.edges.push_back(ne);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.d0 != b.d0) return a.d0 < b.d0;
    return a.dinf < b.dinf;
  });
  for (size_t i = 0; i < out.edges.size(); ++i) out.edges[i].id = static_cast<int>(i);
  return out;
}

// ---------------------------------------------------------------- serialization

std::string serialize(const DecoratedGraph& G) {
  std::ostringstream os;
  os << "graph g=" << G.g << " gamma=" << gamma_str(G.gamma) << " d=" << to_string(G.d0) << ","
     << to_string(G.dinf) << "\n";
  for (const auto& v : G.vertices) {
    os << "vertex " << v.id << " level=" << level_str(v.level) << " genus=" << v.genus << " legs=";
    if (v.legs.empty()) os << "-";
    for (size_t i = 0; i < v.legs.size(); ++i) os << (i ? "." : "") << v.legs[i];
    os << " deg=" << to_string(v.d0) << "," << to_string(v.dinf) << "\n";
  }
  for (const auto& e : G.edges)
    os << "edge " << e.id << " ends=" << e.u << "-" << e.v << " class=" << edge_class_str(e.cls)
       << " deg=" << to_string(e.d0) << "," << to_string(e.dinf) << "\n";
  os << "end\n";
  return os.str();
}

namespace {

std::map<std::string, std::string> parse_fields(std::istringstream& ls) {
  std::map<std::string, std::string> f;
  std::string tok;
  while (ls >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw GraphError("malformed field '" + tok + "'");
    f[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return f;
}

std::pair<Rat, Rat> parse_pair(const std::string& s) {
  auto c = s.find(',');
  if (c == std::string::npos) throw GraphError("malformed degree pair '" + s + "'");
  return {parse_rat(s.substr(0, c)), parse_rat(s.substr(c + 1))};
}

Level parse_level(const std::string& s) {
  if (s == "0") return Level::zero;
  if (s == "1") return Level::one;
  if (s == "inf") return Level::inf;
  throw GraphError("bad level '" + s + "'");
}

}  // namespace

DecoratedGraph deserialize(const std::string& text) {
  DecoratedGraph G;
  std::istringstream in(text);
  std::string line;
  bool header = false, done = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "graph") {
      auto f = parse_fields(ls);
      G.g = std::stoi(f.at("g"));
      G.gamma = parse_gamma(f.count("gamma") ? f.at("gamma") : "");
      std::tie(G.d0, G.dinf) = parse_pair(f.at("d"));
      header = true;
    } else if (kind == "vertex") {
      int id;
      ls >> id;
      auto f = parse_fields(ls);
      Vertex v;
      v.id = id;
      v.level = parse_level(f.at("level"));
      v.genus = std::stoi(f.at("genus"));
      if (f.at("legs") != "-") {
        std::stringstream ss(f.at("legs"));
        std::string t;
        while (std::getline(ss, t, '.')) v.legs.push_back(std::stoi(t));
      }
      std::tie(v.d0, v.dinf) = parse_pair(f.at("deg"));
      G.vertices.push_back(v);
    } else if (kind == "edge") {
      int id;
      ls >> id;
      auto f = parse_fields(ls);
      Edge e;
      e.id = id;
      const std::string& ends = f.at("ends");
      auto dash = ends.find('-');
      e.u = std::stoi(ends.substr(0, dash));
      e.v = std::stoi(ends.substr(dash + 1));
      const std::string& c = f.at("class");
      e.cls = c == "E0" ? EdgeClass::E0 : c == "Einf" ? EdgeClass::Einf : c == "E0inf" ? EdgeClass::E0inf
                                                                                          : throw GraphError("bad edge class");
      std::tie(e.d0, e.dinf) = parse_pair(f.at("deg"));
      G.edges.push_back(e);
    } else if (kind == "end") {
      done = true;
      break;
    } else {
      throw GraphError("unknown record '" + kind + "'");
    }
    } catch (const GraphError& e) {
      throw GraphError("graph record line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw GraphError("graph record line " + std::to_string(lineno) + ": missing or malformed field");
    }
  }
  if (!header || !done) throw GraphError("incomplete graph record");
  for (std::size_t i = 0; i < G.vertices.size(); ++i)
    if (G.vertices[i].id != static_cast<int>(i)) throw GraphError("vertex ids must be 0..n-1 in order");
  for (std::size_t i = 0; i < G.edges.size(); ++i)
    if (G.edges[i].id != static_cast<int>(i)) throw GraphError("edge ids must be 0..m-1 in order");
  return G;
}

std::string describe(const DecoratedGraph& G) {
  std::ostringstream os;
  for (const auto& v : G.vertices) {
    os << "v" << v.id << "[L" << level_str(v.level) << ",g" << v.genus;
    if (v.level == Level::zero) os << ",d" << to_string(v.d0);
    for (int leg : v.legs) os << "," << G.gamma[leg].str();
    os << "," << vertex_class_str(classify_vertex(G, v)) << "] ";
  }
  for (const auto& e : G.edges) os << "e" << e.id << "(" << e.u << "-" << e.v << ",d_e=" << to_string(e.de()) << ") ";
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

DecoratedGraph make_theta_special_graph(int g, int m) {
  if (g < 1 || m < 0) throw GraphError("special graph needs g >= 1 and m >= 0");
  int k = 7 * g - 2 + 5 * m;
  DecoratedGraph G;
  G.g = g;
  G.d0 = 0;
  G.dinf = g + m;
  Vertex hub;
  hub.id = 0;
  hub.level = Level::inf;
  hub.genus = g;
  hub.dinf = Rat(-(2 * g - 2 + k)) / 5;
  G.vertices.push_back(hub);
  for (int i = 0; i < k; ++i) {
    Vertex s;
    s.id = i + 1;
    s.level = Level::one;
    G.vertices.push_back(s);
    Edge e;
    e.id = i;
    e.u = i + 1;
    e.v = 0;
    e.cls = EdgeClass::Einf;
    e.dinf = rat(2, 5);
    G.edges.push_back(e);
  }
  return G;
}

}  // namespace msp
