// Enumeration of regular flat decorated graphs.
//
// Every E0 or Einf edge has exactly one level-1 endpoint, so a graph is a set
// of "hubs" (level-0 and level-inf vertices) joined through "stars" (level-1
// vertices). The search first picks a nondecreasing list of hub decorations,
// then a nondecreasing list of star decorations, each star listing its edges
// to hubs. Isomorphic duplicates that survive the ordering are removed by
// canonical form.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "msp/graphs.hpp"

namespace msp {

namespace {

struct HubDec {
  Level level = Level::zero;
  int genus = 0;
  std::uint32_t legs = 0;
  long d = 0;  // L-degree of a level-0 hub
  auto key() const { return std::make_tuple(static_cast<int>(level), genus, legs, d); }
  bool operator<(const HubDec& o) const { return key() < o.key(); }
};

struct StarEdge {
  int hub = 0;
  Rat de;
  bool operator<(const StarEdge& o) const { return hub != o.hub ? hub < o.hub : de < o.de; }
  bool operator==(const StarEdge& o) const { return hub == o.hub && de == o.de; }
};

struct StarDec {
  int genus = 0;
  std::uint32_t legs = 0;
  std::vector<StarEdge> edges;  // sorted
  bool operator<(const StarDec& o) const {
    if (genus != o.genus) return genus < o.genus;
    if (legs != o.legs) return legs < o.legs;
    return edges < o.edges;
  }
};

int popcount(std::uint32_t x) { return std::popcount(x); }

class Enumerator {
 public:
  Enumerator(int g, const std::vector<Monodromy>& gamma, const Rat& d0, const Rat& dinf,
             const EnumerationOptions& opts)
      : g_(g), gamma_(gamma), d0_(d0), dinf_(dinf), opts_(opts) {
    for (size_t i = 0; i < gamma.size(); ++i) {
      std::uint32_t bit = 1u << i;
      all_legs_ |= bit;
      switch (gamma[i].kind) {
        case Monodromy::Kind::rho: rho_ |= bit; break;
        case Monodromy::Kind::phi: phi_ |= bit; break;
        case Monodromy::Kind::zeta: zeta_ |= bit; break;
      }
    }
  }

  EnumerationResult run() {
    single_vertex_graphs();
    if (is_integer(d0_) && d0_ >= 0 && is_integer(5 * dinf_)) {
      d0_int_ = to_long(d0_);
      hub_dfs();
    }
    EnumerationResult res;
    for (auto& [k, G] : regular_) res.graphs.push_back(G);
    for (auto& [k, G] : excluded_) res.excluded.push_back(G);
    res.irregular = irregular_.size();
    return res;
  }

 private:
  int g_;
  std::vector<Monodromy> gamma_;
  Rat d0_, dinf_;
  long d0_int_ = 0;
  EnumerationOptions opts_;
  std::uint32_t all_legs_ = 0, rho_ = 0, phi_ = 0, zeta_ = 0;

  std::vector<HubDec> hubs_;
  std::vector<int> hub_edges_;
  std::vector<Rat> hub_neg_;  // sum of -d_e over Einf edges at a level-inf hub
  std::vector<StarDec> stars_;
  std::uint32_t used_legs_ = 0;
  int genus_used_ = 0;
  long d0_used_ = 0;
  int sum_bm1_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<int> comp_;  // hub components while generating star candidates
  int h1_now_ = 0;

  std::map<std::string, DecoratedGraph> regular_, excluded_;
  std::map<std::string, bool> irregular_;

  void tick() {
    if (++nodes_ > opts_.max_nodes)
      throw BoundViolation("enumeration exceeded " + std::to_string(opts_.max_nodes) +
                           " search nodes; the datum is too large for exhaustive search");
  }

  static std::vector<int> mask_to_legs(std::uint32_t m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
      if (m & 1u) out.push_back(i);
    return out;
  }

  // Lower bound for the final N-degree of a level-inf hub given its current
  // edges; both possible final shapes (stable or unstable) are covered.
  Rat hub_lb(size_t j) const {
    const HubDec& h = hubs_[j];
    if (h.level != Level::inf) return 0;
    int S = popcount(h.legs);
    int E = hub_edges_[j];
    Rat stable = hub_neg_[j] - rat(E, 5) - rat(2 * h.genus - 2 + S, 5);
    stable.canonicalize();
    if (h.genus == 0 && E + S <= 2) {
      // Unstable shapes: V11 needs one fractional edge; V01 and V02 need an
      // integral total degree, hence at least 1.
      Rat unstable = std::max(hub_neg_[j], S == 1 ? rat(1, 5) : Rat(1));
      return std::min(stable, unstable);
    }
    return stable;
  }

  Rat total_lb() const {
    Rat s = 0;
    for (size_t j = 0; j < hubs_.size(); ++j) s += hub_lb(j);
    return s;
  }

  // Level-0 hubs without edges still need at least one unit of d0.
  long d0_reserved(int except = -1) const {
    long r = 0;
    for (size_t j = 0; j < hubs_.size(); ++j)
      if (hubs_[j].level == Level::zero && hub_edges_[j] == 0 && static_cast<int>(j) != except) ++r;
    return r;
  }

  // Component id of every hub in the partial graph (hubs plus placed stars).
  std::vector<int> hub_components() const {
    std::vector<int> parent(hubs_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& s : stars_)
      for (size_t i = 1; i < s.edges.size(); ++i) parent[find(s.edges[i].hub)] = find(s.edges[0].hub);
    std::vector<int> comp(hubs_.size());
    for (size_t j = 0; j < hubs_.size(); ++j) comp[j] = find(static_cast<int>(j));
    return comp;
  }

  // First Betti number of the partial graph. Adding a star never lowers it.
  int h1_partial() const {
    auto comp = hub_components();
    std::vector<int> roots(comp);
    std::sort(roots.begin(), roots.end());
    int c = static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
    return sum_bm1_ - static_cast<int>(hubs_.size()) + c;
  }

  void consider(const DecoratedGraph& G) {
    if (!validate(G).empty()) return;
    if (!is_flat(G)) {
      // A balanced node has integral monodromy, so the flattened graph is
      // normally irregular; regular ones are kept aside because no edge
      // factor is available for E0inf edges.
      DecoratedGraph F = flatten(G);
      std::string key = canonical_form(F);
      if (is_regular(F))
        excluded_.emplace(key, canonical_relabel(F));
      else
        irregular_[key] = true;
      return;
    }
    std::string key = canonical_form(G);
    if (!is_regular(G)) {
      irregular_[key] = true;
      return;
    }
    regular_.emplace(key, canonical_relabel(G));
  }

  void single_vertex_graphs() {
    for (Level lvl : {Level::zero, Level::one, Level::inf}) {
      DecoratedGraph G;
      G.g = g_;
      G.gamma = gamma_;
      G.d0 = d0_;
      G.dinf = dinf_;
      Vertex v;
      v.id = 0;
      v.level = lvl;
      v.genus = g_;
      v.legs = mask_to_legs(all_legs_);
      if (lvl == Level::zero) v.d0 = d0_;
      if (lvl == Level::inf) v.dinf = rat(-(2 * g_ - 2 + static_cast<int>(gamma_.size())), 5);
      G.vertices.push_back(v);
      if (!is_stable(G, G.vertices[0])) continue;
      consider(G);
    }
  }

  // ------------------------------------------------------------ hub phase

  std::vector<HubDec> hub_candidates() const {
    std::vector<HubDec> out;
    int g_rem = g_ - genus_used_;
    std::uint32_t free = all_legs_ & ~used_legs_;
    long d0_rem = d0_int_ - d0_used_ - d0_reserved();
    for (Level lvl : {Level::zero, Level::inf}) {
      std::uint32_t allowed = free & (lvl == Level::zero ? rho_ : zeta_);
      for (int gv = 0; gv <= g_rem; ++gv) {
        for (std::uint32_t sub = allowed;; sub = (sub - 1) & allowed) {
          if (lvl == Level::zero) {
            for (long d = 0; d + 1 <= d0_rem; ++d) out.push_back({lvl, gv, sub, d});
          } else {
            out.push_back({lvl, gv, sub, 0});
          }
          if (sub == 0) break;
        }
      }
    }
    std::sort(out.begin(), out.end());
    if (!hubs_.empty()) {
      const HubDec& last = hubs_.back();
      out.erase(std::remove_if(out.begin(), out.end(), [&](const HubDec& h) { return h < last; }), out.end());
    }
    if (opts_.reverse_order) std::reverse(out.begin(), out.end());
    return out;
  }

  void hub_dfs() {
    tick();
    if (!hubs_.empty()) star_dfs();
    for (const HubDec& h : hub_candidates()) {
      hubs_.push_back(h);
      hub_edges_.push_back(0);
      hub_neg_.push_back(0);
      used_legs_ |= h.legs;
      genus_used_ += h.genus;
      d0_used_ += h.d;
      // Later hubs can lower the bound by at most (2 g_rem + legs_rem)/5.
      Rat slack = rat(2 * (g_ - genus_used_) + popcount(all_legs_ & ~used_legs_ & zeta_), 5);
      bool ok = d0_used_ + d0_reserved() <= d0_int_ && total_lb() - slack <= dinf_;
      if (ok) hub_dfs();
      d0_used_ -= h.d;
      genus_used_ -= h.genus;
      used_legs_ &= ~h.legs;
      hub_neg_.pop_back();
      hub_edges_.pop_back();
      hubs_.pop_back();
    }
  }

  // ------------------------------------------------------------ star phase

  void apply_edge(const StarEdge& e, int sign) {
    hub_edges_[e.hub] += sign;
    if (hubs_[e.hub].level == Level::zero)
      d0_used_ += sign * to_long(e.de);
    else
      hub_neg_[e.hub] -= sign * e.de;
  }

  void apply_star(const StarDec& s, int sign) {
    for (const auto& e : s.edges) apply_edge(e, sign);
    if (sign > 0)
      used_legs_ |= s.legs;
    else
      used_legs_ &= ~s.legs;
    genus_used_ += sign * s.genus;
    sum_bm1_ += sign * (static_cast<int>(s.edges.size()) - 1);
  }

  bool budgets_ok() const { return d0_used_ + d0_reserved() <= d0_int_ && total_lb() <= dinf_; }

  // h1 grows by b - t when a star with b edges touching t distinct
  // components is added; b - t never decreases as edges are appended.
  int star_h1_increase(const StarDec& cur) const {
    std::vector<int> t;
    for (const auto& e : cur.edges) t.push_back(comp_[e.hub]);
    std::sort(t.begin(), t.end());
    return static_cast<int>(cur.edges.size()) - static_cast<int>(std::unique(t.begin(), t.end()) - t.begin());
  }

  void star_edges_rec(StarDec& cur, std::vector<StarDec>& out) {
    if (!cur.edges.empty()) {
      int b = static_cast<int>(cur.edges.size());
      int h1_after = h1_now_ + star_h1_increase(cur);
      bool ok = genus_used_ + cur.genus + h1_after <= g_;
      bool v01 = cur.genus == 0 && cur.legs == 0 && b == 1;
      if (v01 && hubs_[cur.edges[0].hub].level == Level::inf && cur.edges[0].de > rat(-2, 5)) ok = false;
      if (ok && !stars_.empty() && cur < stars_.back()) ok = false;
      if (ok) out.push_back(cur);
      if (!ok && genus_used_ + cur.genus + h1_after > g_) return;
    }
    int start_hub = cur.edges.empty() ? 0 : cur.edges.back().hub;
    for (int j = start_hub; j < static_cast<int>(hubs_.size()); ++j) {
      const HubDec& h = hubs_[j];
      bool same = !cur.edges.empty() && cur.edges.back().hub == j;
      if (h.level == Level::zero) {
        long lo = same ? to_long(cur.edges.back().de) : 1;
        for (long d = lo;; ++d) {
          StarEdge e{j, Rat(d)};
          apply_edge(e, +1);
          bool ok = d0_used_ + d0_reserved() <= d0_int_;
          if (ok) {
            cur.edges.push_back(e);
            star_edges_rec(cur, out);
            cur.edges.pop_back();
          }
          apply_edge(e, -1);
          if (!ok) break;
        }
      } else {
        // d_e = -k/5; edges in a star are sorted by increasing d_e, i.e. decreasing k.
        long hi_k = same ? to_long(-5 * cur.edges.back().de) : -1;
        bool plain = h.genus == 0 && h.legs == 0;
        std::vector<long> ks;
        for (long k = 1; hi_k < 0 || k <= hi_k; ++k) {
          StarEdge e{j, rat(-k, 5)};
          e.de.canonicalize();
          apply_edge(e, +1);
          bool ok = total_lb() <= dinf_;
          apply_edge(e, -1);
          if (!ok) break;
          if (k % 5 == 0 && !plain) continue;  // integer degree at a marked or stable hub is irregular
          ks.push_back(k);
        }
        // Sorted order within the star wants increasing d_e: largest k first.
        std::reverse(ks.begin(), ks.end());
        for (long k : ks) {
          StarEdge e{j, rat(-k, 5)};
          e.de.canonicalize();
          if (same && e.de < cur.edges.back().de) continue;
          apply_edge(e, +1);
          cur.edges.push_back(e);
          star_edges_rec(cur, out);
          cur.edges.pop_back();
          apply_edge(e, -1);
        }
      }
    }
  }

  std::vector<StarDec> star_candidates() {
    std::vector<StarDec> out;
    comp_ = hub_components();
    h1_now_ = h1_partial();
    std::uint32_t allowed = all_legs_ & ~used_legs_ & (rho_ | phi_);
    for (int gv = 0; gv <= g_ - genus_used_; ++gv) {
      for (std::uint32_t sub = allowed;; sub = (sub - 1) & allowed) {
        StarDec cur;
        cur.genus = gv;
        cur.legs = sub;
        bool order_ok = stars_.empty() || std::make_pair(gv, sub) >= std::make_pair(stars_.back().genus, stars_.back().legs);
        if (order_ok) star_edges_rec(cur, out);
        if (sub == 0) break;
      }
    }
    std::sort(out.begin(), out.end());
    if (opts_.reverse_order) std::reverse(out.begin(), out.end());
    return out;
  }

  void star_dfs() {
    tick();
    try_complete();
    for (const StarDec& s : star_candidates()) {
      apply_star(s, +1);
      stars_.push_back(s);
      if (budgets_ok() && genus_used_ + h1_partial() <= g_) star_dfs();
      stars_.pop_back();
      apply_star(s, -1);
    }
  }

  void try_complete() {
    if (stars_.empty() || used_legs_ != all_legs_ || d0_used_ != d0_int_) return;
    if (genus_used_ + h1_partial() != g_) return;
    Rat cinf = 0;
    for (size_t j = 0; j < hubs_.size(); ++j) {
      if (hub_edges_[j] == 0) return;
      const HubDec& h = hubs_[j];
      if (h.level != Level::inf) continue;
      cinf += hub_neg_[j];
      int n = hub_edges_[j] + popcount(h.legs);
      if (2 * h.genus - 2 + n > 0) cinf -= rat(2 * h.genus - 2 + n, 5);
    }
    if (cinf != dinf_) return;
    consider(build());
  }

  DecoratedGraph build() const {
    DecoratedGraph G;
    G.g = g_;
    G.gamma = gamma_;
    G.d0 = d0_;
    G.dinf = dinf_;
    for (size_t j = 0; j < hubs_.size(); ++j) {
      const HubDec& h = hubs_[j];
      Vertex v;
      v.id = static_cast<int>(j);
      v.level = h.level;
      v.genus = h.genus;
      v.legs = mask_to_legs(h.legs);
      if (h.level == Level::zero) v.d0 = h.d;
      int n = hub_edges_[j] + popcount(h.legs);
      if (h.level == Level::inf && 2 * h.genus - 2 + n > 0) v.dinf = rat(-(2 * h.genus - 2 + n), 5);
      G.vertices.push_back(v);
    }
    for (const StarDec& s : stars_) {
      Vertex v;
      v.id = static_cast<int>(G.vertices.size());
      v.level = Level::one;
      v.genus = s.genus;
      v.legs = mask_to_legs(s.legs);
      G.vertices.push_back(v);
      for (const StarEdge& se : s.edges) {
        Edge e;
        e.id = static_cast<int>(G.edges.size());
        if (hubs_[se.hub].level == Level::zero) {
          e.cls = EdgeClass::E0;
          e.u = se.hub;
          e.v = v.id;
          e.d0 = se.de;
        } else {
          e.cls = EdgeClass::Einf;
          e.u = v.id;
          e.v = se.hub;
          e.dinf = -se.de;
        }
        G.edges.push_back(e);
      }
    }
    return G;
  }
};

}  // namespace

EnumerationResult enumerate_graphs(int g, const std::vector<Monodromy>& gamma, const Rat& d0, const Rat& dinf,
                                   const EnumerationOptions& opts) {
  if (g < 0) throw GraphError("genus must be nonnegative");
  if (gamma.size() > 24) throw BoundViolation("too many legs for exhaustive enumeration");
  return Enumerator(g, gamma, d0, dinf, opts).run();
}

}  // namespace msp
