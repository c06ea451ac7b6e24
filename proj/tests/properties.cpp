#include "properties.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "msp/algebra.hpp"
#include "msp/fjrw.hpp"
#include "msp/taut.hpp"

namespace msp::props {

namespace {

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  return rat(num(rng), den(rng));
}

RatFuncT random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> pw(-2, 2);
  RatFuncT c = RatFuncT::t_pow(pw(rng), random_rat(rng));
  if (rng() % 3 == 0) c += RatFuncT(random_rat(rng));  // occasionally non-monomial
  return c;
}

// Two factors: x (deg 1), y (deg 2) under budget 3, and h (deg 1, h^4 = 0).
SpacePtr property_space() {
  auto s = std::make_shared<Space>();
  int a = s->add_factor("A", 3);
  s->add_generator("x", 1, a);
  s->add_generator("y", 2, a);
  int b = s->add_factor("B", 3);
  s->add_generator("h", 1, b, 3);
  return s;
}

void compositions(int n, int total, std::vector<int>& cur, const std::function<void()>& f) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(total);
    f();
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(n, total - a, cur, f);
    cur.pop_back();
  }
}

}  // namespace

Outcome class_invert_identity(int count, std::uint32_t seed) {
  Outcome out;
  std::mt19937 rng(seed);
  SpacePtr sp = property_space();
  const ClassExpr one(sp, RatFuncT(1));
  for (int i = 0; i < count; ++i) {
    RatFuncT c0 = random_coeff(rng);
    while (c0.is_zero()) c0 = random_coeff(rng);
    ClassExpr a(sp, c0);
    const int nterms = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < nterms; ++j) {
      Monomial m;
      for (int g = 0; g < sp->num_generators(); ++g) {
        int e = static_cast<int>(rng() % 3);
        if (e > 0) m.emplace_back(g, e);
      }
      if (m.empty() || !sp->admissible(m)) continue;
      a.add_term(m, random_coeff(rng));
    }
    ClassExpr prod = a * class_invert(a);
    ++out.checked;
    if (!(prod == one)) {
      out.ok = false;
      out.detail = "a = " + a.str() + " gives a * a^-1 = " + prod.str();
      return out;
    }
  }
  return out;
}

Outcome aut_matches_bruteforce(const std::vector<DecoratedGraph>& graphs) {
  Outcome out;
  for (const auto& G : graphs) {
    auto fast = automorphism_order(G);
    auto slow = automorphism_order_bruteforce(G);
    ++out.checked;
    if (fast != slow) {
      out.ok = false;
      out.detail = describe(G) + ": " + std::to_string(fast) + " vs brute force " + std::to_string(slow);
      return out;
    }
  }
  return out;
}

DecoratedGraph relabel(const DecoratedGraph& G, const std::vector<int>& vertex_perm,
                       const std::vector<int>& edge_perm) {
  DecoratedGraph out = G;
  out.vertices.assign(G.vertices.size(), Vertex{});
  for (const auto& v : G.vertices) {
    Vertex w = v;
    w.id = vertex_perm[v.id];
    out.vertices[w.id] = w;
  }
  out.edges.assign(G.edges.size(), Edge{});
  for (const auto& e : G.edges) {
    Edge f = e;
    f.id = edge_perm[e.id];
    f.u = vertex_perm[e.u];
    f.v = vertex_perm[e.v];
    out.edges[f.id] = f;
  }
  return out;
}

std::vector<DecoratedGraph> synthetic_graphs(int count, std::uint32_t seed) {
  // Sources with varied shapes: multi-edges, several hubs, legs, stars of
  // identical type. Brute force needs small graphs, so cap the size.
  std::vector<DecoratedGraph> pool;
  auto add = [&](int g, const char* gamma, Rat d0, Rat dinf) {
    for (auto& G : enumerate_graphs(g, parse_gamma(gamma), d0, dinf).graphs)
      if (G.vertices.size() <= 7 && G.edges.size() <= 8) pool.push_back(G);
  };
  add(1, "", Rat(0), Rat(1));
  add(2, "", Rat(0), Rat(1));
  add(1, "rho,rho", Rat(0), Rat(0));
  pool.push_back(make_theta_special_graph(1, 0));

  std::mt19937 rng(seed);
  std::vector<DecoratedGraph> out;
  for (int i = 0; i < count && !pool.empty(); ++i) {
    const DecoratedGraph& G = pool[rng() % pool.size()];
    std::vector<int> vp(G.vertices.size()), ep(G.edges.size());
    std::iota(vp.begin(), vp.end(), 0);
    std::iota(ep.begin(), ep.end(), 0);
    std::shuffle(vp.begin(), vp.end(), rng);
    std::shuffle(ep.begin(), ep.end(), rng);
    out.push_back(relabel(G, vp, ep));
  }
  return out;
}

Outcome genus0_string_dilaton(int max_n) {
  Outcome out;
  auto bad = [&](const std::vector<int>& a, const std::string& what) {
    out.ok = false;
    std::string s;
    for (int x : a) s += std::to_string(x) + " ";
    out.detail = what + " fails at a = [ " + s + "]";
  };
  for (int n = 3; n <= max_n && out.ok; ++n) {
    std::vector<int> cur;
    compositions(n, n - 3, cur, [&]() {
      if (!out.ok) return;
      const std::vector<int>& a = cur;
      ++out.checked;
      Rat v = taut::psi_integral(0, a);
      if (v != taut::psi_integral_genus0_closed(a)) return bad(a, "closed form");
      if (n == 3) return;
      for (int i = 0; i < n; ++i) {
        std::vector<int> rest(a);
        rest.erase(rest.begin() + i);
        if (a[i] == 0) {
          // <tau_0 prod tau_{a_j}> = sum_j <... tau_{a_j - 1} ...>
          Rat s = 0;
          for (std::size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> b(rest);
            --b[j];
            s += taut::psi_integral(0, b);
          }
          if (s != v) return bad(a, "string equation");
        } else if (a[i] == 1) {
          // <tau_1 prod> = (2g - 2 + n - 1) <prod>
          if (Rat(n - 3) * taut::psi_integral(0, rest) != v) return bad(a, "dilaton equation");
        }
      }
    });
  }
  return out;
}

Outcome bernoulli_difference(int max_m) {
  Outcome out;
  const std::vector<Rat> xs{Rat(0), Rat(1), rat(-1, 5), rat(2, 5), rat(7, 3), rat(-11, 4)};
  for (int m = 1; m <= max_m; ++m) {
    for (const Rat& x : xs) {
      ++out.checked;
      Rat lhs = fjrw::bernoulli_eval(m, x + 1) - fjrw::bernoulli_eval(m, x);
      Rat rhs = m * rat_pow(x, m - 1);
      if (lhs != rhs) {
        out.ok = false;
        out.detail = "m=" + std::to_string(m) + " x=" + to_string(x) + ": " + to_string(lhs) + " vs " + to_string(rhs);
        return out;
      }
    }
  }
  return out;
}

}  // namespace msp::props
