#include "msp/gw.hpp"

#include <mutex>
#include <sstream>

namespace msp::gw {

bool GWCorrelator::operator<(const GWCorrelator& o) const {
  if (g != o.g) return g < o.g;
  if (d != o.d) return d < o.d;
  return insertions < o.insertions;
}

std::string primary_key(int g, int d) { return "GW(g=" + std::to_string(g) + ",d=" + std::to_string(d) + ")"; }

std::string GWCorrelator::key() const {
  if (insertions.empty()) return primary_key(g, d);
  std::ostringstream os;
  os << "GW(g=" << g << ",d=" << d << ",[";
  for (size_t i = 0; i < insertions.size(); ++i) os << (i ? "," : "") << insertions[i].a << ":" << insertions[i].k;
  os << "])";
  return os.str();
}

VertexValue gw_vertex_value(int g, int d, std::vector<Insertion> insertions) {
  VertexValue v;
  int e = d + 1 - g;
  v.sign = (e % 2 == 0) ? 1 : -1;
  v.tpow = -e;
  v.corr.g = g;
  v.corr.d = d;
  v.corr.insertions = std::move(insertions);
  v.corr.normalize();
  return v;
}

namespace {

constexpr int kQuinticDegree = 5;  // integral of h^3 over the quintic

using Combo = std::map<std::string, Rat>;

void add_scaled(Combo& out, const Combo& in, const Rat& s) {
  if (s == 0) return;
  for (const auto& [k, v] : in) {
    Rat& slot = out[k];
    slot += s * v;
    if (slot == 0) out.erase(k);
  }
}

bool reduced_stable(int g, int n_after, int d) { return d > 0 || 2 * g - 2 + n_after > 0; }

Combo reduce_rec(const GWCorrelator& c);

Combo reduce_memo(const GWCorrelator& c) {
  static std::mutex mu;
  static std::map<GWCorrelator, Combo> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
  }
  Combo r = reduce_rec(c);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(c, r);
  return r;
}

GWCorrelator without(const GWCorrelator& c, size_t i) {
  GWCorrelator r = c;
  r.insertions.erase(r.insertions.begin() + static_cast<long>(i));
  return r;
}

Combo reduce_rec(const GWCorrelator& c) {
  const int n = static_cast<int>(c.insertions.size());
  int dim = 0;
  for (const auto& ins : c.insertions) {
    if (ins.k >= 4 || ins.a < 0 || ins.k < 0) return {};
    dim += ins.a + ins.k;
  }
  if (dim != n) return {};
  if (n == 0) {
    if (c.d == 0 && c.g <= 1) throw GwError("unstable degree-zero primary in genus " + std::to_string(c.g));
    return {{primary_key(c.g, c.d), Rat(1)}};
  }
  // Degree-zero base cases on M_{0,3} x Q and M_{1,1} x Q.
  if (c.d == 0 && c.g == 0 && n == 3) {
    int k = 0;
    for (const auto& ins : c.insertions) {
      if (ins.a != 0) return {};
      k += ins.k;
    }
    return k == 3 ? Combo{{"", Rat(kQuinticDegree)}} : Combo{};
  }
  if (c.d == 0 && c.g == 1 && n == 1) {
    // Virtual class c_3(T_Q) - lambda_1 c_2(T_Q) with c_3 = -40 h^3, c_2 = 10 h^2
    // and lambda_1 = psi_1 = 1/24 on M_{1,1}.
    const Insertion& ins = c.insertions[0];
    if (ins.a == 1 && ins.k == 0) return {{"", rat(-40 * kQuinticDegree, 24)}};
    if (ins.a == 0 && ins.k == 1) return {{"", rat(-10 * kQuinticDegree, 24)}};
    return {};
  }
  for (size_t i = 0; i < c.insertions.size(); ++i) {
    const Insertion ins = c.insertions[i];
    if (!reduced_stable(c.g, n - 1, c.d)) break;
    GWCorrelator rest = without(c, i);
    if (ins.a == 0 && ins.k == 0) {  // string
      Combo out;
      for (size_t j = 0; j < rest.insertions.size(); ++j) {
        if (rest.insertions[j].a == 0) continue;
        GWCorrelator s = rest;
        s.insertions[j].a -= 1;
        s.normalize();
        add_scaled(out, reduce_memo(s), 1);
      }
      return out;
    }
    if (ins.a == 1 && ins.k == 0) {  // dilaton
      Combo out;
      add_scaled(out, reduce_memo(rest), Rat(2 * c.g - 2 + n - 1));
      return out;
    }
    if (ins.a == 0 && ins.k == 1) {  // divisor
      Combo out;
      add_scaled(out, reduce_memo(rest), Rat(c.d));
      for (size_t j = 0; j < rest.insertions.size(); ++j) {
        if (rest.insertions[j].a == 0) continue;
        GWCorrelator s = rest;
        s.insertions[j].a -= 1;
        s.insertions[j].k += 1;
        s.normalize();
        add_scaled(out, reduce_memo(s), 1);
      }
      return out;
    }
  }
  throw GwError("cannot reduce " + c.key() + " to primaries");
}

}  // namespace

std::map<std::string, Rat> gw_reduce(const GWCorrelator& c) {
  GWCorrelator n = c;
  n.normalize();
  return reduce_memo(n);
}

}  // namespace msp::gw
