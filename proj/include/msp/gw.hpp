#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msp/algebra.hpp"

namespace msp::gw {

class GwError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Descendant insertion tau_a(h^k) on the quintic threefold.
struct Insertion {
  int a = 0;
  int k = 0;
  bool operator<(const Insertion& o) const { return a != o.a ? a < o.a : k < o.k; }
  bool operator==(const Insertion& o) const { return a == o.a && k == o.k; }
};

struct GWCorrelator {
  int g = 0;
  int d = 0;
  std::vector<Insertion> insertions;  // kept sorted

  void normalize() { std::sort(insertions.begin(), insertions.end()); }
  bool operator<(const GWCorrelator& o) const;
  std::string key() const;  // GW(g=1,d=1) for primaries, GW(g=..,d=..,[a:k,...]) otherwise
};

// Key of the primary invariant N_{g,d}.
std::string primary_key(int g, int d);

// Lemma-level normalization of a stable level-0 vertex integral: the twisted
// integral equals sign * t^tpow * <...>_{g,d}. The sign is (-1)^{d+1-g} and
// the t-power is -(d+1-g): the twisting class has rank d+1-g and appears
// inverted in the integrand.
struct VertexValue {
  int sign = 1;
  int tpow = 0;
  GWCorrelator corr;
};
VertexValue gw_vertex_value(int g, int d, std::vector<Insertion> insertions);

// Reduces a descendant correlator to a combination of primaries via the
// string, dilaton and divisor equations on a Calabi-Yau threefold
// (virtual dimension = number of insertions). Keys are primary_key strings.
// Dimension-violating correlators reduce to the empty map.
std::map<std::string, Rat> gw_reduce(const GWCorrelator& c);

}  // namespace msp::gw
