#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns ok plus a short description of the first counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include "msp/graphs.hpp"

namespace msp::props {

struct Outcome {
  bool ok = true;
  int checked = 0;
  std::string detail;
};

// a * class_invert(a) == 1 for `count` random invertible classes.
Outcome class_invert_identity(int count, std::uint32_t seed);

// automorphism_order agrees with the brute-force permutation search.
Outcome aut_matches_bruteforce(const std::vector<DecoratedGraph>& graphs);

// Graphs with shuffled vertex and edge ids; canonical_form must not change.
std::vector<DecoratedGraph> synthetic_graphs(int count, std::uint32_t seed);
DecoratedGraph relabel(const DecoratedGraph& G, const std::vector<int>& vertex_perm,
                       const std::vector<int>& edge_perm);

// String and dilaton equations plus the genus-zero closed form on M_{0,n}.
Outcome genus0_string_dilaton(int max_n);

// B_m(x + 1) - B_m(x) = m x^{m-1}.
Outcome bernoulli_difference(int max_m);

}  // namespace msp::props
