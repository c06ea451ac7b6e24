#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "msp/algebra.hpp"

namespace msp::taut {

class TautError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integral of psi_1^{a_1} ... psi_n^{a_n} over M-bar_{g,n}, computed with
// string/dilaton shortcuts and the DVV recursion. Unstable (g, n) throws;
// dimension-violating monomials give 0.
Rat psi_integral(int g, const std::vector<int>& a);

// Genus-zero closed form (n-3)! / prod a_i!, used as an independent oracle.
Rat psi_integral_genus0_closed(const std::vector<int>& a);

// Mixed integral of psi^a * lambda_1^{l1} * lambda_2^{l2} over M-bar_{g,n}.
// Supports g <= 2; larger genus throws "unsupported genus".
Rat hodge_psi_integral(int g, const std::vector<int>& a, int l1, int l2 = 0);

// Integral of psi^a * kappa_{b_1} ... kappa_{b_m} (Arbarello-Cornalba kappa).
Rat kappa_psi_integral(int g, const std::vector<int>& a, const std::vector<int>& kappas);

// A descendant correlator <tau_{a_1} ... tau_{a_n}>_g with trivial insertions.
struct Descendant {
  int g = 0;
  std::vector<int> a;
  bool operator<(const Descendant& o) const { return std::tie(g, a) < std::tie(o.g, o.a); }
  bool operator==(const Descendant& o) const { return g == o.g && a == o.a; }
};

using DescendantCombination = std::vector<std::pair<Rat, Descendant>>;

// One application of the string equation (removes a tau_0) or, failing that,
// the dilaton equation (removes a tau_1). Returns nullopt if neither applies
// or if the reduced moduli would be unstable (base cases).
std::optional<DescendantCombination> string_dilaton_step(const Descendant& c);

// Repeatedly applies string_dilaton_step until only correlators without
// tau_0/tau_1 insertions (or base cases) remain; merges equal terms.
std::map<Descendant, Rat> string_dilaton_reduce(const Descendant& c);

}  // namespace msp::taut
