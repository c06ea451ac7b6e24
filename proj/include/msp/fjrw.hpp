#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "msp/algebra.hpp"

namespace msp::fjrw {

class FjrwError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficients of the Bernoulli polynomial B_m(x), lowest degree first.
const std::vector<Rat>& bernoulli_poly(int m);
Rat bernoulli_eval(int m, const Rat& x);

// Narrow monodromy exponents m_i in 1..4 of the markings of a 5-spin curve.
// Returns nullopt ("empty") when 2g - 2 - sum(m_i - 1) is not divisible by 5,
// otherwise the virtual dimension sum(2 - m_i).
std::optional<int> fjrw_vdim(int g, const std::vector<int>& ms);

// False exactly in the sectors where the virtual cycle can be nonzero:
// g >= 1 with all m_i in {1, 2}, or g = 0 with (1^{1+k} 2 3) or (1^{2+k} 4).
bool fjrw_vanishes(int g, const std::vector<int>& ms);

// Rank of R pi_* L^vee for a vertex of genus g carrying the given monodromies:
// -(2g-2+n)/5 + 1 - g - sum(5 - m_i)/5. Throws if it is not an integer.
long dual_rank(int g, const std::vector<int>& ms);

// Coefficients of the degree-h Chern character of R pi_* L^vee expressed in
// coarse classes: kappa_h, psi-bar_i^h for each marking and the boundary
// pushforwards indexed by the node monodromy k = 0..4.
struct GrrCoefficients {
  Rat kappa;
  std::vector<Rat> psi_bar;
  std::vector<Rat> boundary;  // size 5
};
GrrCoefficients grr_chern_character(const std::vector<int>& ms, int h);

// Equivariant Euler class of an index class V (x) L_a from its Chern
// characters: (a t)^rank * exp(sum_{i>=1} (-1)^{i-1} (i-1)! ch_i / (a t)^i).
// ch[i] holds ch_i (ch[0] is ignored). The result lives on the space of ch.
ClassExpr euler_from_ch(const std::vector<ClassExpr>& ch, long rank, const Rat& a, const SpacePtr& space);

// Degree of the genus-0 exceptional moduli (1,1,4) or (1,2,3): a B mu_5 point.
Rat exceptional_g0_degree();

// Genus one, single marking of monodromy zeta_5. The virtual cycle splits as
// -4^5 [M_0] + [M_1]; these are the psi integrals over the two pieces.
struct G1SingleMarking {
  Rat psi_on_m0;  // 1/(5*5*24)
  Rat psi_on_m1;  // (25-1)/(24*5*5)
  Rat m0_weight;  // -4^5
  Rat psi_virtual() const { return m0_weight * psi_on_m0 + psi_on_m1; }
};
G1SingleMarking g1_single_marking();

// Integral of ch_1(R pi_* L^vee) over the same virtual cycle, assembled from
// the Chern character coefficients and the kappa, psi-bar and boundary
// integrals of the two pieces.
Rat g1_single_marking_ch1();

// Closed form of the dual-twisted bracket of the genus-one vertex with one
// flag of monodromy zeta_5 and flag weight w: (5t/3)/w^2 + (51/5)/w.
RatFuncT g1_single_flag_bracket(const RatFuncT& w);

}  // namespace msp::fjrw
