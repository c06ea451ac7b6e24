#include "msp/fjrw.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace msp::fjrw {

namespace {

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(r);
}

// Bernoulli numbers with B_1 = -1/2.
const std::vector<Rat>& bernoulli_numbers(int upto) {
  static std::mutex mu;
  static std::vector<Rat> b{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(b.size()) <= upto) {
    long m = static_cast<long>(b.size());
    Rat s = 0;
    for (long k = 0; k < m; ++k) s += binomial(m + 1, k) * b[k];
    Rat bm = -s / Rat(m + 1);
    bm.canonicalize();
    b.push_back(bm);
  }
  return b;
}

}  // namespace

const std::vector<Rat>& bernoulli_poly(int m) {
  if (m < 0) throw FjrwError("Bernoulli polynomial degree must be nonnegative");
  static std::mutex mu;
  static std::map<int, std::vector<Rat>> cache;
  std::vector<Rat> nums = bernoulli_numbers(m);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<Rat> c(m + 1);
  for (int k = 0; k <= m; ++k) c[m - k] = binomial(m, k) * nums[k];
  return cache.emplace(m, std::move(c)).first->second;
}

Rat bernoulli_eval(int m, const Rat& x) {
  const auto& c = bernoulli_poly(m);
  Rat acc = 0;
  for (int i = m; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

std::optional<int> fjrw_vdim(int g, const std::vector<int>& ms) {
  long s = 2L * g - 2;
  int vdim = 0;
  for (int m : ms) {
    if (m < 1 || m > 4) throw FjrwError("monodromy exponent must be narrow (1..4)");
    s -= m - 1;
    vdim += 2 - m;
  }
  if (((s % 5) + 5) % 5 != 0) return std::nullopt;
  return vdim;
}

bool fjrw_vanishes(int g, const std::vector<int>& ms) {
  if (!fjrw_vdim(g, ms)) return true;
  if (g >= 1) return !std::all_of(ms.begin(), ms.end(), [](int m) { return m == 1 || m == 2; });
  std::map<int, int> cnt;
  for (int m : ms) cnt[m]++;
  int n = static_cast<int>(ms.size());
  int ones = cnt[1];
  bool fam_23 = cnt[2] == 1 && cnt[3] == 1 && ones == n - 2 && ones >= 1;
  bool fam_4 = cnt[4] == 1 && ones == n - 1 && ones >= 2;
  return !(fam_23 || fam_4);
}

long dual_rank(int g, const std::vector<int>& ms) {
  long n = static_cast<long>(ms.size());
  Rat r = rat(-(2L * g - 2 + n), 5) + Rat(1 - g);
  for (int m : ms) r -= rat(5 - m, 5);
  if (!is_integer(r)) throw FjrwError("non-integral rank: the monodromy congruence fails");
  return to_long(r);
}

GrrCoefficients grr_chern_character(const std::vector<int>& ms, int h) {
  if (h < 1) throw FjrwError("Chern character degree must be at least 1");
  GrrCoefficients c;
  Rat fact = factorial(h + 1);
  c.kappa = bernoulli_eval(h + 1, rat(-1, 5)) / fact;
  for (int m : ms) {
    Rat v = -bernoulli_eval(h + 1, rat(5 - m, 5)) / fact;
    v.canonicalize();
    c.psi_bar.push_back(v);
  }
  for (int k = 0; k < 5; ++k) {
    Rat v = 5 * bernoulli_eval(h + 1, rat(k, 5)) / fact / 2;
    if (k == 0) v /= 5;  // the untwisted boundary divisor sits under a mu_5 gerbe
    v.canonicalize();
    c.boundary.push_back(v);
  }
  c.kappa.canonicalize();
  return c;
}

ClassExpr euler_from_ch(const std::vector<ClassExpr>& ch, long rank, const Rat& a, const SpacePtr& space) {
  if (a == 0) throw FjrwError("twist weight must be nonzero");
  RatFuncT at = RatFuncT::t_pow(1, a);
  ClassExpr x(space);
  RatFuncT power = 1;
  for (size_t i = 1; i < ch.size(); ++i) {
    power = power * at;
    Rat coef = factorial(static_cast<long>(i) - 1);
    if (i % 2 == 0) coef = -coef;
    x += ch[i] * (RatFuncT(coef) / power);
  }
  if (!x.constant_term().is_zero()) throw FjrwError("Chern characters of positive degree must be nilpotent");
  // exp(x) terminates because x is nilpotent in the truncated ring.
  ClassExpr result(space, RatFuncT(1));
  ClassExpr term(space, RatFuncT(1));
  for (long n = 1; n < 64; ++n) {
    term = term * x * RatFuncT(Rat(1) / Rat(n));
    if (term.is_zero()) break;
    result += term;
  }
  RatFuncT lead = RatFuncT::t_pow(static_cast<int>(rank), rat_pow(a, rank));
  return result * lead;
}

Rat exceptional_g0_degree() {
  // The moduli is B mu_5, so its degree is 1/5.
  return rat(1, 5);
}

G1SingleMarking g1_single_marking() {
  G1SingleMarking d;
  d.psi_on_m0 = Rat(1) / Rat(5 * 5 * 24);
  d.psi_on_m1 = rat(25 - 1, 24 * 5 * 5);
  d.m0_weight = -rat_pow(Rat(4), 5);
  return d;
}

Rat g1_single_marking_ch1() {
  const G1SingleMarking d = g1_single_marking();
  GrrCoefficients c = grr_chern_character({1}, 1);
  // On these cycles kappa_1 and psi-bar agree, and psi-bar = 5 psi.
  Rat psi_bar = 5 * d.psi_virtual();
  Rat total = c.kappa * psi_bar + c.psi_bar[0] * psi_bar;
  // Boundary pushforwards. Over the nodal fiber, M_0 has the one untwisted
  // sheet and M_1 has the four nontrivial untwisted gluings; each untwisted
  // sheet is unramified and carries a mu_5 gerbe, so contributes 1/5. Twisted
  // nodes only meet M_1, each with degree 1/5.
  std::vector<Rat> j(5);
  j[0] = d.m0_weight * rat(1, 5) + rat(4, 5);
  for (int k = 1; k < 5; ++k) j[k] = rat(1, 5);
  for (int k = 0; k < 5; ++k) total += c.boundary[k] * j[k];
  total.canonicalize();
  return total;
}

RatFuncT g1_single_flag_bracket(const RatFuncT& w) {
  // 1/e_T = (-t)^{-rank} (1 + ch_1/t + ...), rank = -1, against 1/(w - psi)
  // on a one-dimensional virtual cycle.
  long rank = dual_rank(1, {1});
  RatFuncT lead = RatFuncT::t_pow(static_cast<int>(-rank), rat_pow(Rat(-1), -rank));
  Rat psi = g1_single_marking().psi_virtual();
  Rat ch1 = g1_single_marking_ch1();
  RatFuncT inv_w = RatFuncT(1) / w;
  return lead * (RatFuncT(psi) * inv_w * inv_w + RatFuncT(ch1) * RatFuncT::t_pow(-1) * inv_w);
}

}  // namespace msp::fjrw
