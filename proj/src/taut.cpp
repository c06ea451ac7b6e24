#include "msp/taut.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <tuple>

namespace msp::taut {
namespace {

Rat double_factorial(int n) {  // n!! with (-1)!! = 1
  Rat r(1);
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

int dim(int g, int n) { return 3 * g - 3 + n; }

void require_stable(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
    throw TautError("unstable moduli M(g=" + std::to_string(g) + ",n=" + std::to_string(n) + ")");
}

std::mutex g_memo_mutex;
std::map<std::pair<int, std::vector<int>>, Rat> g_psi_memo;
std::map<std::tuple<int, std::vector<int>, std::vector<int>>, Rat> g_kappa_memo;
std::map<std::tuple<int, std::vector<int>, int, int>, Rat> g_hodge_memo;

Rat psi_sorted(int g, std::vector<int> a);

Rat psi_sorted_uncached(int g, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  int sum = std::accumulate(a.begin(), a.end(), 0);
  if (sum != dim(g, n)) return Rat(0);
  if (g == 0 && n == 3) return Rat(1);
  if (g == 1 && n == 1) return rat(1, 24);
  // a is sorted ascending: a zero exponent triggers the string equation.
  if (a.front() == 0) {
    std::vector<int> rest(a.begin() + 1, a.end());
    Rat total(0);
    for (size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      std::vector<int> b = rest;
      b[j] -= 1;
      total += psi_sorted(g, b);
    }
    return total;
  }
  auto one = std::find(a.begin(), a.end(), 1);
  if (one != a.end()) {
    std::vector<int> rest(a.begin(), a.end());
    rest.erase(rest.begin() + (one - a.begin()));
    return Rat(2 * g - 2 + n - 1) * psi_sorted(g, rest);
  }
  // DVV recursion on the largest exponent, written as tau_{k+1}.
  int k = a.back() - 1;
  std::vector<int> d(a.begin(), a.end() - 1);
  Rat total(0);
  for (size_t j = 0; j < d.size(); ++j) {
    std::vector<int> b = d;
    b[j] = d[j] + k;
    total += double_factorial(2 * k + 2 * d[j] + 1) / double_factorial(2 * d[j] - 1) * psi_sorted(g, b);
  }
  for (int r = 0; r <= k - 1; ++r) {
    int s = k - 1 - r;
    Rat w = double_factorial(2 * r + 1) * double_factorial(2 * s + 1) / 2;
    if (g >= 1) {
      std::vector<int> b = d;
      b.push_back(r);
      b.push_back(s);
      total += w * psi_sorted(g - 1, b);
    }
    const int m = static_cast<int>(d.size());
    for (int g1 = 0; g1 <= g; ++g1) {
      int g2 = g - g1;
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> left{r}, right{s};
        for (int i = 0; i < m; ++i) (mask >> i & 1u ? left : right).push_back(d[i]);
        if (2 * g1 - 2 + static_cast<int>(left.size()) <= 0) continue;
        if (2 * g2 - 2 + static_cast<int>(right.size()) <= 0) continue;
        Rat l = psi_sorted(g1, left);
        if (l == 0) continue;
        total += w * l * psi_sorted(g2, right);
      }
    }
  }
  return total / double_factorial(2 * k + 3);
}

Rat psi_sorted(int g, std::vector<int> a) {
  std::sort(a.begin(), a.end());
  int sum = std::accumulate(a.begin(), a.end(), 0);
  if (sum != dim(g, static_cast<int>(a.size()))) return Rat(0);
  auto key = std::make_pair(g, a);
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = g_psi_memo.find(key);
    if (it != g_psi_memo.end()) return it->second;
  }
  Rat v = psi_sorted_uncached(g, a);
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  g_psi_memo.emplace(key, v);
  return v;
}

// Sum over permutations of the kappa indices grouped by cycles, excluding the
// identity: used to peel off the leading term of the pushforward formula.
void for_each_permutation_cycles(int m, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<bool> seen(m, false);
    std::vector<std::vector<int>> cycles;
    for (int i = 0; i < m; ++i) {
      if (seen[i]) continue;
      std::vector<int> cyc;
      for (int j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        cyc.push_back(j);
      }
      cycles.push_back(cyc);
    }
    fn(cycles);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Rat kappa_sorted(int g, std::vector<int> a, std::vector<int> kap) {
  std::sort(a.begin(), a.end());
  std::sort(kap.begin(), kap.end());
  const int n = static_cast<int>(a.size());
  int total_deg = std::accumulate(a.begin(), a.end(), 0) + std::accumulate(kap.begin(), kap.end(), 0);
  if (total_deg != dim(g, n)) return Rat(0);
  if (kap.empty()) return psi_sorted(g, a);
  auto key = std::make_tuple(g, a, kap);
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = g_kappa_memo.find(key);
    if (it != g_kappa_memo.end()) return it->second;
  }
  // <prod tau_a prod tau_{b_j+1}> = sum over sigma of int psi^a prod_cycles kappa_{b(c)}.
  const int m = static_cast<int>(kap.size());
  std::vector<int> ext = a;
  for (int b : kap) ext.push_back(b + 1);
  Rat value = psi_sorted(g, ext);
  for_each_permutation_cycles(m, [&](const std::vector<std::vector<int>>& cycles) {
    if (static_cast<int>(cycles.size()) == m) return;  // identity
    std::vector<int> merged;
    for (const auto& c : cycles) {
      int s = 0;
      for (int i : c) s += kap[i];
      merged.push_back(s);
    }
    value -= kappa_sorted(g, a, merged);
  });
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  g_kappa_memo.emplace(key, value);
  return value;
}

Rat binom(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(r);
}

// Integral of psi^a kappa_1^c lambda_1^b on M-bar_{g,n}. lambda_1 is removed
// one factor at a time with Mumford's formula
//   lambda_1 = (kappa_1 - sum psi_i + delta) / 12,
// the boundary term being evaluated on the gluing maps, where kappa_1 and
// lambda_1 pull back additively.
Rat kl_integral(int g, std::vector<int> a, int c, int b) {
  std::sort(a.begin(), a.end());
  const int n = static_cast<int>(a.size());
  require_stable(g, n);
  int total_deg = std::accumulate(a.begin(), a.end(), 0) + c + b;
  if (total_deg != dim(g, n)) return Rat(0);
  if (b > 0 && g == 0) return Rat(0);
  if (b == 0) return kappa_sorted(g, a, std::vector<int>(c, 1));
  auto key = std::make_tuple(g, a, c, b);
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = g_hodge_memo.find(key);
    if (it != g_hodge_memo.end()) return it->second;
  }
  Rat value = kl_integral(g, a, c + 1, b - 1);
  for (int i = 0; i < n; ++i) {
    std::vector<int> ai = a;
    ai[i] += 1;
    value -= kl_integral(g, ai, c, b - 1);
  }
  // Irreducible boundary divisor: half the pushforward from M-bar_{g-1,n+2}.
  Rat boundary(0);
  if (g >= 1) {
    std::vector<int> ai = a;
    ai.push_back(0);
    ai.push_back(0);
    boundary += kl_integral(g - 1, ai, c, b - 1) / 2;
  }
  // Reducible boundary: half the sum over ordered splittings (h, S).
  for (int h = 0; h <= g; ++h) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> left, right;
      for (int i = 0; i < n; ++i) (mask >> i & 1u ? left : right).push_back(a[i]);
      left.push_back(0);
      right.push_back(0);
      if (2 * h - 2 + static_cast<int>(left.size()) <= 0) continue;
      if (2 * (g - h) - 2 + static_cast<int>(right.size()) <= 0) continue;
      for (int c1 = 0; c1 <= c; ++c1) {
        for (int b1 = 0; b1 <= b - 1; ++b1) {
          Rat l = kl_integral(h, left, c1, b1);
          if (l == 0) continue;
          Rat r = kl_integral(g - h, right, c - c1, b - 1 - b1);
          if (r == 0) continue;
          boundary += binom(c, c1) * binom(b - 1, b1) * l * r / 2;
        }
      }
    }
  }
  value += boundary;
  value /= 12;
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  g_hodge_memo.emplace(key, value);
  return value;
}

}  // namespace

Rat psi_integral(int g, const std::vector<int>& a) {
  require_stable(g, static_cast<int>(a.size()));
  for (int x : a)
    if (x < 0) throw TautError("negative psi exponent");
  return psi_sorted(g, a);
}

Rat psi_integral_genus0_closed(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  require_stable(0, n);
  int sum = std::accumulate(a.begin(), a.end(), 0);
  if (sum != n - 3) return Rat(0);
  Rat r = factorial(n - 3);
  for (int x : a) r /= factorial(x);
  return r;
}

Rat kappa_psi_integral(int g, const std::vector<int>& a, const std::vector<int>& kappas) {
  require_stable(g, static_cast<int>(a.size()));
  for (int k : kappas)
    if (k < 1) throw TautError("kappa index must be positive");
  return kappa_sorted(g, a, kappas);
}

Rat hodge_psi_integral(int g, const std::vector<int>& a, int l1, int l2) {
  if (g > 2) throw TautError("unsupported genus " + std::to_string(g) + " for Hodge integrals (g <= 2)");
  require_stable(g, static_cast<int>(a.size()));
  if (l1 < 0 || l2 < 0) throw TautError("negative lambda exponent");
  if (g == 0) return (l1 == 0 && l2 == 0) ? psi_integral(g, a) : Rat(0);
  if (l2 > 0 && g < 2) return Rat(0);
  // Mumford's relation ch_2(E) = 0 gives lambda_2 = lambda_1^2 / 2.
  Rat scale = rat_pow(rat(1, 2), l2);
  return scale * kl_integral(g, a, 0, l1 + 2 * l2);
}

std::optional<DescendantCombination> string_dilaton_step(const Descendant& c) {
  const int n = static_cast<int>(c.a.size());
  for (int i = 0; i < n; ++i) {
    if (c.a[i] != 0) continue;
    if (2 * c.g - 2 + (n - 1) <= 0) return std::nullopt;
    DescendantCombination out;
    std::vector<int> rest = c.a;
    rest.erase(rest.begin() + i);
    for (size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      Descendant d{c.g, rest};
      d.a[j] -= 1;
      out.emplace_back(Rat(1), d);
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (c.a[i] != 1) continue;
    if (2 * c.g - 2 + (n - 1) <= 0) return std::nullopt;
    std::vector<int> rest = c.a;
    rest.erase(rest.begin() + i);
    return DescendantCombination{{Rat(2 * c.g - 2 + n - 1), Descendant{c.g, rest}}};
  }
  return std::nullopt;
}

std::map<Descendant, Rat> string_dilaton_reduce(const Descendant& c) {
  std::map<Descendant, Rat> done;
  std::map<Descendant, Rat> work{{c, Rat(1)}};
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    Descendant d = node.key();
    Rat coeff = node.mapped();
    auto step = string_dilaton_step(d);
    if (!step) {
      std::sort(d.a.begin(), d.a.end());
      done[d] += coeff;
      continue;
    }
    for (auto& [w, e] : *step) {
      std::sort(e.a.begin(), e.a.end());
      work[e] += coeff * w;
    }
  }
  for (auto it = done.begin(); it != done.end();) it = (it->second == 0) ? done.erase(it) : std::next(it);
  return done;
}

}  // namespace msp::taut
