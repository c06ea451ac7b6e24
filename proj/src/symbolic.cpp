#include "msp/symbolic.hpp"

#include <algorithm>

namespace msp {

CorrProduct product_mul(const CorrProduct& a, const CorrProduct& b) {
  CorrProduct r = a;
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.begin(), r.end());
  return r;
}

std::string product_str(const CorrProduct& p) {
  if (p.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "*" : "") + p[i];
  return s;
}

SymExpr::SymExpr(const RatFuncT& c) {
  if (!c.is_zero()) terms_[{}] = c;
}

SymExpr SymExpr::key(const std::string& k, const RatFuncT& c) {
  SymExpr e;
  e.add({k}, c);
  return e;
}

void SymExpr::add(const CorrProduct& p, const RatFuncT& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

SymExpr SymExpr::operator+(const SymExpr& o) const {
  SymExpr r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, c);
  return r;
}

SymExpr SymExpr::operator*(const SymExpr& o) const {
  SymExpr r;
  for (const auto& [p, c] : terms_)
    for (const auto& [q, d] : o.terms_) r.add(product_mul(p, q), c * d);
  return r;
}

SymExpr SymExpr::operator*(const RatFuncT& s) const {
  SymExpr r;
  for (const auto& [p, c] : terms_) r.add(p, c * s);
  return r;
}

void sym_add(SymValue& acc, const SymValue& v, const Rat& scale) {
  for (const auto& [p, c] : v) {
    Rat& slot = acc[p];
    slot += scale * c;
    if (slot == 0) acc.erase(p);
  }
}

SymValue sym_extract(const SymExpr& e, int k) {
  SymValue out;
  for (const auto& [p, c] : e.terms()) {
    Rat v = laurent_coeff(c, k);
    if (v != 0) out[p] = v;
  }
  return out;
}

std::string sym_value_str(const SymValue& v) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : v) {
    if (!first) s += " + ";
    first = false;
    s += p.empty() ? to_string(c) : to_string(c) + " * " + product_str(p);
  }
  return s;
}

}  // namespace msp
