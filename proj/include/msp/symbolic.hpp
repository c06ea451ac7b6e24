#pragma once

#include <map>
#include <string>
#include <vector>

#include "msp/algebra.hpp"

namespace msp {

// A product of correlator keys such as GW(g=1,d=1) or FJRW(g=2,k=2), kept
// sorted. The empty product stands for the number 1.
using CorrProduct = std::vector<std::string>;

CorrProduct product_mul(const CorrProduct& a, const CorrProduct& b);
std::string product_str(const CorrProduct& p);  // "1" for the empty product

// Finite sum of correlator products with coefficients in Q(t).
class SymExpr {
 public:
  SymExpr() = default;
  SymExpr(const RatFuncT& c);  // NOLINT implicit on purpose
  static SymExpr key(const std::string& k, const RatFuncT& c = RatFuncT(1));

  const std::map<CorrProduct, RatFuncT>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const CorrProduct& p, const RatFuncT& c);

  SymExpr operator+(const SymExpr& o) const;
  SymExpr operator*(const SymExpr& o) const;
  SymExpr operator*(const RatFuncT& s) const;
  SymExpr& operator+=(const SymExpr& o) { return *this = *this + o; }
  SymExpr& operator*=(const SymExpr& o) { return *this = *this * o; }

 private:
  std::map<CorrProduct, RatFuncT> terms_;
};

// Exact value after the t-coefficient extraction: a linear combination of
// correlator products with rational coefficients.
using SymValue = std::map<CorrProduct, Rat>;

void sym_add(SymValue& acc, const SymValue& v, const Rat& scale = Rat(1));
SymValue sym_extract(const SymExpr& e, int k);  // coefficient of t^k per product
// Renders "c0 + c1 * KEY + ..." with the constant first; "0" when empty.
std::string sym_value_str(const SymValue& v);

}  // namespace msp
