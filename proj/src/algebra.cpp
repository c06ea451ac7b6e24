#include "msp/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace msp {

Rat rat(long p, long q) {
  if (q == 0) throw AlgebraError("rational with zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

mpz_class floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

mpz_class ceil_rat(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rat rat_pow(const Rat& r, long e) {
  if (e < 0) {
    if (r == 0) throw AlgebraError("zero to a negative power");
    return rat_pow(Rat(1) / r, -e);
  }
  Rat out(1), base(r);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

long to_long(const Rat& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p()) throw AlgebraError("not a machine integer: " + to_string(r));
  return r.get_num().get_si();
}

Rat factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::monomial(const Rat& c, int deg) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(deg + 1, Rat(0));
  p.c_[deg] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

const Rat& Poly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

bool Poly::is_monomial() const { return !c_.empty() && valuation() == degree(); }

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

Poly Poly::operator*(const Rat& s) const {
  if (s == 0) return Poly();
  Poly r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

Poly Poly::shift_down(int k) const {
  if (k == 0 || is_zero()) return *this;
  Poly r;
  r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

Poly Poly::shift_up(int k) const {
  if (k == 0 || is_zero()) return *this;
  Poly r;
  r.c_.assign(k, Rat(0));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
  if (d.is_zero()) throw AlgebraError("polynomial division by zero");
  q = Poly();
  r = *this;
  if (r.degree() < d.degree()) return;
  q.c_.assign(r.degree() - d.degree() + 1, Rat(0));
  const Rat& lead = d.leading();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    Rat f = r.leading() / lead;
    q.c_[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
    r.trim();
  }
  q.trim();
}

Rat Poly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c_[i]) << ")";
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return os.str();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q, r;
    x.divmod(y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x * (Rat(1) / x.leading());
}

// ---------------------------------------------------------------- RatFuncT

RatFuncT::RatFuncT(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw AlgebraError("rational function with zero denominator");
  normalize();
}

void RatFuncT::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  if (den_.is_monomial()) {
    // Fast path: the gcd with a monomial denominator is a power of t.
    int k = std::min(num_.valuation(), den_.valuation());
    Rat lead = den_.leading();
    num_ = num_.shift_down(k) * (Rat(1) / lead);
    den_ = Poly::monomial(Rat(1), den_.degree() - k);
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    num_.divmod(g, q, r);
    num_ = q;
    den_.divmod(g, q, r);
    den_ = q;
  }
  Rat lead = den_.leading();
  if (lead != 1) {
    num_ = num_ * (Rat(1) / lead);
    den_ = den_ * (Rat(1) / lead);
  }
}

RatFuncT RatFuncT::t_pow(int k, const Rat& c) {
  if (k >= 0) return RatFuncT(Poly::monomial(c, k), Poly(Rat(1)));
  return RatFuncT(Poly(c), Poly::monomial(Rat(1), -k));
}

Rat RatFuncT::constant_value() const {
  if (!is_constant()) throw AlgebraError("rational function is not constant: " + str());
  return num_.coeff(0);
}

std::optional<std::pair<Rat, int>> RatFuncT::as_monomial() const {
  if (num_.is_zero()) return std::make_pair(Rat(0), 0);
  if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
  return std::make_pair(num_.leading(), num_.degree() - den_.degree());
}

RatFuncT RatFuncT::operator+(const RatFuncT& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFuncT(num_ + o.num_, den_);
  if (den_.is_monomial() && o.den_.is_monomial()) {
    int a = den_.degree(), b = o.den_.degree(), m = std::max(a, b);
    return RatFuncT(num_.shift_up(m - a) + o.num_.shift_up(m - b), Poly::monomial(Rat(1), m));
  }
  return RatFuncT(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFuncT RatFuncT::operator-() const {
  RatFuncT r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFuncT RatFuncT::operator-(const RatFuncT& o) const { return *this + (-o); }

RatFuncT RatFuncT::operator*(const RatFuncT& o) const {
  if (is_zero() || o.is_zero()) return RatFuncT();
  return RatFuncT(num_ * o.num_, den_ * o.den_);
}

RatFuncT RatFuncT::operator/(const RatFuncT& o) const {
  if (o.is_zero()) throw AlgebraError("division by the zero rational function");
  return RatFuncT(num_ * o.den_, den_ * o.num_);
}

std::string RatFuncT::str() const {
  if (den_.degree() == 0) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Rat laurent_coeff(const RatFuncT& f, int k) {
  if (f.is_zero()) return Rat(0);
  int vn = f.num().valuation(), vd = f.den().valuation();
  Poly n = f.num().shift_down(vn), d = f.den().shift_down(vd);
  int want = k - (vn - vd);
  if (want < 0) return Rat(0);
  // Power-series division n/d with d(0) != 0, up to order `want`.
  std::vector<Rat> q(want + 1);
  Rat inv0 = Rat(1) / d.coeff(0);
  for (int i = 0; i <= want; ++i) {
    Rat acc = n.coeff(i);
    for (int j = 1; j <= i && j <= d.degree(); ++j) acc -= d.coeff(j) * q[i - j];
    q[i] = acc * inv0;
  }
  return q[want];
}

// ---------------------------------------------------------------- Space

int Space::add_factor(const std::string& name, int budget, FactorIntegrator integ) {
  factors_.push_back({name, budget});
  integrators_.push_back(std::move(integ));
  return static_cast<int>(factors_.size()) - 1;
}

int Space::add_generator(const std::string& name, int degree, int factor, int max_power) {
  if (degree < 1) throw AlgebraError("generator degree must be positive: " + name);
  if (factor < 0 || factor >= num_factors()) throw AlgebraError("generator on unknown factor: " + name);
  gens_.push_back({name, degree, factor, max_power});
  return static_cast<int>(gens_.size()) - 1;
}

int Space::factor_degree(const Monomial& m, int f) const {
  int deg = 0;
  for (auto [g, e] : m)
    if (gens_[g].factor == f) deg += gens_[g].degree * e;
  return deg;
}

Monomial Space::factor_part(const Monomial& m, int f) const {
  Monomial out;
  for (auto ge : m)
    if (gens_[ge.first].factor == f) out.push_back(ge);
  return out;
}

bool Space::admissible(const Monomial& m) const {
  std::vector<int> deg(factors_.size(), 0);
  for (auto [g, e] : m) {
    const NilGen& gen = gens_[g];
    if (gen.max_power >= 0 && e > gen.max_power) return false;
    deg[gen.factor] += gen.degree * e;
    if (deg[gen.factor] > factors_[gen.factor].budget) return false;
  }
  return true;
}

std::string Space::monomial_str(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += "*";
    s += gens_[m[i].first].name;
    if (m[i].second > 1) s += "^" + std::to_string(m[i].second);
  }
  return s;
}

SpacePtr make_p4_space() {
  auto sp = std::make_shared<Space>();
  int f = sp->add_factor("P4", 4, [](const Monomial& m) -> std::optional<Rat> {
    if (m.size() == 1 && m[0].second == 4) return Rat(1);
    return Rat(0);
  });
  sp->add_generator("h", 1, f);
  return sp;
}

// ---------------------------------------------------------------- ClassExpr

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

ClassExpr::ClassExpr(SpacePtr space, const RatFuncT& scalar) : space_(std::move(space)) {
  if (!scalar.is_zero()) terms_[Monomial{}] = scalar;
}

ClassExpr ClassExpr::generator(SpacePtr space, int id, const RatFuncT& coeff) {
  ClassExpr e(space);
  if (!space) throw AlgebraError("generator requires a space");
  e.add_term(Monomial{{id, 1}}, coeff);
  return e;
}

RatFuncT ClassExpr::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? RatFuncT() : it->second;
}

void ClassExpr::add_term(const Monomial& m, const RatFuncT& c) {
  if (c.is_zero()) return;
  if (space_ && !space_->admissible(m)) return;
  if (!space_ && !m.empty()) throw AlgebraError("non-scalar monomial without a space");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const SpacePtr& ClassExpr::common_space(const ClassExpr& o) const {
  if (space_ && o.space_ && space_ != o.space_) throw AlgebraError("mismatched ambient spaces");
  return space_ ? space_ : o.space_;
}

ClassExpr ClassExpr::operator+(const ClassExpr& o) const {
  ClassExpr r(common_space(o));
  r.terms_ = terms_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ClassExpr ClassExpr::operator-() const {
  ClassExpr r(space_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

ClassExpr ClassExpr::operator-(const ClassExpr& o) const { return *this + (-o); }

ClassExpr ClassExpr::operator*(const ClassExpr& o) const {
  ClassExpr r(common_space(o));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
  return r;
}

ClassExpr ClassExpr::operator*(const RatFuncT& s) const {
  ClassExpr r(space_);
  if (s.is_zero()) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

std::string ClassExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "[" + c.str() + "]";
    if (!m.empty()) s += "*" + (space_ ? space_->monomial_str(m) : std::string("?"));
  }
  return s;
}

ClassExpr class_arith(const ClassExpr& a, const ClassExpr& b, ClassOp op) {
  switch (op) {
    case ClassOp::add: return a + b;
    case ClassOp::sub: return a - b;
    case ClassOp::mul: return a * b;
  }
  throw AlgebraError("unknown class operation");
}

ClassExpr class_invert(const ClassExpr& a) {
  RatFuncT a0 = a.constant_term();
  if (a0.is_zero()) throw AlgebraError("non-invertible class: zero constant term");
  RatFuncT inv0 = RatFuncT(1) / a0;
  // a = a0 (1 + n) with n nilpotent; a^{-1} = a0^{-1} sum_k (-n)^k.
  ClassExpr n(a.space());
  for (const auto& [m, c] : a.terms())
    if (!m.empty()) n.add_term(m, c * inv0);
  ClassExpr neg_n = -n;
  ClassExpr result(a.space(), RatFuncT(1));
  ClassExpr power(a.space(), RatFuncT(1));
  while (true) {
    power = power * neg_n;
    if (power.is_zero()) break;
    result += power;
  }
  return result * inv0;
}

ClassExpr class_pow(const ClassExpr& a, int e) {
  if (e < 0) return class_pow(class_invert(a), -e);
  ClassExpr result(a.space(), RatFuncT(1));
  for (int i = 0; i < e; ++i) result = result * a;
  return result;
}

RatFuncT class_integrate(const ClassExpr& a) {
  RatFuncT total;
  const SpacePtr& sp = a.space();
  for (const auto& [m, c] : a.terms()) {
    if (!sp) {
      throw AlgebraError("cannot integrate a bare scalar without an ambient space");
    }
    Rat value(1);
    for (int f = 0; f < sp->num_factors(); ++f) {
      const auto& integ = sp->integrator(f);
      if (!integ) throw AlgebraError("no integration table for factor " + sp->factor(f).name);
      Monomial part = sp->factor_part(m, f);
      if (sp->factor_degree(part, f) != sp->factor(f).budget) {
        value = 0;
        break;
      }
      auto v = integ(part);
      if (!v) throw AlgebraError("unknown intersection number: " + sp->monomial_str(part));
      value *= *v;
      if (value == 0) break;
    }
    if (value != 0) total += c * RatFuncT(value);
  }
  return total;
}

}  // namespace msp
