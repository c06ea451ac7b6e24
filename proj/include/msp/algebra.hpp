#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msp {

// Exact rationals. mpq_class keeps values canonical as long as every
// construction from a numerator/denominator pair goes through rat().
using Rat = mpq_class;

Rat rat(long p, long q = 1);
Rat parse_rat(const std::string& s);
std::string to_string(const Rat& r);
bool is_integer(const Rat& r);
mpz_class floor_rat(const Rat& r);
mpz_class ceil_rat(const Rat& r);
Rat rat_pow(const Rat& r, long e);
long to_long(const Rat& r);  // requires an integer that fits in a long
Rat factorial(long n);

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense univariate polynomial in t with Rat coefficients, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c);
  static Poly monomial(const Rat& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  int valuation() const;  // t-adic valuation; -1 for zero
  const Rat& coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const { return c_.back(); }
  bool is_monomial() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly shift_down(int k) const;  // divide by t^k, requires valuation >= k
  Poly shift_up(int k) const;
  void divmod(const Poly& d, Poly& q, Poly& r) const;
  Rat eval(const Rat& x) const;
  std::string str() const;

 private:
  std::vector<Rat> c_;
  void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic gcd (zero if both zero)

// Element of Q(t) in canonical form: coprime numerator and denominator,
// denominator monic.
class RatFuncT {
 public:
  RatFuncT() : num_(), den_(Poly(Rat(1))) {}
  RatFuncT(const Rat& c) : num_(c), den_(Poly(Rat(1))) {}  // NOLINT implicit on purpose
  RatFuncT(long c) : RatFuncT(Rat(c)) {}                    // NOLINT
  RatFuncT(Poly num, Poly den);

  static RatFuncT t_pow(int k, const Rat& c = Rat(1));  // c * t^k, k may be negative

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rat constant_value() const;  // requires is_constant()
  // For a Laurent monomial c*t^k returns (c, k).
  std::optional<std::pair<Rat, int>> as_monomial() const;

  RatFuncT operator+(const RatFuncT& o) const;
  RatFuncT operator-(const RatFuncT& o) const;
  RatFuncT operator-() const;
  RatFuncT operator*(const RatFuncT& o) const;
  RatFuncT operator/(const RatFuncT& o) const;
  RatFuncT& operator+=(const RatFuncT& o) { return *this = *this + o; }
  RatFuncT& operator*=(const RatFuncT& o) { return *this = *this * o; }
  bool operator==(const RatFuncT& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFuncT& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Poly num_, den_;
  void normalize();
};

// Coefficient of t^k in the Laurent expansion of f at t = 0.
Rat laurent_coeff(const RatFuncT& f, int k);

// ---------------------------------------------------------------------------
// Truncated graded class ring.
//
// A Space is a product of factors. Every generator belongs to one factor and
// every factor carries a dimension budget; a monomial whose degree inside some
// factor exceeds the budget is zero. A generator may also carry its own
// nilpotency cap (e.g. h^4 = 0 on the quintic threefold).

struct NilGen {
  std::string name;
  int degree = 1;
  int factor = 0;
  int max_power = -1;  // -1: limited only by the factor budget
};

struct SpaceFactor {
  std::string name;
  int budget = 0;
};

// Sparse monomial: sorted (generator id, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<int, int>>;

class Space {
 public:
  // Integration functional on one factor: receives the part of a monomial
  // living on that factor (possibly empty). Returns nullopt when the needed
  // intersection number is unknown.
  using FactorIntegrator = std::function<std::optional<Rat>(const Monomial&)>;

  int add_factor(const std::string& name, int budget, FactorIntegrator integ = nullptr);
  int add_generator(const std::string& name, int degree, int factor, int max_power = -1);

  const NilGen& gen(int id) const { return gens_.at(id); }
  const SpaceFactor& factor(int id) const { return factors_.at(id); }
  int num_generators() const { return static_cast<int>(gens_.size()); }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  const FactorIntegrator& integrator(int f) const { return integrators_.at(f); }

  bool admissible(const Monomial& m) const;
  int factor_degree(const Monomial& m, int f) const;
  Monomial factor_part(const Monomial& m, int f) const;
  std::string monomial_str(const Monomial& m) const;

 private:
  std::vector<NilGen> gens_;
  std::vector<SpaceFactor> factors_;
  std::vector<FactorIntegrator> integrators_;
};

using SpacePtr = std::shared_ptr<const Space>;

// Convenience constructor for the single-factor spaces used throughout.
SpacePtr make_p4_space();  // generator h, budget 4, integral of h^4 = 1

class ClassExpr {
 public:
  ClassExpr() = default;
  explicit ClassExpr(SpacePtr space) : space_(std::move(space)) {}
  ClassExpr(SpacePtr space, const RatFuncT& scalar);
  static ClassExpr generator(SpacePtr space, int id, const RatFuncT& coeff = RatFuncT(1));

  const SpacePtr& space() const { return space_; }
  const std::map<Monomial, RatFuncT>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFuncT constant_term() const;
  void add_term(const Monomial& m, const RatFuncT& c);

  ClassExpr operator+(const ClassExpr& o) const;
  ClassExpr operator-(const ClassExpr& o) const;
  ClassExpr operator-() const;
  ClassExpr operator*(const ClassExpr& o) const;
  ClassExpr operator*(const RatFuncT& s) const;
  ClassExpr& operator+=(const ClassExpr& o) { return *this = *this + o; }
  ClassExpr& operator*=(const ClassExpr& o) { return *this = *this * o; }
  bool operator==(const ClassExpr& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  SpacePtr space_;
  std::map<Monomial, RatFuncT> terms_;
  const SpacePtr& common_space(const ClassExpr& o) const;
};

enum class ClassOp { add, sub, mul };
ClassExpr class_arith(const ClassExpr& a, const ClassExpr& b, ClassOp op);
ClassExpr class_invert(const ClassExpr& a);
ClassExpr class_pow(const ClassExpr& a, int e);  // e may be negative
RatFuncT class_integrate(const ClassExpr& a);

Monomial monomial_mul(const Monomial& a, const Monomial& b);

}  // namespace msp
