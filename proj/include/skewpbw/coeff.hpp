#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "skewpbw/errors.hpp"

namespace spbw {

/* ------------------------------------------------------------------ */
/* multivariate Laurent polynomials over Q                            */
/* ------------------------------------------------------------------ */

// Terms live in a lex-ordered map with no zero coefficients, so equal
// values are structurally equal.
class LaurentPoly {
 public:
  using Exps = std::vector<int>;
  using Terms = std::map<Exps, mpq_class>;

  LaurentPoly() = default;
  explicit LaurentPoly(int nparams) : np_(nparams) {}
  LaurentPoly(int nparams, const mpq_class& scalar);
  static LaurentPoly monomial(int nparams, const Exps& e, const mpq_class& scalar);

  int nparams() const { return np_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_scalar() const;
  std::optional<mpq_class> as_scalar() const;
  bool is_single_term() const { return t_.size() == 1; }

  void add_term(const Exps& e, const mpq_class& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return np_ == o.np_ && t_ == o.t_; }

  // k < 0 requires a single unit term.
  LaurentPoly pow(long k) const;
  LaurentPoly inv_term() const;

  // Per-parameter minimum exponent over the support; zeros when empty.
  Exps min_exps() const;
  // Shift every exponent vector by s (monomial multiplication by q^s).
  LaurentPoly shifted(const Exps& s) const;

 private:
  int np_ = 0;
  Terms t_;
};

// gcd of two polynomial (nonnegative-exponent) values, monic normalization;
// gcd(0,0) = 0.  try_divide returns f/g when the division is exact.
LaurentPoly laurent_gcd(const LaurentPoly& f, const LaurentPoly& g);
std::optional<LaurentPoly> laurent_try_divide(const LaurentPoly& f, const LaurentPoly& g);

/* ------------------------------------------------------------------ */
/* coefficient values                                                 */
/* ------------------------------------------------------------------ */

// Reduced fraction of Laurent polynomials: den is a polynomial with
// per-parameter minimum exponent 0, lex-leading coefficient 1, and no
// common factor with the polynomial part of num.
struct FractionValue {
  LaurentPoly num, den;
  bool operator==(const FractionValue& o) const { return num == o.num && den == o.den; }
};

class Coeff {
 public:
  Coeff() = default;
  explicit Coeff(mpq_class v) : v_(std::move(v)) {}
  explicit Coeff(std::int64_t v) : v_(v) {}
  explicit Coeff(LaurentPoly v) : v_(std::move(v)) {}
  explicit Coeff(FractionValue v) : v_(std::move(v)) {}

  bool operator==(const Coeff& o) const { return v_ == o.v_; }

  bool empty() const { return std::holds_alternative<std::monostate>(v_); }
  const mpq_class* rational() const { return std::get_if<mpq_class>(&v_); }
  const std::int64_t* residue() const { return std::get_if<std::int64_t>(&v_); }
  const LaurentPoly* laurent() const { return std::get_if<LaurentPoly>(&v_); }
  const FractionValue* fraction() const { return std::get_if<FractionValue>(&v_); }

 private:
  std::variant<std::monostate, mpq_class, std::int64_t, LaurentPoly, FractionValue> v_;
};

/* ------------------------------------------------------------------ */
/* backend actions                                                    */
/* ------------------------------------------------------------------ */

// Coefficient automorphism attached to one ring variable.  Restricted to
// monomial maps q_k -> scale[k] * q_{perm[k]} (identity on the scalars),
// which keeps every action invertible.
struct SigmaAction {
  bool identity = true;
  std::vector<int> perm;         // size nparams when !identity
  std::vector<mpq_class> scale;  // nonzero, size nparams when !identity
  bool operator==(const SigmaAction& o) const = default;
};

// sigma-derivation attached to one ring variable, given on the parameters
// and extended by delta(ab) = sigma(a) delta(b) + delta(a) b.
struct DeltaAction {
  bool zero = true;
  std::vector<LaurentPoly> images;  // size nparams when !zero
  bool operator==(const DeltaAction& o) const = default;
};

/* ------------------------------------------------------------------ */
/* backend                                                            */
/* ------------------------------------------------------------------ */

enum class BackendKind { rational, prime_field, laurent_field, fraction_field };

class CoeffBackend {
 public:
  static CoeffBackend rational();
  static CoeffBackend prime_field(long p);
  static CoeffBackend laurent_field(std::vector<std::string> params);
  // Field of fractions of a domain backend.  Rational base returns itself;
  // prime fields are rejected, only the rational and Laurent-parameter
  // domains localize here.
  static CoeffBackend fraction_of(const CoeffBackend& base);

  BackendKind kind() const { return kind_; }
  long prime() const { return p_; }
  const std::vector<std::string>& params() const { return params_; }
  int nparams() const { return static_cast<int>(params_.size()); }
  bool is_laurent_kind() const {
    return kind_ == BackendKind::laurent_field || kind_ == BackendKind::fraction_field;
  }
  // Same value universe (kind, prime, parameters); actions may differ.
  bool compatible(const CoeffBackend& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && params_ == o.params_;
  }
  bool operator==(const CoeffBackend& o) const = default;

  Coeff zero() const;
  Coeff one() const;
  Coeff from_int(long v) const;
  Coeff from_rational(const mpq_class& v) const;
  Coeff from_laurent(const LaurentPoly& v) const;
  Coeff monomial(const std::vector<int>& exps, const mpq_class& scalar) const;
  Coeff make_fraction(const LaurentPoly& num, const LaurentPoly& den) const;

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const;
  Coeff pow(const Coeff& a, long k) const;
  bool is_zero(const Coeff& a) const;
  bool is_one(const Coeff& a) const;
  bool is_unit(const Coeff& a) const;

  // Per-variable action tables.  Checks shapes, invertibility of sigma,
  // and pairwise delta consistency on the generators; throws InvalidAction.
  void attach_actions(int nvars, std::vector<SigmaAction> sigma, std::vector<DeltaAction> delta);
  int nvars() const { return static_cast<int>(sigma_.size()); }
  const SigmaAction& sigma(int i) const { return sigma_.at(i); }
  const DeltaAction& delta_action(int i) const { return delta_.at(i); }
  bool sigma_is_identity(int i) const { return sigma_.at(i).identity; }
  bool delta_is_zero(int i) const { return delta_.at(i).zero; }
  bool any_delta() const;
  Coeff apply_sigma(int i, const Coeff& a, long power = 1) const;
  Coeff apply_delta(int i, const Coeff& a) const;

  const std::vector<Coeff>& generators() const { return generators_; }
  void set_generators(std::vector<Coeff> g) { generators_ = std::move(g); }
  const std::vector<long>& declared_primes() const { return declared_primes_; }
  void set_declared_primes(std::vector<long> p) { declared_primes_ = std::move(p); }

  // Torsion part of the unit group: sign for rational-scalar backends,
  // the full cyclic group for prime fields.
  long torsion_order() const;
  long primitive_root() const;  // prime_field only
  std::int64_t discrete_log(std::int64_t u) const;

  std::string render(const Coeff& a) const;
  std::string render_laurent(const LaurentPoly& v) const;

 private:
  CoeffBackend() = default;
  void expect(const Coeff& a, const char* who) const;
  LaurentPoly sigma_on_laurent(int i, const LaurentPoly& v, bool inverse) const;
  LaurentPoly delta_on_laurent(int i, const LaurentPoly& v) const;
  void default_generators();

  BackendKind kind_ = BackendKind::rational;
  long p_ = 0;
  long root_ = 0;
  std::vector<std::string> params_;
  std::vector<SigmaAction> sigma_;
  std::vector<DeltaAction> delta_;
  std::vector<Coeff> generators_;
  std::vector<long> declared_primes_;
};

// Canonical reduced fraction of two Laurent polynomials (den != 0).
FractionValue reduce_fraction(const LaurentPoly& num, const LaurentPoly& den);

// scalar * parameter-monomial decomposition of a unit, when it has one.
struct UnitParts {
  int sign = 1;                 // sign of the scalar
  mpz_class num = 1, den = 1;   // |scalar| = num/den, coprime
  std::vector<int> param_exps;  // empty for scalar backends
};
std::optional<UnitParts> unit_parts(const CoeffBackend& backend, const Coeff& u);

}  // namespace spbw
