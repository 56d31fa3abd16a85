#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewpbw/coeff.hpp"
#include "skewpbw/errors.hpp"

namespace spbw {

// Exponent vector of a normal monomial x_1^{e_1} ... x_n^{e_n}.  Entries may
// be negative only in the first `laurent_count` slots of the owning ring.
using ExponentVec = std::vector<int>;

// Pure lexicographic comparison, entries left to right over the integers.
bool lex_less(const ExponentVec& a, const ExponentVec& b);

// Sum of the entries (the filtration degree when all entries are >= 0).
int exp_degree(const ExponentVec& e);

struct LexLess {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    return lex_less(a, b);
  }
};

// Polynomial in left normal form: a finite map from exponent vectors to
// nonzero coefficients, representing sum a_t x^t with all coefficients on
// the left.  The empty map is 0.
class SkewPoly {
 public:
  using Terms = std::map<ExponentVec, Coeff, LexLess>;

  SkewPoly() = default;
  explicit SkewPoly(int nvars) : n_(nvars) {}

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_scalar() const;
  // Accumulates c onto the term at e, dropping the term when it cancels.
  void add_term(const CoeffBackend& b, const ExponentVec& e, const Coeff& c);
  const Coeff* coeff_at(const ExponentVec& e) const;

  bool operator==(const SkewPoly& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const SkewPoly& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  Terms t_;
};

// Leading / smallest term in the pure lexicographic order.  Throws
// ZeroPolynomial on 0.
std::pair<ExponentVec, Coeff> leading_term(const SkewPoly& f);
std::pair<ExponentVec, Coeff> smallest_term(const SkewPoly& f);

// Full description of a ring sigma(R)<x_1,...,x_n>: coefficient backend
// (carrying the sigma/delta actions), variable names, the count of
// invertible variables (always the first slots), the commutation matrix and
// the lower-order correction terms.
//
// The defining relations are, for j > i,
//     x_j x_i = c[j][i] x_i x_j + d_lower[j][i]
// with d_lower[j][i] of total degree <= 1, plus x_i a = sigma_i(a) x_i +
// delta_i(a) for backend elements a.  c[i][i] = 1 and c[i][j] for i < j is
// the inverse of c[j][i] when that is a unit (empty otherwise).
struct Presentation {
  CoeffBackend backend;
  std::vector<std::string> names;
  int laurent_count = 0;
  std::vector<std::vector<Coeff>> c;
  std::vector<std::vector<SkewPoly>> d_lower;
  bool quasi_commutative = false;
  bool bijective = false;
  bool laurent = false;

  int n() const { return static_cast<int>(names.size()); }

  // Sets the defining entry c[j][i] (j > i) and keeps c[i][j] = its inverse
  // when it is a unit (empty when not).
  void set_commutation(int j, int i, const Coeff& cji);
  void set_d_lower(int j, int i, SkewPoly d);

  // Recomputes the three flags from the stored data; laurent is declared
  // true whenever laurent_count >= 1 (validation reports unsupportable
  // declarations rather than silently clearing them).
  void infer_flags();
};

// Fresh presentation with every pair commuting (c = 1, d = 0) and identity /
// zero actions attached to the backend when none are present.
Presentation make_presentation(CoeffBackend backend,
                               std::vector<std::string> names,
                               int laurent_count = 0);

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks every presentation constraint and returns one entry per violation:
// diagonal and inverse-pair conditions on c, flag implications, invertible-
// variable requirements (zero delta, zero d_lower, unit c), strict
// commutation of the sigma actions on backend generators, the triple
// cocycle in the quasi-commutative all-units case, and an associativity
// smoke test of generator triples and generator/coefficient mixes evaluated
// through the rewriting engine.  Structurally malformed input throws
// InvalidPresentation; constraint violations never throw.
ValidationReport validate_presentation(const Presentation& p);

// A validated ring.  All polynomial arithmetic goes through here; products
// are computed by exhaustive rewriting to left normal form.
class Ring {
 public:
  // Validates and constructs; throws InvalidPresentation listing every
  // violation when the report is nonempty.
  static Ring from_presentation(Presentation p);
  // Structural checks only; used to evaluate candidate presentations.
  static Ring unchecked(Presentation p);

  const Presentation& pres() const { return p_; }
  const CoeffBackend& backend() const { return p_.backend; }
  int nvars() const { return p_.n(); }
  int laurent_count() const { return p_.laurent_count; }
  bool invertible_var(int i) const { return i < p_.laurent_count; }
  const std::string& var_name(int i) const { return p_.names[static_cast<size_t>(i)]; }

  SkewPoly zero() const { return SkewPoly(nvars()); }
  SkewPoly one() const;
  SkewPoly scalar(const Coeff& a) const;
  SkewPoly var(int i) const;
  SkewPoly var_pow(int i, int e) const;
  // Throws InvalidExponent on a negative entry outside the Laurent slots.
  SkewPoly monomial(const ExponentVec& e, const Coeff& a) const;

  SkewPoly add(const SkewPoly& f, const SkewPoly& g) const;
  SkewPoly sub(const SkewPoly& f, const SkewPoly& g) const;
  SkewPoly neg(const SkewPoly& f) const;
  // Left multiplication by a coefficient: a * (b x^e) = (ab) x^e.
  SkewPoly coeff_mul(const Coeff& a, const SkewPoly& f) const;
  SkewPoly multiply(const SkewPoly& f, const SkewPoly& g) const;
  // k < 0 requires an invertible single-term input.
  SkewPoly pow(const SkewPoly& f, int k) const;
  // Inverse of a x^e with a a unit and e supported on the Laurent slots.
  SkewPoly inverse_monomial(const SkewPoly& f) const;

  // Filtration degree; only defined when laurent_count = 0.
  int degree(const SkewPoly& f) const;
  bool in_filtration(const SkewPoly& f, int m) const;

  std::string render(const SkewPoly& f) const;

 private:
  explicit Ring(Presentation p) : p_(std::move(p)) {}
  Presentation p_;
};

}  // namespace spbw
