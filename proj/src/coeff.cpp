#include "skewpbw/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace spbw {

/* ------------------------------------------------------------------ */
/* small numeric helpers                                              */
/* ------------------------------------------------------------------ */

namespace {

mpq_class mpq_pow(const mpq_class& b, long e) {
  if (e == 0) return mpq_class(1);
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), b.get_num().get_mpz_t(), a);
  mpz_pow_ui(pd.get_mpz_t(), b.get_den().get_mpz_t(), a);
  if (e < 0) {
    if (pn == 0) throw NotAUnit("zero to a negative power");
    std::swap(pn, pd);
  }
  mpq_class r(pn, pd);
  r.canonicalize();
  return r;
}

std::int64_t mod_norm(std::int64_t v, long p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, long p) {
  // p < 2^31 keeps the product inside int64.
  return (a * b) % p;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, long p) {
  std::int64_t r = 1 % p;
  b = mod_norm(b, p);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, b, p);
    b = mod_mul(b, b, p);
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inv(std::int64_t a, long p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod_norm(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NotAUnit("no inverse modulo p");
  return mod_norm(t, p);
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long> prime_factors_long(long v) {
  std::vector<long> out;
  for (long d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

/* ------------------------------------------------------------------ */
/* LaurentPoly                                                        */
/* ------------------------------------------------------------------ */

LaurentPoly::LaurentPoly(int nparams, const mpq_class& scalar) : np_(nparams) {
  if (scalar != 0) t_.emplace(Exps(static_cast<size_t>(nparams), 0), scalar);
}

LaurentPoly LaurentPoly::monomial(int nparams, const Exps& e, const mpq_class& scalar) {
  LaurentPoly r(nparams);
  r.add_term(e, scalar);
  return r;
}

bool LaurentPoly::is_scalar() const {
  if (t_.empty()) return true;
  if (t_.size() != 1) return false;
  const Exps& e = t_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

std::optional<mpq_class> LaurentPoly::as_scalar() const {
  if (!is_scalar()) return std::nullopt;
  if (t_.empty()) return mpq_class(0);
  return t_.begin()->second;
}

void LaurentPoly::add_term(const Exps& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != np_)
    throw BackendMismatch("exponent width does not match parameter count");
  if (c == 0) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (np_ != o.np_) throw BackendMismatch("parameter count");
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  if (np_ != o.np_) throw BackendMismatch("parameter count");
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (np_ != o.np_) throw BackendMismatch("parameter count");
  LaurentPoly r(np_);
  for (const auto& [e1, c1] : t_) {
    for (const auto& [e2, c2] : o.t_) {
      Exps e = e1;
      for (size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(np_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::pow(long k) const {
  if (k < 0) return inv_term().pow(-k);
  LaurentPoly r(np_, 1);
  LaurentPoly b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

LaurentPoly LaurentPoly::inv_term() const {
  if (t_.size() != 1) throw NotAUnit("not a scalar monomial");
  const auto& [e, c] = *t_.begin();
  Exps ne(e.size());
  for (size_t k = 0; k < e.size(); ++k) ne[k] = -e[k];
  return monomial(np_, ne, mpq_class(1) / c);
}

LaurentPoly::Exps LaurentPoly::min_exps() const {
  Exps m(static_cast<size_t>(np_), 0);
  bool first = true;
  for (const auto& [e, c] : t_) {
    (void)c;
    if (first) {
      m = e;
      first = false;
    } else {
      for (size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], e[k]);
    }
  }
  return m;
}

LaurentPoly LaurentPoly::shifted(const Exps& s) const {
  LaurentPoly r(np_);
  for (const auto& [e, c] : t_) {
    Exps ne = e;
    for (size_t k = 0; k < ne.size(); ++k) ne[k] += s[k];
    r.t_.emplace(ne, c);
  }
  return r;
}

/* ------------------------------------------------------------------ */
/* polynomial division and gcd (primitive PRS)                        */
/* ------------------------------------------------------------------ */

namespace {

LaurentPoly::Exps negated(const LaurentPoly::Exps& e) {
  LaurentPoly::Exps r(e.size());
  for (size_t k = 0; k < e.size(); ++k) r[k] = -e[k];
  return r;
}

int deg_in(const LaurentPoly& f, int v) {
  int d = 0;
  for (const auto& [e, c] : f.terms()) {
    (void)c;
    d = std::max(d, e[static_cast<size_t>(v)]);
  }
  return d;
}

bool involves(const LaurentPoly& f, int v) {
  for (const auto& [e, c] : f.terms()) {
    (void)c;
    if (e[static_cast<size_t>(v)] != 0) return true;
  }
  return false;
}

int pick_main_var(const LaurentPoly& f, const LaurentPoly& g) {
  for (int v = 0; v < f.nparams(); ++v)
    if (involves(f, v) || involves(g, v)) return v;
  return -1;
}

// Coefficient of q_v^d, with the q_v exponent zeroed out.
LaurentPoly coeff_of(const LaurentPoly& f, int v, int d) {
  LaurentPoly r(f.nparams());
  for (const auto& [e, c] : f.terms()) {
    if (e[static_cast<size_t>(v)] == d) {
      LaurentPoly::Exps ne = e;
      ne[static_cast<size_t>(v)] = 0;
      r.add_term(ne, c);
    }
  }
  return r;
}

LaurentPoly times_var_pow(const LaurentPoly& f, int v, int d) {
  LaurentPoly::Exps s(static_cast<size_t>(f.nparams()), 0);
  s[static_cast<size_t>(v)] = d;
  return f.shifted(s);
}

LaurentPoly monic(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  const mpq_class& lc = f.terms().rbegin()->second;
  return f * LaurentPoly(f.nparams(), mpq_class(1) / lc);
}

LaurentPoly divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = laurent_try_divide(f, g);
  if (!q) throw kernel_error("internal: inexact polynomial division");
  return *q;
}

}  // namespace

std::optional<LaurentPoly> laurent_try_divide(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return LaurentPoly(f.nparams());
  // Shift both to nonnegative exponents; monomials are units here.
  auto mf = f.min_exps();
  auto mg = g.min_exps();
  LaurentPoly F = f.shifted(negated(mf));
  LaurentPoly G = g.shifted(negated(mg));
  LaurentPoly Q(f.nparams());
  const auto& glead = *G.terms().rbegin();
  while (!F.is_zero()) {
    const auto& flead = *F.terms().rbegin();
    LaurentPoly::Exps d(flead.first.size());
    for (size_t k = 0; k < d.size(); ++k) {
      d[k] = flead.first[k] - glead.first[k];
      if (d[k] < 0) return std::nullopt;
    }
    mpq_class c = flead.second / glead.second;
    LaurentPoly t = LaurentPoly::monomial(f.nparams(), d, c);
    Q = Q + t;
    F = F - t * G;
  }
  LaurentPoly::Exps shift(mf.size());
  for (size_t k = 0; k < shift.size(); ++k) shift[k] = mf[k] - mg[k];
  return Q.shifted(shift);
}

namespace {

LaurentPoly gcd_rec(const LaurentPoly& f, const LaurentPoly& g);

LaurentPoly content_in(const LaurentPoly& f, int v) {
  LaurentPoly c(f.nparams());
  for (int d = 0; d <= deg_in(f, v); ++d) {
    LaurentPoly cd = coeff_of(f, v, d);
    if (!cd.is_zero()) c = gcd_rec(c, cd);
  }
  return c;
}

// Pseudo-remainder of A by B in the variable v (any scalar multiple works
// for a primitive PRS).
LaurentPoly prem(LaurentPoly A, const LaurentPoly& B, int v) {
  int db = deg_in(B, v);
  LaurentPoly lcB = coeff_of(B, v, db);
  while (!A.is_zero() && deg_in(A, v) >= db) {
    int da = deg_in(A, v);
    LaurentPoly lcA = coeff_of(A, v, da);
    A = lcB * A - times_var_pow(lcA * B, v, da - db);
  }
  return A;
}

LaurentPoly gcd_rec(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero()) return monic(g);
  if (g.is_zero()) return monic(f);
  int v = pick_main_var(f, g);
  if (v < 0) return LaurentPoly(f.nparams(), 1);
  if (!involves(f, v)) return gcd_rec(f, content_in(g, v));
  if (!involves(g, v)) return gcd_rec(g, content_in(f, v));
  LaurentPoly cf = content_in(f, v);
  LaurentPoly cg = content_in(g, v);
  LaurentPoly c = gcd_rec(cf, cg);
  LaurentPoly A = divide_exact(f, cf);
  LaurentPoly B = divide_exact(g, cg);
  if (deg_in(A, v) < deg_in(B, v)) std::swap(A, B);
  while (true) {
    LaurentPoly R = prem(A, B, v);
    if (R.is_zero()) break;
    LaurentPoly cr = content_in(R, v);
    A = B;
    B = monic(divide_exact(R, cr));
    if (!involves(B, v)) return monic(c);
    if (deg_in(A, v) < deg_in(B, v)) std::swap(A, B);
  }
  return monic(c * B);
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& f, const LaurentPoly& g) { return gcd_rec(f, g); }

/* ------------------------------------------------------------------ */
/* fractions                                                          */
/* ------------------------------------------------------------------ */

FractionValue reduce_fraction(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw NotAUnit("zero denominator");
  int np = num.nparams();
  if (num.is_zero()) return {LaurentPoly(np), LaurentPoly(np, 1)};
  auto mden = den.min_exps();
  LaurentPoly D = den.shifted(negated(mden));
  LaurentPoly N = num.shifted(negated(mden));
  auto mnum = N.min_exps();
  LaurentPoly P = N.shifted(negated(mnum));
  LaurentPoly g = laurent_gcd(P, D);
  if (!(g == LaurentPoly(np, 1))) {
    P = divide_exact(P, g);
    D = divide_exact(D, g);
  }
  const mpq_class lc = D.terms().rbegin()->second;
  if (lc != 1) {
    LaurentPoly s(np, mpq_class(1) / lc);
    P = P * s;
    D = D * s;
  }
  return {P.shifted(mnum), D};
}

/* ------------------------------------------------------------------ */
/* backend construction                                               */
/* ------------------------------------------------------------------ */

CoeffBackend CoeffBackend::rational() {
  CoeffBackend b;
  b.kind_ = BackendKind::rational;
  b.default_generators();
  return b;
}

CoeffBackend CoeffBackend::prime_field(long p) {
  if (p < 2 || p > (1L << 31) || !is_prime_long(p))
    throw NotAPrime("prime field modulus must be a prime at most 2^31");
  CoeffBackend b;
  b.kind_ = BackendKind::prime_field;
  b.p_ = p;
  // Smallest primitive root; p-1 factors by trial division.
  auto qs = prime_factors_long(p - 1);
  for (long g = 1; g < p; ++g) {
    bool ok = g > 1 || p == 2;
    for (long q : qs)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      b.root_ = g;
      break;
    }
  }
  b.default_generators();
  return b;
}

CoeffBackend CoeffBackend::laurent_field(std::vector<std::string> params) {
  CoeffBackend b;
  b.kind_ = BackendKind::laurent_field;
  b.params_ = std::move(params);
  b.default_generators();
  return b;
}

CoeffBackend CoeffBackend::fraction_of(const CoeffBackend& base) {
  if (base.kind_ == BackendKind::rational) return base;
  if (base.kind_ != BackendKind::laurent_field)
    throw NotADomain("fractions are built over the rational or Laurent-parameter domains");
  CoeffBackend b = base;
  b.kind_ = BackendKind::fraction_field;
  b.generators_.clear();
  b.default_generators();
  // Wrap generators and delta images carry over unchanged: the actions on
  // fractions apply the base tables to numerator and denominator.
  return b;
}

void CoeffBackend::default_generators() {
  generators_.clear();
  switch (kind_) {
    case BackendKind::rational:
      generators_.push_back(from_int(2));
      generators_.push_back(from_int(3));
      break;
    case BackendKind::prime_field:
      generators_.push_back(from_int(root_));
      break;
    case BackendKind::laurent_field:
    case BackendKind::fraction_field:
      for (int k = 0; k < nparams(); ++k) {
        std::vector<int> e(static_cast<size_t>(nparams()), 0);
        e[static_cast<size_t>(k)] = 1;
        generators_.push_back(monomial(e, 1));
      }
      break;
  }
}

/* ------------------------------------------------------------------ */
/* values                                                             */
/* ------------------------------------------------------------------ */

Coeff CoeffBackend::zero() const { return from_int(0); }
Coeff CoeffBackend::one() const { return from_int(1); }

Coeff CoeffBackend::from_int(long v) const { return from_rational(mpq_class(v)); }

Coeff CoeffBackend::from_rational(const mpq_class& v) const {
  switch (kind_) {
    case BackendKind::rational:
      return Coeff(v);
    case BackendKind::prime_field: {
      if (v.get_den() == 1) {
        mpz_class r = v.get_num() % p_;
        return Coeff(static_cast<std::int64_t>(mod_norm(r.get_si(), p_)));
      }
      mpz_class n = v.get_num() % p_, d = v.get_den() % p_;
      std::int64_t dn = mod_norm(n.get_si(), p_);
      std::int64_t dd = mod_norm(d.get_si(), p_);
      return Coeff(mod_mul(dn, mod_inv(dd, p_), p_));
    }
    case BackendKind::laurent_field:
      return Coeff(LaurentPoly(nparams(), v));
    case BackendKind::fraction_field:
      return Coeff(FractionValue{LaurentPoly(nparams(), v), LaurentPoly(nparams(), 1)});
  }
  throw kernel_error("unreachable");
}

Coeff CoeffBackend::from_laurent(const LaurentPoly& v) const {
  if (v.nparams() != nparams()) throw BackendMismatch("parameter count");
  if (kind_ == BackendKind::laurent_field) return Coeff(v);
  if (kind_ == BackendKind::fraction_field)
    return Coeff(FractionValue{v, LaurentPoly(nparams(), 1)});
  throw BackendMismatch("Laurent value on a scalar backend");
}

Coeff CoeffBackend::monomial(const std::vector<int>& exps, const mpq_class& scalar) const {
  return from_laurent(LaurentPoly::monomial(nparams(), exps, scalar));
}

Coeff CoeffBackend::make_fraction(const LaurentPoly& num, const LaurentPoly& den) const {
  if (kind_ != BackendKind::fraction_field) throw BackendMismatch("not a fraction backend");
  return Coeff(reduce_fraction(num, den));
}

void CoeffBackend::expect(const Coeff& a, const char* who) const {
  bool ok = false;
  switch (kind_) {
    case BackendKind::rational: ok = a.rational() != nullptr; break;
    case BackendKind::prime_field: ok = a.residue() != nullptr; break;
    case BackendKind::laurent_field:
      ok = a.laurent() != nullptr && a.laurent()->nparams() == nparams();
      break;
    case BackendKind::fraction_field:
      ok = a.fraction() != nullptr && a.fraction()->num.nparams() == nparams();
      break;
  }
  if (!ok) throw BackendMismatch(std::string(who) + ": value does not belong to this backend");
}

/* ------------------------------------------------------------------ */
/* arithmetic                                                         */
/* ------------------------------------------------------------------ */

Coeff CoeffBackend::add(const Coeff& a, const Coeff& b) const {
  expect(a, "add");
  expect(b, "add");
  switch (kind_) {
    case BackendKind::rational: return Coeff(mpq_class(*a.rational() + *b.rational()));
    case BackendKind::prime_field: return Coeff(mod_norm(*a.residue() + *b.residue(), p_));
    case BackendKind::laurent_field: return Coeff(*a.laurent() + *b.laurent());
    case BackendKind::fraction_field: {
      const auto& x = *a.fraction();
      const auto& y = *b.fraction();
      return Coeff(reduce_fraction(x.num * y.den + y.num * x.den, x.den * y.den));
    }
  }
  throw kernel_error("unreachable");
}

Coeff CoeffBackend::sub(const Coeff& a, const Coeff& b) const { return add(a, neg(b)); }

Coeff CoeffBackend::mul(const Coeff& a, const Coeff& b) const {
  expect(a, "mul");
  expect(b, "mul");
  switch (kind_) {
    case BackendKind::rational: return Coeff(mpq_class(*a.rational() * *b.rational()));
    case BackendKind::prime_field: return Coeff(mod_mul(*a.residue(), *b.residue(), p_));
    case BackendKind::laurent_field: return Coeff(*a.laurent() * *b.laurent());
    case BackendKind::fraction_field: {
      const auto& x = *a.fraction();
      const auto& y = *b.fraction();
      return Coeff(reduce_fraction(x.num * y.num, x.den * y.den));
    }
  }
  throw kernel_error("unreachable");
}

Coeff CoeffBackend::neg(const Coeff& a) const {
  expect(a, "neg");
  switch (kind_) {
    case BackendKind::rational: return Coeff(mpq_class(-*a.rational()));
    case BackendKind::prime_field: return Coeff(mod_norm(-*a.residue(), p_));
    case BackendKind::laurent_field: return Coeff(-*a.laurent());
    case BackendKind::fraction_field:
      return Coeff(FractionValue{-a.fraction()->num, a.fraction()->den});
  }
  throw kernel_error("unreachable");
}

Coeff CoeffBackend::inv(const Coeff& a) const {
  expect(a, "inv");
  switch (kind_) {
    case BackendKind::rational:
      if (*a.rational() == 0) throw NotAUnit("zero has no inverse");
      return Coeff(mpq_class(1 / *a.rational()));
    case BackendKind::prime_field:
      if (*a.residue() == 0) throw NotAUnit("zero has no inverse");
      return Coeff(mod_inv(*a.residue(), p_));
    case BackendKind::laurent_field:
      if (!a.laurent()->is_single_term())
        throw NotAUnit("units of the Laurent-parameter ring are scalar monomials");
      return Coeff(a.laurent()->inv_term());
    case BackendKind::fraction_field:
      if (a.fraction()->num.is_zero()) throw NotAUnit("zero has no inverse");
      return Coeff(reduce_fraction(a.fraction()->den, a.fraction()->num));
  }
  throw kernel_error("unreachable");
}

Coeff CoeffBackend::div(const Coeff& a, const Coeff& b) const {
  if (kind_ == BackendKind::fraction_field) {
    expect(a, "div");
    expect(b, "div");
    if (b.fraction()->num.is_zero()) throw NotAUnit("division by zero");
    const auto& x = *a.fraction();
    const auto& y = *b.fraction();
    return Coeff(reduce_fraction(x.num * y.den, x.den * y.num));
  }
  return mul(a, inv(b));
}

Coeff CoeffBackend::pow(const Coeff& a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  Coeff r = one();
  Coeff b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

bool CoeffBackend::is_zero(const Coeff& a) const {
  expect(a, "is_zero");
  switch (kind_) {
    case BackendKind::rational: return *a.rational() == 0;
    case BackendKind::prime_field: return *a.residue() == 0;
    case BackendKind::laurent_field: return a.laurent()->is_zero();
    case BackendKind::fraction_field: return a.fraction()->num.is_zero();
  }
  throw kernel_error("unreachable");
}

bool CoeffBackend::is_one(const Coeff& a) const { return a == one(); }

bool CoeffBackend::is_unit(const Coeff& a) const {
  expect(a, "is_unit");
  switch (kind_) {
    case BackendKind::rational: return *a.rational() != 0;
    case BackendKind::prime_field: return *a.residue() != 0;
    case BackendKind::laurent_field: return a.laurent()->is_single_term();
    case BackendKind::fraction_field: return !a.fraction()->num.is_zero();
  }
  throw kernel_error("unreachable");
}

/* ------------------------------------------------------------------ */
/* actions                                                            */
/* ------------------------------------------------------------------ */

bool CoeffBackend::any_delta() const {
  for (const auto& d : delta_)
    if (!d.zero) return true;
  return false;
}

void CoeffBackend::attach_actions(int nvars, std::vector<SigmaAction> sigma,
                                  std::vector<DeltaAction> delta) {
  if (static_cast<int>(sigma.size()) != nvars || static_cast<int>(delta.size()) != nvars)
    throw InvalidAction("one sigma and one delta entry per variable");
  for (const auto& s : sigma) {
    if (s.identity) continue;
    if (!is_laurent_kind())
      throw InvalidAction("scalar backends admit only the identity automorphism");
    if (static_cast<int>(s.perm.size()) != nparams() ||
        static_cast<int>(s.scale.size()) != nparams())
      throw InvalidAction("sigma tables must cover every parameter");
    std::vector<bool> seen(static_cast<size_t>(nparams()), false);
    for (int k = 0; k < nparams(); ++k) {
      int img = s.perm[static_cast<size_t>(k)];
      if (img < 0 || img >= nparams() || seen[static_cast<size_t>(img)])
        throw InvalidAction("sigma parameter map must be a permutation");
      seen[static_cast<size_t>(img)] = true;
      if (s.scale[static_cast<size_t>(k)] == 0)
        throw InvalidAction("sigma scale factors must be nonzero");
    }
  }
  for (const auto& d : delta) {
    if (d.zero) continue;
    if (!is_laurent_kind())
      throw InvalidAction("scalar backends admit only the zero derivation");
    if (static_cast<int>(d.images.size()) != nparams())
      throw InvalidAction("delta tables must cover every parameter");
    for (const auto& img : d.images)
      if (img.nparams() != nparams()) throw InvalidAction("delta image parameter count");
  }
  sigma_ = std::move(sigma);
  delta_ = std::move(delta);
  // Well-definedness on a commutative ring: the Leibniz expansion of ab and
  // ba must agree on every pair of generators.
  for (int i = 0; i < nvars; ++i) {
    if (delta_[static_cast<size_t>(i)].zero) continue;
    for (const auto& ga : generators_) {
      for (const auto& gb : generators_) {
        Coeff lhs = add(mul(apply_sigma(i, ga), apply_delta(i, gb)), mul(apply_delta(i, ga), gb));
        Coeff rhs = add(mul(apply_sigma(i, gb), apply_delta(i, ga)), mul(apply_delta(i, gb), ga));
        if (!(lhs == rhs))
          throw InvalidAction("delta table is inconsistent on the generators");
      }
    }
  }
}

LaurentPoly CoeffBackend::sigma_on_laurent(int i, const LaurentPoly& v, bool inverse) const {
  const SigmaAction& A = sigma_.at(static_cast<size_t>(i));
  if (A.identity) return v;
  int np = nparams();
  std::vector<int> perm(static_cast<size_t>(np));
  std::vector<mpq_class> scale(static_cast<size_t>(np));
  if (!inverse) {
    for (int k = 0; k < np; ++k) {
      perm[static_cast<size_t>(k)] = A.perm[static_cast<size_t>(k)];
      scale[static_cast<size_t>(k)] = A.scale[static_cast<size_t>(k)];
    }
  } else {
    // q_m <- scale_k^-1 q_k where perm[k] = m
    for (int k = 0; k < np; ++k) {
      int m = A.perm[static_cast<size_t>(k)];
      perm[static_cast<size_t>(m)] = k;
      scale[static_cast<size_t>(m)] = 1 / A.scale[static_cast<size_t>(k)];
    }
  }
  LaurentPoly r(np);
  for (const auto& [e, c] : v.terms()) {
    LaurentPoly::Exps ne(static_cast<size_t>(np), 0);
    mpq_class nc = c;
    for (int k = 0; k < np; ++k) {
      int ek = e[static_cast<size_t>(k)];
      if (ek == 0) continue;
      ne[static_cast<size_t>(perm[static_cast<size_t>(k)])] += ek;
      nc *= mpq_pow(scale[static_cast<size_t>(k)], ek);
    }
    r.add_term(ne, nc);
  }
  return r;
}

LaurentPoly CoeffBackend::delta_on_laurent(int i, const LaurentPoly& v) const {
  const DeltaAction& D = delta_.at(static_cast<size_t>(i));
  int np = nparams();
  if (D.zero) return LaurentPoly(np);
  // delta of one monomial, peeled one variable power at a time:
  //   delta(u w) = sigma(u) delta(w) + delta(u) w,  u = q_k^{+-1}.
  auto delta_mono = [&](const LaurentPoly::Exps& e, const auto& self) -> LaurentPoly {
    int k = -1;
    for (int j = 0; j < np; ++j)
      if (e[static_cast<size_t>(j)] != 0) {
        k = j;
        break;
      }
    if (k < 0) return LaurentPoly(np);
    int step = e[static_cast<size_t>(k)] > 0 ? 1 : -1;
    LaurentPoly::Exps ue(static_cast<size_t>(np), 0);
    ue[static_cast<size_t>(k)] = step;
    LaurentPoly u = LaurentPoly::monomial(np, ue, 1);
    LaurentPoly du;
    if (step == 1) {
      du = D.images[static_cast<size_t>(k)];
    } else {
      // delta(q^-1) = -sigma(q)^-1 delta(q) q^-1
      LaurentPoly sq = sigma_on_laurent(i, LaurentPoly::monomial(np, negated(ue), 1), false);
      du = -(sq.inv_term() * D.images[static_cast<size_t>(k)] * u);
    }
    LaurentPoly::Exps rest = e;
    rest[static_cast<size_t>(k)] -= step;
    LaurentPoly w = LaurentPoly::monomial(np, rest, 1);
    return sigma_on_laurent(i, u, false) * self(rest, self) + du * w;
  };
  LaurentPoly r(np);
  for (const auto& [e, c] : v.terms()) r = r + LaurentPoly(np, c) * delta_mono(e, delta_mono);
  return r;
}

Coeff CoeffBackend::apply_sigma(int i, const Coeff& a, long power) const {
  expect(a, "apply_sigma");
  if (i < 0 || i >= nvars()) throw InvalidAction("variable index out of range");
  if (power == 0 || !is_laurent_kind() || sigma_.at(static_cast<size_t>(i)).identity) return a;
  bool inverse = power < 0;
  long steps = inverse ? -power : power;
  if (kind_ == BackendKind::laurent_field) {
    LaurentPoly v = *a.laurent();
    for (long s = 0; s < steps; ++s) v = sigma_on_laurent(i, v, inverse);
    return Coeff(v);
  }
  LaurentPoly n = a.fraction()->num, d = a.fraction()->den;
  for (long s = 0; s < steps; ++s) {
    n = sigma_on_laurent(i, n, inverse);
    d = sigma_on_laurent(i, d, inverse);
  }
  return Coeff(reduce_fraction(n, d));
}

Coeff CoeffBackend::apply_delta(int i, const Coeff& a) const {
  expect(a, "apply_delta");
  if (i < 0 || i >= nvars()) throw InvalidAction("variable index out of range");
  if (delta_.at(static_cast<size_t>(i)).zero) return zero();
  if (kind_ == BackendKind::laurent_field) return Coeff(delta_on_laurent(i, *a.laurent()));
  // Fraction extension, fixed by delta-bar(1) = 0:
  //   delta(a/s) = delta(a)/sigma(s) - (delta(s)/sigma(s)) (a/s)
  //              = (delta(a) s - delta(s) a) / (sigma(s) s)
  const LaurentPoly& n = a.fraction()->num;
  const LaurentPoly& d = a.fraction()->den;
  LaurentPoly dn = delta_on_laurent(i, n);
  LaurentPoly dd = delta_on_laurent(i, d);
  LaurentPoly sd = sigma_on_laurent(i, d, false);
  return Coeff(reduce_fraction(dn * d - dd * n, sd * d));
}

/* ------------------------------------------------------------------ */
/* unit-group helpers                                                 */
/* ------------------------------------------------------------------ */

long CoeffBackend::torsion_order() const {
  return kind_ == BackendKind::prime_field ? p_ - 1 : 2;
}

long CoeffBackend::primitive_root() const {
  if (kind_ != BackendKind::prime_field) throw kernel_error("primitive_root: prime fields only");
  return root_;
}

std::int64_t CoeffBackend::discrete_log(std::int64_t u) const {
  if (kind_ != BackendKind::prime_field) throw kernel_error("discrete_log: prime fields only");
  u = mod_norm(u, p_);
  if (u == 0) throw NotAUnit("zero is not a unit");
  // baby-step giant-step on the full group
  std::int64_t n = p_ - 1;
  std::int64_t m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::int64_t, std::int64_t> table;
  std::int64_t e = 1;
  for (std::int64_t j = 0; j < m; ++j) {
    table.emplace(e, j);
    e = mod_mul(e, root_, p_);
  }
  std::int64_t factor = mod_pow(mod_inv(root_, p_), m, p_);
  std::int64_t gamma = u;
  for (std::int64_t i = 0; i < m + 1; ++i) {
    auto it = table.find(gamma);
    if (it != table.end()) return mod_norm(i * m + it->second, n);
    gamma = mod_mul(gamma, factor, p_);
  }
  throw kernel_error("discrete log not found");
}

std::optional<UnitParts> unit_parts(const CoeffBackend& backend, const Coeff& u) {
  auto from_mpq = [](const mpq_class& q) {
    UnitParts parts;
    parts.sign = sgn(q) < 0 ? -1 : 1;
    parts.num = abs(q.get_num());
    parts.den = q.get_den();
    return parts;
  };
  switch (backend.kind()) {
    case BackendKind::rational: {
      if (*u.rational() == 0) return std::nullopt;
      return from_mpq(*u.rational());
    }
    case BackendKind::prime_field:
      return std::nullopt;
    case BackendKind::laurent_field: {
      const LaurentPoly& v = *u.laurent();
      if (!v.is_single_term()) return std::nullopt;
      UnitParts parts = from_mpq(v.terms().begin()->second);
      parts.param_exps = v.terms().begin()->first;
      return parts;
    }
    case BackendKind::fraction_field: {
      const FractionValue& f = *u.fraction();
      if (f.num.is_zero() || !f.num.is_single_term()) return std::nullopt;
      if (!(f.den == LaurentPoly(f.den.nparams(), 1))) return std::nullopt;
      UnitParts parts = from_mpq(f.num.terms().begin()->second);
      parts.param_exps = f.num.terms().begin()->first;
      return parts;
    }
  }
  return std::nullopt;
}

/* ------------------------------------------------------------------ */
/* rendering                                                          */
/* ------------------------------------------------------------------ */

std::string CoeffBackend::render_laurent(const LaurentPoly& v) const {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  // leading (lex-greatest) term first
  for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    bool any_param = false;
    for (int x : e)
      if (x != 0) any_param = true;
    std::string term;
    if (!any_param) {
      term = c.get_str();
    } else {
      mpq_class ac = abs(c);
      std::string head = (c < 0) ? "-" : "";
      if (ac != 1) head += ac.get_str() + "*";
      term = head;
      bool started = false;
      for (int k = 0; k < nparams(); ++k) {
        int ek = e[static_cast<size_t>(k)];
        if (ek == 0) continue;
        if (started) term += "*";
        term += params_[static_cast<size_t>(k)];
        if (ek != 1) term += "^" + std::to_string(ek);
        started = true;
      }
    }
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::string CoeffBackend::render(const Coeff& a) const {
  expect(a, "render");
  switch (kind_) {
    case BackendKind::rational: return a.rational()->get_str();
    case BackendKind::prime_field: return std::to_string(*a.residue());
    case BackendKind::laurent_field: return render_laurent(*a.laurent());
    case BackendKind::fraction_field: {
      const auto& f = *a.fraction();
      if (f.den == LaurentPoly(nparams(), 1)) return render_laurent(f.num);
      return "(" + render_laurent(f.num) + ")/(" + render_laurent(f.den) + ")";
    }
  }
  throw kernel_error("unreachable");
}

}  // namespace spbw
