#include "skewpbw/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace spbw {

bool lex_less(const ExponentVec& a, const ExponentVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int exp_degree(const ExponentVec& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

bool SkewPoly::is_scalar() const {
  if (t_.empty()) return true;
  if (t_.size() != 1) return false;
  const ExponentVec& e = t_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

void SkewPoly::add_term(const CoeffBackend& b, const ExponentVec& e, const Coeff& c) {
  if (static_cast<int>(e.size()) != n_) throw kernel_error("term width mismatch");
  if (b.is_zero(c)) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  Coeff s = b.add(it->second, c);
  if (b.is_zero(s))
    t_.erase(it);
  else
    it->second = std::move(s);
}

const Coeff* SkewPoly::coeff_at(const ExponentVec& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? nullptr : &it->second;
}

std::pair<ExponentVec, Coeff> leading_term(const SkewPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("leading term of 0");
  auto it = f.terms().rbegin();
  return {it->first, it->second};
}

std::pair<ExponentVec, Coeff> smallest_term(const SkewPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("smallest term of 0");
  auto it = f.terms().begin();
  return {it->first, it->second};
}

/* ------------------------------------------------------------------ */
/* presentation setup                                                 */
/* ------------------------------------------------------------------ */

void Presentation::set_commutation(int j, int i, const Coeff& cji) {
  if (!(j > i)) throw kernel_error("defining commutation entries need j > i");
  c.at(j).at(i) = cji;
  c.at(i).at(j) = backend.is_unit(cji) ? backend.inv(cji) : Coeff{};
}

void Presentation::set_d_lower(int j, int i, SkewPoly d) {
  if (!(j > i)) throw kernel_error("lower correction terms need j > i");
  d_lower.at(j).at(i) = std::move(d);
}

void Presentation::infer_flags() {
  const int nn = n();
  bool quasi = true;
  for (int i = 0; i < backend.nvars() && quasi; ++i)
    if (!backend.delta_is_zero(i)) quasi = false;
  for (int j = 0; j < nn && quasi; ++j)
    for (int i = 0; i < j && quasi; ++i)
      if (!d_lower.at(j).at(i).is_zero()) quasi = false;
  quasi_commutative = quasi;
  bool bij = true;
  for (int j = 0; j < nn && bij; ++j)
    for (int i = 0; i < j && bij; ++i)
      if (!backend.is_unit(c.at(j).at(i))) bij = false;
  bijective = bij;
  laurent = laurent_count >= 1;
}

Presentation make_presentation(CoeffBackend backend,
                               std::vector<std::string> names,
                               int laurent_count) {
  Presentation p;
  const int n = static_cast<int>(names.size());
  if (n < 1) throw InvalidPresentation("a presentation needs at least one variable");
  if (backend.nvars() == 0) {
    backend.attach_actions(n, std::vector<SigmaAction>(static_cast<size_t>(n)),
                           std::vector<DeltaAction>(static_cast<size_t>(n)));
  }
  p.backend = std::move(backend);
  p.names = std::move(names);
  p.laurent_count = laurent_count;
  p.c.assign(static_cast<size_t>(n), std::vector<Coeff>(static_cast<size_t>(n), p.backend.one()));
  p.d_lower.assign(static_cast<size_t>(n),
                   std::vector<SkewPoly>(static_cast<size_t>(n), SkewPoly(n)));
  p.infer_flags();
  return p;
}

/* ------------------------------------------------------------------ */
/* rewriting engine                                                   */
/*                                                                    */
/* Words are sequences of coefficient atoms and single variable steps */
/* x_i^{+1} / x_i^{-1}.  The leftmost violation is rewritten until    */
/* none remains:                                                      */
/*   adjacent coefficients        -> merged                           */
/*   x_i^e a                      -> sigma_i^e(a) x_i^e  [+ delta_i(a) a new word, e = +1] */
/*   x_i^e x_i^{-e}               -> (dropped)                        */
/*   x_i^{et} x_j^{es},  i > j    -> tau x_j^{es} x_i^{et}  [+ d_lower words, both +1] */
/* Each step strictly decreases (variable atoms, variable inversions, */
/* coefficient misplacements) lexicographically, so this terminates.  */
/* ------------------------------------------------------------------ */

namespace {

struct Atom {
  int var = -1;  // -1: coefficient atom
  int sign = 0;
  Coeff coeff;
};

using Word = std::vector<Atom>;

Atom coeff_atom(Coeff c) {
  Atom a;
  a.coeff = std::move(c);
  return a;
}

Atom var_atom(int var, int sign) {
  Atom a;
  a.var = var;
  a.sign = sign;
  return a;
}

void append_exponent_atoms(Word& w, const ExponentVec& e) {
  for (size_t i = 0; i < e.size(); ++i) {
    const int s = e[i] > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(e[i]); ++k) w.push_back(var_atom(static_cast<int>(i), s));
  }
}

// One word per term of f, coefficient first then the variable steps.
void append_poly_words(std::vector<Word>& out, const Word& prefix, const SkewPoly& f,
                       const Word& suffix) {
  for (const auto& [e, a] : f.terms()) {
    Word w = prefix;
    w.push_back(coeff_atom(a));
    append_exponent_atoms(w, e);
    w.insert(w.end(), suffix.begin(), suffix.end());
    out.push_back(std::move(w));
  }
}

class Engine {
 public:
  explicit Engine(const Presentation& p) : p_(p), b_(p.backend) {}

  // Reduces w and every spawned word, accumulating normal-form terms.
  void reduce_into(Word w, SkewPoly& out) const {
    std::vector<Word> work;
    work.push_back(std::move(w));
    while (!work.empty()) {
      Word cur = std::move(work.back());
      work.pop_back();
      reduce_one(std::move(cur), work, out);
    }
  }

 private:
  const Presentation& p_;
  const CoeffBackend& b_;

  Coeff tau(int i, int j, int et, int es) const {
    const Coeff& low = p_.c.at(i).at(j);
    if (et > 0 && es > 0) return low;
    if (!b_.is_unit(low))
      throw NotAUnit("inverse-variable commutation needs a unit coefficient");
    const Coeff li = b_.inv(low);
    if (et > 0) return b_.apply_sigma(j, li, -1);
    if (es > 0) return b_.apply_sigma(i, li, -1);
    return b_.apply_sigma(i, b_.apply_sigma(j, low, -1), -1);
  }

  void reduce_one(Word w, std::vector<Word>& work, SkewPoly& out) const {
    size_t k = 0;
    while (k + 1 <= w.size()) {
      if (k + 1 == w.size()) break;
      Atom& a = w[k];
      Atom& b = w[k + 1];
      if (a.var < 0 && b.var < 0) {
        Coeff m = b_.mul(a.coeff, b.coeff);
        if (b_.is_zero(m)) return;  // the whole word vanishes
        a.coeff = std::move(m);
        w.erase(w.begin() + static_cast<long>(k) + 1);
        if (k > 0) --k;
        continue;
      }
      if (a.var >= 0 && b.var < 0) {
        // x_i^e a -> sigma_i^e(a) x_i^e, spawning the delta word for e = +1
        if (a.sign > 0 && !b_.delta_is_zero(a.var)) {
          Coeff d = b_.apply_delta(a.var, b.coeff);
          if (!b_.is_zero(d)) {
            Word spawn;
            spawn.reserve(w.size() - 1);
            spawn.insert(spawn.end(), w.begin(), w.begin() + static_cast<long>(k));
            spawn.push_back(coeff_atom(std::move(d)));
            spawn.insert(spawn.end(), w.begin() + static_cast<long>(k) + 2, w.end());
            work.push_back(std::move(spawn));
          }
        }
        Coeff moved = b_.apply_sigma(a.var, b.coeff, a.sign);
        if (b_.is_zero(moved)) return;
        b = a;
        a = coeff_atom(std::move(moved));
        if (k > 0) --k;
        continue;
      }
      if (a.var >= 0 && b.var >= 0) {
        if (a.var == b.var && a.sign != b.sign) {
          w.erase(w.begin() + static_cast<long>(k), w.begin() + static_cast<long>(k) + 2);
          if (k > 0) --k;
          continue;
        }
        if (a.var > b.var) {
          const int i = a.var, j = b.var, et = a.sign, es = b.sign;
          if (et > 0 && es > 0) {
            const SkewPoly& d = p_.d_lower.at(i).at(j);
            if (!d.is_zero()) {
              Word prefix(w.begin(), w.begin() + static_cast<long>(k));
              Word suffix(w.begin() + static_cast<long>(k) + 2, w.end());
              append_poly_words(work, prefix, d, suffix);
            }
          }
          Coeff t = tau(i, j, et, es);
          a = coeff_atom(std::move(t));
          b = var_atom(j, es);
          w.insert(w.begin() + static_cast<long>(k) + 2, var_atom(i, et));
          if (k > 0) --k;
          continue;
        }
      }
      ++k;
    }
    // normal: optional coefficient prefix then ascending variable steps
    Coeff lead = b_.one();
    ExponentVec e(static_cast<size_t>(p_.n()), 0);
    for (const Atom& a : w) {
      if (a.var < 0)
        lead = b_.mul(lead, a.coeff);
      else
        e[static_cast<size_t>(a.var)] += a.sign;
    }
    out.add_term(b_, e, lead);
  }
};

void check_structure(const Presentation& p) {
  const int n = p.n();
  if (n < 1) throw InvalidPresentation("a presentation needs at least one variable");
  for (const std::string& s : p.names)
    if (s.empty()) throw InvalidPresentation("empty variable name");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.names[static_cast<size_t>(i)] == p.names[static_cast<size_t>(j)])
        throw InvalidPresentation("duplicate variable name " + p.names[static_cast<size_t>(i)]);
  if (p.laurent_count < 0 || p.laurent_count > n)
    throw InvalidPresentation("invertible-variable count out of range");
  if (p.backend.nvars() != n)
    throw InvalidPresentation("backend actions are not attached for every variable");
  if (static_cast<int>(p.c.size()) != n || static_cast<int>(p.d_lower.size()) != n)
    throw InvalidPresentation("commutation tables have the wrong shape");
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(p.c.at(j).size()) != n ||
        static_cast<int>(p.d_lower.at(j).size()) != n)
      throw InvalidPresentation("commutation tables have the wrong shape");
    for (int i = 0; i < n; ++i) {
      const SkewPoly& d = p.d_lower.at(j).at(i);
      if (!d.is_zero() && (j <= i))
        throw InvalidPresentation("correction terms only live strictly below the diagonal");
      if (d.nvars() != n && !d.is_zero())
        throw InvalidPresentation("correction term width mismatch");
    }
  }
}

std::string idx(const Presentation& p, int i) { return p.names.at(static_cast<size_t>(i)); }

}  // namespace

/* ------------------------------------------------------------------ */
/* validation                                                         */
/* ------------------------------------------------------------------ */

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "\n";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate_presentation(const Presentation& p) {
  check_structure(p);
  ValidationReport rep;
  const int n = p.n();
  const CoeffBackend& B = p.backend;
  auto flag = [&](const std::string& s) { rep.violations.push_back(s); };

  for (int i = 0; i < n; ++i)
    if (!B.is_one(p.c.at(i).at(i)))
      flag("c[" + idx(p, i) + "][" + idx(p, i) + "] != 1");

  bool all_units = true;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Coeff& low = p.c.at(j).at(i);
      if (B.is_zero(low))
        flag("c[" + idx(p, j) + "][" + idx(p, i) + "] is zero");
      if (!B.is_unit(low)) {
        all_units = false;
        continue;
      }
      const Coeff& up = p.c.at(i).at(j);
      if (!up.empty() && !B.is_one(B.mul(low, up)))
        flag("c[" + idx(p, i) + "][" + idx(p, j) + "]*c[" + idx(p, j) + "][" + idx(p, i) +
             "] != 1");
    }

  bool data_quasi = true;
  for (int i = 0; i < n; ++i)
    if (!B.delta_is_zero(i)) data_quasi = false;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (!p.d_lower.at(j).at(i).is_zero()) data_quasi = false;

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const SkewPoly& d = p.d_lower.at(j).at(i);
      if (!d.is_zero()) {
        for (const auto& [e, a] : d.terms()) {
          (void)a;
          if (exp_degree(e) > 1) {
            flag("d_lower[" + idx(p, j) + "][" + idx(p, i) + "] has degree > 1");
            break;
          }
          bool neg = false;
          for (int v : e)
            if (v < 0) neg = true;
          if (neg) {
            flag("d_lower[" + idx(p, j) + "][" + idx(p, i) + "] has negative exponents");
            break;
          }
        }
      }
    }

  if (p.quasi_commutative && !data_quasi)
    flag("declared quasi-commutative but a correction term or delta action is nonzero");
  if (p.bijective && !all_units)
    flag("declared bijective but some commutation coefficient is not a unit");
  if (p.laurent) {
    if (p.laurent_count < 1) flag("declared Laurent with no invertible variables");
    if (!data_quasi) flag("declared Laurent but a correction term or delta action is nonzero");
    if (!all_units) flag("declared Laurent but some commutation coefficient is not a unit");
  }

  for (int i = 0; i < p.laurent_count; ++i)
    if (!B.delta_is_zero(i))
      flag("invertible variable " + idx(p, i) + " has a nonzero delta action");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (j < p.laurent_count || i < p.laurent_count) {
        if (!p.d_lower.at(j).at(i).is_zero())
          flag("relation (" + idx(p, j) + "," + idx(p, i) +
               ") involves an invertible variable but has a correction term");
        if (!B.is_unit(p.c.at(j).at(i)))
          flag("relation (" + idx(p, j) + "," + idx(p, i) +
               ") involves an invertible variable but c is not a unit");
      }
    }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const Coeff& g : B.generators()) {
        Coeff ij = B.apply_sigma(i, B.apply_sigma(j, g));
        Coeff ji = B.apply_sigma(j, B.apply_sigma(i, g));
        if (!(ij == ji)) {
          flag("sigma[" + idx(p, i) + "] and sigma[" + idx(p, j) +
               "] do not commute on " + B.render(g));
          break;
        }
      }

  // triple cocycle, quasi-commutative all-units case: with q_uv := c[u][v],
  // Q(u,v,w) := q_uv * sigma_v(q_uw) must satisfy Q(i,j,k) Q(j,k,i) Q(k,i,j) = 1
  bool upper_filled = true;
  for (int j = 0; j < n && upper_filled; ++j)
    for (int i = 0; i < j && upper_filled; ++i)
      if (p.c.at(i).at(j).empty()) upper_filled = false;
  if (data_quasi && all_units && upper_filled) {
    auto Q = [&](int u, int v, int w) {
      return B.mul(p.c.at(u).at(v), B.apply_sigma(v, p.c.at(u).at(w)));
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          Coeff prod = B.mul(B.mul(Q(i, j, k), Q(j, k, i)), Q(k, i, j));
          if (!B.is_one(prod))
            flag("commutation cocycle fails at (" + idx(p, i) + "," + idx(p, j) + "," +
                 idx(p, k) + ")");
        }
  }

  // associativity smoke test through the engine
  if (rep.valid()) {
    Ring r = Ring::unchecked(p);
    std::vector<SkewPoly> atoms;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      atoms.push_back(r.var(i));
      labels.push_back(idx(p, i));
      if (i < p.laurent_count) {
        atoms.push_back(r.var_pow(i, -1));
        labels.push_back(idx(p, i) + "^-1");
      }
    }
    try {
      for (size_t a = 0; a < atoms.size(); ++a)
        for (size_t b = 0; b < atoms.size(); ++b) {
          for (size_t c = 0; c < atoms.size(); ++c) {
            SkewPoly lhs = r.multiply(r.multiply(atoms[a], atoms[b]), atoms[c]);
            SkewPoly rhs = r.multiply(atoms[a], r.multiply(atoms[b], atoms[c]));
            if (lhs != rhs)
              flag("associativity fails on (" + labels[a] + "," + labels[b] + "," + labels[c] +
                   ")");
          }
          for (const Coeff& g : B.generators()) {
            SkewPoly gs = r.scalar(g);
            SkewPoly l1 = r.multiply(r.multiply(atoms[a], atoms[b]), gs);
            SkewPoly r1 = r.multiply(atoms[a], r.multiply(atoms[b], gs));
            if (l1 != r1)
              flag("associativity fails on (" + labels[a] + "," + labels[b] + "," + B.render(g) +
                   ")");
            SkewPoly l2 = r.multiply(r.multiply(atoms[a], gs), atoms[b]);
            SkewPoly r2 = r.multiply(atoms[a], r.multiply(gs, atoms[b]));
            if (l2 != r2)
              flag("associativity fails on (" + labels[a] + "," + B.render(g) + "," + labels[b] +
                   ")");
          }
        }
    } catch (const kernel_error& e) {
      flag(std::string("rewriting failed during the associativity check: ") + e.what());
    }
  }

  return rep;
}

/* ------------------------------------------------------------------ */
/* ring                                                               */
/* ------------------------------------------------------------------ */

Ring Ring::from_presentation(Presentation p) {
  ValidationReport rep = validate_presentation(p);
  if (!rep.valid()) throw InvalidPresentation(rep.to_string());
  return Ring(std::move(p));
}

Ring Ring::unchecked(Presentation p) {
  check_structure(p);
  return Ring(std::move(p));
}

SkewPoly Ring::one() const { return scalar(p_.backend.one()); }

SkewPoly Ring::scalar(const Coeff& a) const {
  SkewPoly f(nvars());
  f.add_term(p_.backend, ExponentVec(static_cast<size_t>(nvars()), 0), a);
  return f;
}

SkewPoly Ring::var(int i) const { return var_pow(i, 1); }

SkewPoly Ring::var_pow(int i, int e) const {
  ExponentVec v(static_cast<size_t>(nvars()), 0);
  v.at(static_cast<size_t>(i)) = e;
  return monomial(v, p_.backend.one());
}

SkewPoly Ring::monomial(const ExponentVec& e, const Coeff& a) const {
  if (static_cast<int>(e.size()) != nvars()) throw kernel_error("exponent width mismatch");
  for (int i = 0; i < nvars(); ++i)
    if (e[static_cast<size_t>(i)] < 0 && !invertible_var(i))
      throw InvalidExponent("negative exponent on non-invertible variable " + var_name(i));
  SkewPoly f(nvars());
  f.add_term(p_.backend, e, a);
  return f;
}

SkewPoly Ring::add(const SkewPoly& f, const SkewPoly& g) const {
  SkewPoly out = f;
  for (const auto& [e, a] : g.terms()) out.add_term(p_.backend, e, a);
  return out;
}

SkewPoly Ring::sub(const SkewPoly& f, const SkewPoly& g) const { return add(f, neg(g)); }

SkewPoly Ring::neg(const SkewPoly& f) const {
  SkewPoly out(nvars());
  for (const auto& [e, a] : f.terms()) out.add_term(p_.backend, e, p_.backend.neg(a));
  return out;
}

SkewPoly Ring::coeff_mul(const Coeff& a, const SkewPoly& f) const {
  SkewPoly out(nvars());
  for (const auto& [e, b] : f.terms()) out.add_term(p_.backend, e, p_.backend.mul(a, b));
  return out;
}

SkewPoly Ring::multiply(const SkewPoly& f, const SkewPoly& g) const {
  SkewPoly out(nvars());
  Engine eng(p_);
  for (const auto& [ef, af] : f.terms())
    for (const auto& [eg, ag] : g.terms()) {
      Word w;
      w.push_back(coeff_atom(af));
      append_exponent_atoms(w, ef);
      w.push_back(coeff_atom(ag));
      append_exponent_atoms(w, eg);
      eng.reduce_into(std::move(w), out);
    }
  return out;
}

SkewPoly Ring::pow(const SkewPoly& f, int k) const {
  if (k < 0) return pow(inverse_monomial(f), -k);
  SkewPoly acc = one();
  for (int i = 0; i < k; ++i) acc = multiply(acc, f);
  return acc;
}

SkewPoly Ring::inverse_monomial(const SkewPoly& f) const {
  if (f.terms().size() != 1) throw NotAUnit("only single-term elements invert");
  const auto& [e, a] = *f.terms().begin();
  if (!p_.backend.is_unit(a)) throw NotAUnit("coefficient is not a unit");
  for (int i = 0; i < nvars(); ++i)
    if (e[static_cast<size_t>(i)] != 0 && !invertible_var(i))
      throw NotAUnit("variable " + var_name(i) + " is not invertible");
  Word w;
  for (int i = nvars() - 1; i >= 0; --i) {
    const int v = e[static_cast<size_t>(i)];
    const int s = v > 0 ? -1 : 1;
    for (int k = 0; k < std::abs(v); ++k) w.push_back(var_atom(i, s));
  }
  w.push_back(coeff_atom(p_.backend.inv(a)));
  SkewPoly out(nvars());
  Engine eng(p_);
  eng.reduce_into(std::move(w), out);
  return out;
}

int Ring::degree(const SkewPoly& f) const {
  if (p_.laurent_count > 0)
    throw LaurentUnsupported("the degree filtration needs every variable non-invertible");
  if (f.is_zero()) throw ZeroPolynomial("degree of 0");
  int d = 0;
  for (const auto& [e, a] : f.terms()) {
    (void)a;
    d = std::max(d, exp_degree(e));
  }
  return d;
}

bool Ring::in_filtration(const SkewPoly& f, int m) const {
  if (p_.laurent_count > 0)
    throw LaurentUnsupported("the degree filtration needs every variable non-invertible");
  if (f.is_zero()) return true;
  return degree(f) <= m;
}

std::string Ring::render(const SkewPoly& f) const {
  if (f.is_zero()) return "0";
  const CoeffBackend& B = p_.backend;
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, a] = *it;
    std::string vars;
    for (int i = 0; i < nvars(); ++i) {
      const int v = e[static_cast<size_t>(i)];
      if (v == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += var_name(i);
      if (v != 1) vars += "^" + std::to_string(v);
    }
    bool negative = false;
    std::string body;
    if (B.is_one(a)) {
      body = vars.empty() ? "1" : vars;
    } else if (B.is_one(B.neg(a))) {
      negative = true;
      body = vars.empty() ? "1" : vars;
    } else {
      std::string cs = B.render(a);
      if (cs.find(' ') != std::string::npos) {
        cs = "(" + cs + ")";
      } else if (!cs.empty() && cs[0] == '-') {
        negative = true;
        cs = cs.substr(1);
      }
      body = vars.empty() ? cs : cs + "*" + vars;
    }
    if (first) {
      out += negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
  }
  return out;
}

}  // namespace spbw
