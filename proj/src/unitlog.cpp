#include "skewpbw/unitlog.hpp"

#include <algorithm>
#include <set>

namespace spbw {

namespace {

// Trial division with a primality check on the remainder; the scalars that
// reach this are presentation constants, so small factors are the norm.
void collect_prime_factors(const mpz_class& v0, std::set<long>& out) {
  mpz_class v = abs(v0);
  if (v <= 1) return;
  for (long d = 2; d < 100000 && mpz_class(d) * d <= v; ++d) {
    if (v % d == 0) {
      out.insert(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v == 1) return;
  if (mpz_probab_prime_p(v.get_mpz_t(), 30) == 0)
    throw UnitLogUnsupported("scalar with an out-of-reach factorization");
  if (!v.fits_slong_p())
    throw UnitLogUnsupported("prime factor does not fit the shape coordinates");
  out.insert(v.get_si());
}

void collect_rational(const mpq_class& q, std::set<long>& out) {
  collect_prime_factors(q.get_num(), out);
  collect_prime_factors(q.get_den(), out);
}

int prime_index(const UnitShape& shape, long p) {
  auto it = std::lower_bound(shape.primes.begin(), shape.primes.end(), p);
  if (it == shape.primes.end() || *it != p) return -1;
  return static_cast<int>(it - shape.primes.begin());
}

// exponents of shape.primes in v; v must factor completely over them
void log_integer(const UnitShape& shape, const mpz_class& v0, int direction,
                 std::vector<mpz_class>& coords) {
  mpz_class v = abs(v0);
  for (size_t k = 0; k < shape.primes.size() && v > 1; ++k) {
    long p = shape.primes[k];
    while (v % p == 0) {
      coords[k] += direction;
      v /= p;
    }
  }
  if (v != 1) throw UnitLogUnsupported("unit scalar leaves the prime shape");
}

}  // namespace

UnitShape make_unit_shape(const CoeffBackend& B, const std::vector<Coeff>& units) {
  UnitShape shape;
  shape.nparams = B.is_laurent_kind() ? B.nparams() : 0;
  shape.torsion = B.torsion_order();
  if (B.kind() == BackendKind::prime_field) return shape;  // cyclic group only
  std::set<long> primes(B.declared_primes().begin(), B.declared_primes().end());
  for (int i = 0; i < B.nvars(); ++i) {
    const SigmaAction& s = B.sigma(i);
    if (s.identity) continue;
    for (const auto& c : s.scale) collect_rational(c, primes);
  }
  for (const auto& u : units) {
    auto parts = unit_parts(B, u);
    if (!parts) continue;  // unsupported units surface later, in unit_log
    collect_prime_factors(parts->num, primes);
    collect_prime_factors(parts->den, primes);
  }
  shape.primes.assign(primes.begin(), primes.end());
  return shape;
}

std::vector<mpz_class> unit_log(const CoeffBackend& B, const UnitShape& shape, const Coeff& u) {
  std::vector<mpz_class> coords(static_cast<size_t>(shape.dim()));
  if (B.kind() == BackendKind::prime_field) {
    const std::int64_t* r = u.residue();
    if (!r || *r == 0) throw UnitLogUnsupported("not a unit of the prime field");
    coords.back() = B.discrete_log(*r);
    return coords;
  }
  auto parts = unit_parts(B, u);
  if (!parts)
    throw UnitLogUnsupported("unit is not a scalar times a parameter monomial");
  log_integer(shape, parts->num, +1, coords);
  log_integer(shape, parts->den, -1, coords);
  if (static_cast<int>(parts->param_exps.size()) > shape.nparams)
    throw UnitLogUnsupported("parameter exponents outside the shape");
  for (size_t k = 0; k < parts->param_exps.size(); ++k)
    coords[shape.primes.size() + k] = parts->param_exps[k];
  if (parts->sign < 0) coords.back() = 1;
  return coords;
}

NLattice n_lattice(const CoeffBackend& B, const UnitShape& shape) {
  NLattice lat;
  lat.rows = IntMat(0, shape.dim());
  auto push = [&](const std::vector<mpz_class>& row, const Coeff& value) {
    bool zero = std::all_of(row.begin(), row.end(), [](const mpz_class& x) { return x == 0; });
    if (zero) return;
    lat.rows.append_row(row);
    lat.values.push_back(value);
  };
  if (B.kind() != BackendKind::prime_field) {
    bool fraction = B.kind() == BackendKind::fraction_field;
    for (int i = 0; i < B.nvars(); ++i) {
      const SigmaAction& s = B.sigma(i);
      if (s.identity) continue;
      bool permutes = false;
      bool scales = false;
      for (int k = 0; k < B.nparams(); ++k) {
        if (s.perm[static_cast<size_t>(k)] != k) permutes = true;
        if (s.scale[static_cast<size_t>(k)] != 1) scales = true;
      }
      if (fraction && permutes && scales)
        throw UnitLogUnsupported(
            "mixed scaling and permuting action over a fraction backend");
      // one generator per parameter: q_k^-1 sigma_i(q_k)
      for (int k = 0; k < B.nparams(); ++k) {
        std::vector<int> e(static_cast<size_t>(B.nparams()), 0);
        e[static_cast<size_t>(k)] = 1;
        Coeff qk = B.monomial(e, 1);
        Coeff gen = B.mul(B.apply_sigma(i, qk), B.inv(qk));
        push(unit_log(B, shape, gen), gen);
      }
      if (fraction && permutes) {
        // an even cycle sends some alternating sum z to -z, so the sign
        // class collapses over the fractions
        std::vector<bool> seen(static_cast<size_t>(B.nparams()), false);
        for (int k = 0; k < B.nparams(); ++k) {
          if (seen[static_cast<size_t>(k)]) continue;
          int len = 0, m = k;
          while (!seen[static_cast<size_t>(m)]) {
            seen[static_cast<size_t>(m)] = true;
            m = s.perm[static_cast<size_t>(m)];
            ++len;
          }
          if (len % 2 == 0) {
            std::vector<mpz_class> row(static_cast<size_t>(shape.dim()));
            row.back() = 1;
            push(row, B.from_int(-1));
            break;
          }
        }
      }
    }
  }
  std::vector<mpz_class> torsion_row(static_cast<size_t>(shape.dim()));
  torsion_row.back() = shape.torsion;
  lat.rows.append_row(torsion_row);
  lat.values.push_back(B.one());
  return lat;
}

IndependenceResult test_independence(const CoeffBackend& B, const std::vector<Coeff>& units) {
  IndependenceResult res;
  if (units.empty()) return res;
  UnitShape shape = make_unit_shape(B, units);
  IntMat M(0, shape.dim());
  for (const auto& u : units) M.append_row(unit_log(B, shape, u));
  NLattice lat = n_lattice(B, shape);
  int k = M.rows();
  for (int j = 0; j < lat.rows.rows(); ++j) M.append_row(lat.rows.row(j));
  // left kernel of the stacked matrix; a vector with support on the first
  // k coordinates is a dependence of the unit classes
  auto kern = kernel_basis(M.transpose());
  const std::vector<mpz_class>* hit = nullptr;
  for (const auto& v : kern) {
    for (int i = 0; i < k; ++i)
      if (v[static_cast<size_t>(i)] != 0) {
        hit = &v;
        break;
      }
    if (hit) break;
  }
  if (!hit) return res;
  std::vector<mpz_class> cert = primitive_vector(*hit);
  res.independent = false;
  res.unit_exps.assign(cert.begin(), cert.begin() + k);
  res.lattice_exps.assign(cert.begin() + k, cert.end());
  // replay the certificate exactly
  Coeff prod = B.one();
  for (int i = 0; i < k; ++i) {
    if (!cert[static_cast<size_t>(i)].fits_slong_p())
      throw kernel_error("certificate exponent overflow");
    prod = B.mul(prod, B.pow(units[static_cast<size_t>(i)], cert[static_cast<size_t>(i)].get_si()));
  }
  for (size_t j = 0; j < lat.values.size(); ++j) {
    const mpz_class& e = cert[static_cast<size_t>(k) + j];
    if (!e.fits_slong_p()) throw kernel_error("certificate exponent overflow");
    prod = B.mul(prod, B.pow(lat.values[j], e.get_si()));
  }
  if (!B.is_one(prod)) throw kernel_error("dependence certificate failed replay");
  return res;
}

bool classes_equal_mod_n(const CoeffBackend& B, const Coeff& a, const Coeff& b) {
  UnitShape shape = make_unit_shape(B, {a, b});
  std::vector<mpz_class> la = unit_log(B, shape, a);
  std::vector<mpz_class> lb = unit_log(B, shape, b);
  std::vector<mpz_class> diff(la.size());
  for (size_t i = 0; i < la.size(); ++i) diff[i] = la[i] - lb[i];
  NLattice lat = n_lattice(B, shape);
  return in_row_lattice(lat.rows, diff);
}

}  // namespace spbw
