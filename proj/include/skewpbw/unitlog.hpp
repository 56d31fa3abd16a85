#pragma once

#include "skewpbw/coeff.hpp"
#include "skewpbw/intmat.hpp"

namespace spbw {

// Coordinate system for logarithms of units: exponents over a fixed list of
// primes, then parameter exponents, then one torsion coordinate (sign for
// rational-scalar backends, the cyclic group for prime fields).
struct UnitShape {
  std::vector<long> primes;  // ascending, deduplicated
  int nparams = 0;
  long torsion = 2;
  int dim() const { return static_cast<int>(primes.size()) + nparams + 1; }
};

// Shape covering the given units plus every sigma scale factor and declared
// prime of the backend.  Throws UnitLogUnsupported when a scalar cannot be
// factored into primes of manageable size.
UnitShape make_unit_shape(const CoeffBackend& B, const std::vector<Coeff>& units);

// Integer log of a unit in shape coordinates.  Supported units are nonzero
// scalars (rational, prime field) and scalar * parameter-monomial values on
// the Laurent and fraction backends; anything else throws UnitLogUnsupported.
std::vector<mpz_class> unit_log(const CoeffBackend& B, const UnitShape& shape, const Coeff& u);

// Log-lattice of the subgroup of units of the form u^-1 sigma_i(u), plus the
// torsion relation; values[j] realizes rows.row(j) for replay checks.
struct NLattice {
  IntMat rows;
  std::vector<Coeff> values;
};
NLattice n_lattice(const CoeffBackend& B, const UnitShape& shape);

// Multiplicative independence of unit classes modulo the sigma-moved
// subgroup.  A dependence comes with a primitive certificate, replayed
// exactly in the backend before it is returned.
struct IndependenceResult {
  bool independent = true;
  std::vector<mpz_class> unit_exps;     // one per unit, not all zero when dependent
  std::vector<mpz_class> lattice_exps;  // matching exponents on the lattice values
};
IndependenceResult test_independence(const CoeffBackend& B, const std::vector<Coeff>& units);

// Do two units fall in the same class modulo the sigma-moved subgroup?
bool classes_equal_mod_n(const CoeffBackend& B, const Coeff& a, const Coeff& b);

}  // namespace spbw
