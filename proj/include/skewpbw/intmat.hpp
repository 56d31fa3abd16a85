#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "skewpbw/errors.hpp"

namespace spbw {

// Dense integer matrix, row major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows * cols)) {}
  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<std::vector<mpz_class>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  mpz_class& at(int r, int c) { return a_[static_cast<size_t>(r * c_ + c)]; }
  const mpz_class& at(int r, int c) const { return a_[static_cast<size_t>(r * c_ + c)]; }

  IntMat operator*(const IntMat& o) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const = default;

  void append_row(const std::vector<mpz_class>& row);
  std::vector<mpz_class> row(int r) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

// U A V = D with U, V unimodular and D diagonal, each invariant factor
// dividing the next; diag holds the nonzero factors.
struct SmithResult {
  IntMat U, D, V;
  int rank = 0;
  std::vector<mpz_class> diag;
};
SmithResult smith_normal_form(const IntMat& A);

// Row-style Hermite form: U A = H, U unimodular, H in echelon with positive
// pivots and entries above each pivot reduced into [0, pivot).  Canonical
// for the row lattice, so two generating sets match iff their H agree.
struct HermiteResult {
  IntMat U, H;
  int rank = 0;
};
HermiteResult hermite_normal_form(const IntMat& A);

// Basis of the right kernel { x : A x = 0 }.
std::vector<std::vector<mpz_class>> kernel_basis(const IntMat& A);

// One integer solution of A x = b, if any.
std::optional<std::vector<mpz_class>> solve_integer(const IntMat& A,
                                                    const std::vector<mpz_class>& b);

// Is v in the lattice spanned by the rows of A?
bool in_row_lattice(const IntMat& A, const std::vector<mpz_class>& v);

// Divide out the gcd and make the first nonzero entry positive.
std::vector<mpz_class> primitive_vector(std::vector<mpz_class> v);

}  // namespace spbw
