#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skewpbw/intmat.hpp"

using namespace spbw;

namespace {

IntMat mat(const std::vector<std::vector<long>>& rows) {
  IntMat m;
  for (const auto& r : rows) {
    std::vector<mpz_class> row(r.begin(), r.end());
    m.append_row(row);
  }
  return m;
}

bool is_unimodular(const IntMat& M) {
  SmithResult s = smith_normal_form(M);
  if (s.rank != M.rows() || M.rows() != M.cols()) return false;
  for (const auto& d : s.diag)
    if (d != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("smith form on small matrices") {
  SmithResult s = smith_normal_form(mat({{2, 4}, {6, 8}}));
  CHECK(s.rank == 2);
  CHECK(s.diag == std::vector<mpz_class>{2, 4});
  CHECK(s.U * mat({{2, 4}, {6, 8}}) * s.V == s.D);

  SmithResult t = smith_normal_form(mat({{1, 2}, {3, 4}}));
  CHECK(t.diag == std::vector<mpz_class>{1, 2});

  SmithResult z = smith_normal_form(IntMat(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.diag.empty());

  SmithResult r = smith_normal_form(mat({{6, 10, 15}}));
  CHECK(r.diag == std::vector<mpz_class>{1});
}

TEST_CASE("smith form recovers planted invariant factors") {
  // D0 = diag(1,1,2,2,4,12,0,...,0) scrambled by unimodular transforms
  const int n = 12;
  IntMat D0(n, n);
  std::vector<long> planted = {1, 1, 2, 2, 4, 12};
  for (size_t i = 0; i < planted.size(); ++i) D0.at(static_cast<int>(i), static_cast<int>(i)) = planted[i];
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  IntMat A = D0;
  for (int step = 0; step < 160; ++step) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    mpz_class k = coef(rng);
    if (step % 2 == 0)
      for (int j = 0; j < n; ++j) A.at(a, j) += k * A.at(b, j);
    else
      for (int i = 0; i < n; ++i) A.at(i, a) += k * A.at(i, b);
  }
  SmithResult s = smith_normal_form(A);
  CHECK(s.rank == 6);
  CHECK(s.diag == std::vector<mpz_class>(planted.begin(), planted.end()));
  CHECK(s.U * A * s.V == s.D);
  CHECK(is_unimodular(s.U));
  CHECK(is_unimodular(s.V));
  for (int i = 0; i + 1 < s.rank; ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
}

TEST_CASE("hermite form is canonical for the row lattice") {
  HermiteResult h = hermite_normal_form(mat({{2, 4}, {6, 8}}));
  CHECK(h.H == mat({{2, 0}, {0, 4}}));
  CHECK(h.rank == 2);
  CHECK(h.U * mat({{2, 4}, {6, 8}}) == h.H);
  CHECK(is_unimodular(h.U));

  // two generating sets of one lattice
  HermiteResult a = hermite_normal_form(mat({{1, 1}, {0, 2}}));
  HermiteResult b = hermite_normal_form(mat({{1, 3}, {0, 2}}));
  CHECK(a.H == b.H);
  CHECK(a.H == mat({{1, 1}, {0, 2}}));

  // wide matrix with a zero column
  HermiteResult w = hermite_normal_form(mat({{0, 2, 4}, {0, 3, 5}}));
  CHECK(w.rank == 2);
  CHECK(w.H == mat({{0, 1, 1}, {0, 0, 2}}));
}

TEST_CASE("right kernel") {
  auto k = kernel_basis(mat({{1, 2, 3}, {2, 4, 6}}));
  REQUIRE(k.size() == 2);
  IntMat A = mat({{1, 2, 3}, {2, 4, 6}});
  for (const auto& v : k) {
    for (int i = 0; i < A.rows(); ++i) {
      mpz_class dot = 0;
      for (int j = 0; j < A.cols(); ++j) dot += A.at(i, j) * v[static_cast<size_t>(j)];
      CHECK(dot == 0);
    }
  }
  CHECK(kernel_basis(mat({{1, 0}, {0, 1}})).empty());
}

TEST_CASE("integer solving and lattice membership") {
  auto x = solve_integer(mat({{2, 0}, {0, 3}}), {4, 9});
  REQUIRE(x.has_value());
  CHECK(*x == std::vector<mpz_class>{2, 3});
  CHECK(!solve_integer(mat({{2, 0}, {0, 3}}), {1, 0}).has_value());
  CHECK(!solve_integer(mat({{1, 1}, {1, 1}}), {0, 1}).has_value());

  IntMat L = mat({{2, 0}, {0, 2}});
  CHECK(in_row_lattice(L, {2, 2}));
  CHECK(in_row_lattice(L, {-4, 6}));
  CHECK(!in_row_lattice(L, {1, 1}));
  CHECK(in_row_lattice(L, {0, 0}));
  CHECK(in_row_lattice(IntMat(0, 0), {}));
  IntMat empty2(0, 2);
  CHECK(in_row_lattice(empty2, {0, 0}));
  CHECK(!in_row_lattice(empty2, {1, 0}));

  // lattice from non-diagonal generators
  IntMat M = mat({{1, 2}, {3, 4}});
  CHECK(in_row_lattice(M, {4, 6}));
  CHECK(in_row_lattice(M, {0, 2}));
  CHECK(!in_row_lattice(M, {0, 1}));
}

TEST_CASE("primitive vectors") {
  CHECK(primitive_vector({mpz_class(4), mpz_class(-6), mpz_class(2)}) ==
        std::vector<mpz_class>{2, -3, 1});
  CHECK(primitive_vector({mpz_class(-3), mpz_class(6)}) == std::vector<mpz_class>{1, -2});
  CHECK(primitive_vector({mpz_class(0), mpz_class(0)}) == std::vector<mpz_class>{0, 0});
  CHECK(primitive_vector({mpz_class(0), mpz_class(-5)}) == std::vector<mpz_class>{0, 1});
}
