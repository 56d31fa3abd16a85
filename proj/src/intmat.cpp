#include "skewpbw/intmat.hpp"

namespace spbw {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  IntMat m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (c_ != o.r_) throw kernel_error("matrix product shape mismatch");
  IntMat m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const mpz_class& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.c_; ++j) m.at(i, j) += aik * o.at(k, j);
    }
  return m;
}

IntMat IntMat::transpose() const {
  IntMat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

void IntMat::append_row(const std::vector<mpz_class>& row) {
  if (r_ == 0 && c_ == 0) c_ = static_cast<int>(row.size());
  if (static_cast<int>(row.size()) != c_) throw kernel_error("appended row width mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++r_;
}

std::vector<mpz_class> IntMat::row(int r) const {
  std::vector<mpz_class> out(static_cast<size_t>(c_));
  for (int j = 0; j < c_; ++j) out[static_cast<size_t>(j)] = at(r, j);
  return out;
}

/* ------------------------------------------------------------------ */
/* Smith normal form                                                  */
/* ------------------------------------------------------------------ */

namespace {

void swap_rows(IntMat& M, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < M.cols(); ++j) std::swap(M.at(a, j), M.at(b, j));
}

void swap_cols(IntMat& M, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < M.rows(); ++i) std::swap(M.at(i, a), M.at(i, b));
}

// row[a] += k * row[b]
void add_row(IntMat& M, int a, int b, const mpz_class& k) {
  for (int j = 0; j < M.cols(); ++j) M.at(a, j) += k * M.at(b, j);
}

void add_col(IntMat& M, int a, int b, const mpz_class& k) {
  for (int i = 0; i < M.rows(); ++i) M.at(i, a) += k * M.at(i, b);
}

void negate_row(IntMat& M, int a) {
  for (int j = 0; j < M.cols(); ++j) M.at(a, j) = -M.at(a, j);
}

// Quotient with minimal-magnitude remainder, |a - q b| <= |b|/2.
mpz_class round_quot(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_class r2 = 2 * r;
  if (mpz_cmpabs(r2.get_mpz_t(), b.get_mpz_t()) > 0) q += (b > 0) ? 1 : -1;
  return q;
}

// Unimodular 2x2 mix of rows (rt, ri) of D (mirrored in T) that puts
// gcd(D[rt][col], D[ri][col]) at (rt, col) and 0 at (ri, col) in one shot.
void bezout_rows(IntMat& D, IntMat& T, int rt, int ri, int col) {
  const mpz_class a = D.at(rt, col), b = D.at(ri, col);
  if (b == 0) return;
  if (a != 0 && b % a == 0) {
    // plain reduction keeps the pivot row fixed; the full Bezout mix
    // would rotate the pair even when gcd(a, b) = a (gcdext picks s = 0)
    mpz_class q = b / a;
    add_row(D, ri, rt, -q);
    add_row(T, ri, rt, -q);
    return;
  }
  mpz_class g, s, u;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_class v = -b / g, w = a / g;  // det [[s,u],[v,w]] = (sa + ub)/g = 1
  for (int c = 0; c < D.cols(); ++c) {
    mpz_class x = D.at(rt, c), y = D.at(ri, c);
    D.at(rt, c) = s * x + u * y;
    D.at(ri, c) = v * x + w * y;
  }
  for (int c = 0; c < T.cols(); ++c) {
    mpz_class x = T.at(rt, c), y = T.at(ri, c);
    T.at(rt, c) = s * x + u * y;
    T.at(ri, c) = v * x + w * y;
  }
}

void bezout_cols(IntMat& D, IntMat& T, int ct, int cj, int row) {
  const mpz_class a = D.at(row, ct), b = D.at(row, cj);
  if (b == 0) return;
  if (a != 0 && b % a == 0) {
    mpz_class q = b / a;
    add_col(D, cj, ct, -q);
    add_col(T, cj, ct, -q);
    return;
  }
  mpz_class g, s, u;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_class v = -b / g, w = a / g;
  for (int r = 0; r < D.rows(); ++r) {
    mpz_class x = D.at(r, ct), y = D.at(r, cj);
    D.at(r, ct) = s * x + u * y;
    D.at(r, cj) = v * x + w * y;
  }
  for (int r = 0; r < T.rows(); ++r) {
    mpz_class x = T.at(r, ct), y = T.at(r, cj);
    T.at(r, ct) = s * x + u * y;
    T.at(r, cj) = v * x + w * y;
  }
}

}  // namespace

SmithResult smith_normal_form(const IntMat& A) {
  SmithResult res;
  res.D = A;
  res.U = IntMat::identity(A.rows());
  res.V = IntMat::identity(A.cols());
  IntMat& D = res.D;
  IntMat& U = res.U;
  IntMat& V = res.V;
  int n = std::min(A.rows(), A.cols());
  int t = 0;
  for (; t < n; ++t) {
    // seed the pivot with the smallest nonzero magnitude in the block
    int pr = -1, pc = -1;
    for (int i = t; i < A.rows(); ++i)
      for (int j = t; j < A.cols(); ++j) {
        if (D.at(i, j) == 0) continue;
        if (pr < 0 || mpz_cmpabs(D.at(i, j).get_mpz_t(), D.at(pr, pc).get_mpz_t()) < 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    swap_rows(D, t, pr);
    swap_rows(U, t, pr);
    swap_cols(D, t, pc);
    swap_cols(V, t, pc);
    while (true) {
      // one Bezout shot per entry; column steps can re-dirty the pivot
      // column only when the pivot strictly shrinks in the divisor order,
      // so the outer loop runs at most a divisor chain worth of times
      for (int i = t + 1; i < A.rows(); ++i) bezout_rows(D, U, t, i, t);
      for (int j = t + 1; j < A.cols(); ++j) bezout_cols(D, V, t, j, t);
      bool col_clean = true;
      for (int i = t + 1; i < A.rows(); ++i)
        if (D.at(i, t) != 0) col_clean = false;
      if (!col_clean) continue;
      // enforce divisibility of the block by the pivot
      bool fixed = false;
      for (int i = t + 1; i < A.rows() && !fixed; ++i)
        for (int j = t + 1; j < A.cols() && !fixed; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            add_row(D, t, i, 1);
            add_row(U, t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (D.at(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
  }
  res.rank = t;
  for (int i = 0; i < t; ++i) res.diag.push_back(D.at(i, i));
  return res;
}

/* ------------------------------------------------------------------ */
/* Hermite normal form                                                */
/* ------------------------------------------------------------------ */

HermiteResult hermite_normal_form(const IntMat& A) {
  HermiteResult res;
  res.H = A;
  res.U = IntMat::identity(A.rows());
  IntMat& H = res.H;
  IntMat& U = res.U;
  int r = 0;
  for (int col = 0; col < A.cols() && r < A.rows(); ++col) {
    // gcd out the column below row r with row operations
    while (true) {
      int p = -1;
      for (int i = r; i < A.rows(); ++i)
        if (H.at(i, col) != 0 && (p < 0 || mpz_cmpabs(H.at(i, col).get_mpz_t(), H.at(p, col).get_mpz_t()) < 0)) p = i;
      if (p < 0) break;
      swap_rows(H, r, p);
      swap_rows(U, r, p);
      bool cleared = true;
      for (int i = r + 1; i < A.rows(); ++i) {
        if (H.at(i, col) == 0) continue;
        mpz_class q = round_quot(H.at(i, col), H.at(r, col));
        if (q != 0) {
          add_row(H, i, r, -q);
          add_row(U, i, r, -q);
        }
        if (H.at(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (H.at(r, col) == 0) continue;
    if (H.at(r, col) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
      if (q != 0) {
        add_row(H, i, r, -q);
        add_row(U, i, r, -q);
      }
    }
    ++r;
  }
  res.rank = r;
  return res;
}

/* ------------------------------------------------------------------ */
/* kernels and solving                                                */
/* ------------------------------------------------------------------ */

std::vector<std::vector<mpz_class>> kernel_basis(const IntMat& A) {
  SmithResult s = smith_normal_form(A);
  std::vector<std::vector<mpz_class>> out;
  for (int j = s.rank; j < A.cols(); ++j) {
    std::vector<mpz_class> v(static_cast<size_t>(A.cols()));
    for (int i = 0; i < A.cols(); ++i) v[static_cast<size_t>(i)] = s.V.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<mpz_class>> solve_integer(const IntMat& A,
                                                    const std::vector<mpz_class>& b) {
  if (static_cast<int>(b.size()) != A.rows()) throw kernel_error("solve shape mismatch");
  SmithResult s = smith_normal_form(A);
  // A x = b  <=>  D z = U b with x = V z
  std::vector<mpz_class> ub(static_cast<size_t>(A.rows()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.rows(); ++j) ub[static_cast<size_t>(i)] += s.U.at(i, j) * b[static_cast<size_t>(j)];
  std::vector<mpz_class> z(static_cast<size_t>(A.cols()));
  for (int i = 0; i < A.rows(); ++i) {
    if (i < s.rank) {
      if (ub[static_cast<size_t>(i)] % s.diag[static_cast<size_t>(i)] != 0) return std::nullopt;
      z[static_cast<size_t>(i)] = ub[static_cast<size_t>(i)] / s.diag[static_cast<size_t>(i)];
    } else if (ub[static_cast<size_t>(i)] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(static_cast<size_t>(A.cols()));
  for (int i = 0; i < A.cols(); ++i)
    for (int j = 0; j < A.cols(); ++j) x[static_cast<size_t>(i)] += s.V.at(i, j) * z[static_cast<size_t>(j)];
  return x;
}

bool in_row_lattice(const IntMat& A, const std::vector<mpz_class>& v) {
  if (A.rows() == 0) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  return solve_integer(A.transpose(), v).has_value();
}

std::vector<mpz_class> primitive_vector(std::vector<mpz_class> v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  int lead = 0;
  while (v[static_cast<size_t>(lead)] == 0) ++lead;
  if (v[static_cast<size_t>(lead)] < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

}  // namespace spbw
