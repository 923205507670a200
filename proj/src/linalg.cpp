#include "torweight/linalg.hpp"

#include "torweight/error.hpp"

#include <algorithm>

namespace torweight {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

namespace {

// Quotient rounding to nearest keeps remainders at most half the pivot.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer twice = 2 * a + b;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), Integer(2 * b).get_mpz_t());
  return q;
}

void row_axpy(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  // row_target -= q * row_source
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(source, j) != 0) m(target, j) -= q * m(source, j);
}

void col_axpy(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, source) != 0) m(i, target) -= q * m(i, source);
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = nearest_quotient(a(i, t), a(t, t));
        row_axpy(a, i, t, q);
        row_axpy(u, i, t, q);
        if (a(i, t) != 0) {
          a.swap_rows(t, i);
          u.swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = nearest_quotient(a(t, j), a(t, t));
        col_axpy(a, j, t, q);
        col_axpy(v, j, t, q);
        if (a(t, j) != 0) {
          a.swap_cols(t, j);
          v.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // divisibility of the trailing block
      bool bad = false;
      for (std::size_t i = t + 1; i < rows && !bad; ++i)
        for (std::size_t j = t + 1; j < cols && !bad; ++j) {
          Integer r;
          mpz_tdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), a(t, t).get_mpz_t());
          if (r != 0) {
            row_axpy(a, t, i, Integer(-1));
            row_axpy(u, t, i, Integer(-1));
            bad = true;
          }
        }
      if (!bad) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

Integer lattice_index(const IntMatrix& rows) {
  auto snf = smith_normal_form(rows);
  if (snf.rank() != rows.rows()) fail("DependentRows", "lattice_index: rows are linearly dependent");
  Integer p = 1;
  for (const auto& d : snf.diagonal())
    if (d != 0) p *= d;
  return p;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(rows);
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, j) != 0 && (best == rows || abs(h(i, j)) < abs(h(best, j)))) best = i;
      if (best == rows) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool others = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, j) == 0) continue;
        Integer q = nearest_quotient(h(i, j), h(r, j));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h(i, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (h(r, j) == 0) continue;
    if (h(r, j) < 0) {
      for (std::size_t k = 0; k < cols; ++k) h(r, k) = -h(r, k);
      for (std::size_t k = 0; k < rows; ++k) u(r, k) = -u(r, k);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(r, j).get_mpz_t());
      if (q != 0) {
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
      }
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(u), std::move(h), r, std::move(pivots)};
}

std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t p = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (m(i, j) != 0) {
        p = i;
        break;
      }
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, j);
    for (std::size_t k = j; k < m.cols(); ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, j) == 0) continue;
      Rational f = m(i, j);
      for (std::size_t k = j; k < m.cols(); ++k)
        if (m(r, k) != 0) m(i, k) -= f * m(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

LinearSolution solve_rational(const RatMatrix& a, const RatVector& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  RatMatrix aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }
  auto pivots = row_reduce(aug);
  LinearSolution sol;
  if (!pivots.empty() && pivots.back() == cols) return sol;
  sol.consistent = true;
  sol.particular.assign(cols, Rational(0));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug(r, cols);
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector k(cols, Rational(0));
    k[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, f);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  return solve_rational(m, RatVector(m.rows(), Rational(0))).kernel;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix c = m;
  return row_reduce(c).size();
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail("ShapeMismatch", "determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = n;
    for (std::size_t i = j; i < n; ++i)
      if (a(i, j) != 0) {
        p = i;
        break;
      }
    if (p == n) return 0;
    if (p != j) {
      a.swap_rows(p, j);
      det = -det;
    }
    det *= a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (a(i, j) == 0) continue;
      Rational f = a(i, j) / a(j, j);
      for (std::size_t k = j; k < n; ++k) a(i, k) -= f * a(j, k);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail("ShapeMismatch", "inverse of a non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail("Singular", "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  RatMatrix inv = inverse(to_rational(m));
  IntMatrix out(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      if (!is_integral(inv(i, j))) fail("NotUnimodular", "matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

IntegerSolution solve_integer(const IntMatrix& a, const IntVector& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) fail("DimensionMismatch", "right-hand side has wrong length");
  // column echelon form A V = H, entries left of each pivot reduced mod it
  IntMatrix h = a;
  IntMatrix v = IntMatrix::identity(cols);
  std::vector<std::size_t> pivot_row;
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows && r < cols; ++i) {
    for (;;) {
      std::size_t p = cols;
      for (std::size_t j = r; j < cols; ++j)
        if (h(i, j) != 0 && (p == cols || abs(h(i, j)) < abs(h(i, p)))) p = j;
      if (p == cols) break;
      h.swap_cols(r, p);
      v.swap_cols(r, p);
      bool done = true;
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        Integer q = nearest_quotient(h(i, j), h(i, r));
        col_axpy(h, j, r, q);
        col_axpy(v, j, r, q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (r == cols || h(i, r) == 0) continue;
    if (h(i, r) < 0) {
      for (std::size_t k = 0; k < rows; ++k) h(k, r) = -h(k, r);
      for (std::size_t k = 0; k < cols; ++k) v(k, r) = -v(k, r);
    }
    for (std::size_t j = 0; j < r; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, r).get_mpz_t());
      if (q != 0) {
        col_axpy(h, j, r, q);
        col_axpy(v, j, r, q);
      }
    }
    pivot_row.push_back(i);
    ++r;
  }
  // H_P is the lower triangular block on the pivot rows; w = e_k H_P^{-1}
  // (spread over those rows) gives w A V = e_k.
  auto pivot_inverse_row = [&](std::size_t k) {
    RatVector z(r, Rational(0));
    z[k] = Rational(1) / Rational(h(pivot_row[k], k));
    for (std::size_t m = k; m-- > 0;) {
      Rational s = 0;
      for (std::size_t l = m + 1; l <= k; ++l) s += z[l] * Rational(h(pivot_row[l], m));
      z[m] = -s / Rational(h(pivot_row[m], m));
    }
    return z;
  };
  IntegerSolution sol;
  IntVector y(cols, Integer(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer res = b[i];
    for (std::size_t j = 0; j < std::min(k, r); ++j) res -= h(i, j) * y[j];
    const bool is_pivot = k < r && pivot_row[k] == i;
    Integer rem = 0;
    if (is_pivot) mpz_fdiv_qr(y[k].get_mpz_t(), rem.get_mpz_t(), res.get_mpz_t(), h(i, k).get_mpz_t());
    if (is_pivot ? rem == 0 : res == 0) {
      if (is_pivot) ++k;
      continue;
    }
    RatVector w(rows, Rational(0));
    if (is_pivot) {
      auto z = pivot_inverse_row(k);
      for (std::size_t l = 0; l <= k; ++l) w[pivot_row[l]] = z[l];
      sol.modulus = h(i, k);
    } else {
      // row i is a rational combination of the pivot rows above it
      w[i] = 1;
      for (std::size_t l = 0; l < k; ++l) {
        auto z = pivot_inverse_row(l);
        for (std::size_t m = 0; m <= l; ++m) w[pivot_row[m]] -= Rational(h(i, l)) * z[m];
      }
      Rational wb = 0;
      for (std::size_t l = 0; l < rows; ++l) wb += w[l] * Rational(b[l]);
      for (auto& x : w) x /= 2 * wb;
      sol.modulus = 0;
    }
    sol.certificate = std::move(w);
    return sol;
  }
  sol.solvable = true;
  sol.particular = v * y;
  for (std::size_t j = r; j < cols; ++j) sol.kernel.push_back(v.col(j));
  return sol;
}

std::vector<RatVector> fractional_solutions(const IntMatrix& b) {
  const std::size_t k = b.cols();
  auto snf = smith_normal_form(b);
  auto d = snf.diagonal();
  if (snf.rank() != k) internal_fail("DependentRows", "generators are linearly dependent");
  // b lambda integral iff W^{-1} lambda lies in prod (1/s_i) Z
  std::vector<RatVector> out;
  std::vector<Integer> j(k, Integer(0));
  for (;;) {
    RatVector lambda(k, Rational(0));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i)
        if (j[i] != 0) {
          Rational q(Integer(snf.V(r, i) * j[i]), d[i]);
          q.canonicalize();
          lambda[r] += q;
        }
      lambda[r] -= Rational(floor(lambda[r]));
    }
    out.push_back(std::move(lambda));
    std::size_t i = 0;
    while (i < k) {
      if (++j[i] < d[i]) break;
      j[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return out;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) fail("ZeroVector", "primitive: zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i] * l).get_num();
  return primitive(w);
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace torweight
