#include "doctest.h"

#include "torweight/error.hpp"
#include "torweight/linalg.hpp"
#include "torweight/polyhedra.hpp"

#include <random>

using namespace torweight;

namespace {

IntMatrix imat(std::vector<std::vector<long>> rows) {
  std::vector<IntVector> r;
  for (auto& row : rows) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return IntMatrix::from_rows(r);
}

bool is_smith_diagonal(const IntMatrix& s) {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j && s(i, j) != 0) return false;
      if (i == j) d.push_back(s(i, j));
    }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) return false;
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  auto s = smith_normal_form(imat({{2, 4}, {6, 8}}));
  CHECK(s.diagonal() == std::vector<Integer>{2, 4});
  auto u = smith_normal_form(imat({{1, 1}, {0, 1}}));
  CHECK(u.diagonal() == std::vector<Integer>{1, 1});
  auto z = smith_normal_form(imat({{0, 0}, {0, 0}}));
  CHECK(z.rank() == 0);
}

TEST_CASE("smith form property on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 13) - 6;
    auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.S);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(is_smith_diagonal(s.S));
    if (r == c) {
      Integer prod = 1;
      for (auto& d : s.diagonal()) prod *= d;
      CHECK(prod == abs(determinant(m)));
    }
  }
}

TEST_CASE("lattice index") {
  CHECK(lattice_index(imat({{1, 1}, {1, -2}})) == 3);
  CHECK(lattice_index(imat({{2, 0, 0}})) == 2);
  CHECK(lattice_index(imat({{1, 2}, {0, 2}})) == 2);
  CHECK_THROWS_AS(lattice_index(imat({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("hermite form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = static_cast<long>(rng() % 11) - 5;
    auto h = hermite_normal_form(m);
    CHECK(h.U * m == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    for (std::size_t k = 0; k < h.rank; ++k) {
      auto pc = h.pivot_cols[k];
      CHECK(h.H(k, pc) > 0);
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(h.H(i, pc) >= 0);
        CHECK(h.H(i, pc) < h.H(k, pc));
      }
    }
  }
}

TEST_CASE("rational solve and kernel") {
  RatMatrix a = to_rational(imat({{1, 2, 3}, {2, 4, 6}}));
  auto sol = solve_rational(a, {Rational(1), Rational(2)});
  CHECK(sol.consistent);
  CHECK(sol.kernel.size() == 2);
  CHECK(a * sol.particular == RatVector{1, 2});
  for (auto& k : sol.kernel) CHECK(a * k == RatVector{0, 0});
  CHECK_FALSE(solve_rational(a, {Rational(1), Rational(3)}).consistent);
  CHECK(determinant(to_rational(imat({{2, 1}, {1, 1}}))) == 1);
  CHECK_THROWS_AS(inverse(a), Error);
}

namespace {

void check_certificate(const IntMatrix& a, const IntVector& b, const IntegerSolution& s) {
  REQUIRE(s.certificate.size() == a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational x = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) x += s.certificate[i] * Rational(a(i, j));
    CHECK(is_integral(x));
  }
  Rational wb = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) wb += s.certificate[i] * Rational(b[i]);
  CHECK_FALSE(is_integral(wb));
}

}  // namespace

TEST_CASE("integer solve with certificate") {
  IntMatrix a = imat({{2, 0}, {0, 3}});
  auto ok = solve_integer(a, {Integer(4), Integer(9)});
  CHECK(ok.solvable);
  CHECK(a * ok.particular == IntVector{4, 9});
  auto bad = solve_integer(a, {Integer(1), Integer(0)});
  CHECK_FALSE(bad.solvable);
  CHECK(bad.modulus == 2);
  check_certificate(a, {Integer(1), Integer(0)}, bad);
  auto wrong = solve_integer(imat({{1, 1}, {2, 2}}), {Integer(1), Integer(3)});
  CHECK_FALSE(wrong.solvable);
  CHECK(wrong.modulus == 0);
  check_certificate(imat({{1, 1}, {2, 2}}), {Integer(1), Integer(3)}, wrong);
}

TEST_CASE("integer solve keeps entries small") {
  // relation matrix on which a plain Smith reduction overflows to
  // thousands of bits
  IntMatrix a = imat({{7, -5, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                      {6, -1, -4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                      {7, 0, 0, -5, 4, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                      {10, 0, 0, -8, 9, 7, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 5, 0, 0, -2, -3, 1, -5, 0, 0, 0, 0, 0},
                      {0, 0, 0, 6, 0, 0, -5, -1, -4, -7, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, -2, 0, 0, 0, 5, 1, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, -5, 0, 0, 0, 6, 8, 0, 0, 0},
                      {0, -5, 0, 0, -4, 0, 0, 3, 0, 0, 0, 0, -8, 1, 0},
                      {0, 8, 0, 0, 11, 0, 0, -5, 0, 0, 0, 0, 9, -7, 0},
                      {0, 0, 1, 0, 0, 6, 0, 0, 1, 0, -5, 0, -8, 0, -13},
                      {0, 0, 2, 0, 0, 1, 0, 0, -2, 0, -3, 0, 3, 0, -1},
                      {0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 5, 0, -7, 3},
                      {0, 0, 0, 0, 0, 0, 0, 0, 0, 7, 0, 8, 0, -11, -2}});
  auto sol = solve_integer(a, IntVector(14, Integer(0)));
  REQUIRE(sol.solvable);
  CHECK(sol.kernel.size() == 15 - rank(to_rational(a)));
  for (const auto& k : sol.kernel) {
    CHECK(a * k == IntVector(14, Integer(0)));
    for (const auto& x : k) CHECK(mpz_sizeinbase(x.get_mpz_t(), 2) < 64);
  }
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(IntVector{4, -6}) == IntVector{2, -3});
  CHECK(primitive(RatVector{Rational(1, 2), Rational(1, 3)}) == IntVector{3, 2});
  CHECK_THROWS_AS(primitive(IntVector{0, 0}), Error);
}

TEST_CASE("fourier motzkin feasibility") {
  using K = LinearConstraint::Kind;
  // x >= 0, y >= 0, x + y <= 1
  std::vector<LinearConstraint> tri{{{1, 0}, 0, K::ge}, {{0, 1}, 0, K::ge}, {{-1, -1}, -1, K::ge}};
  CHECK(feasible(2, tri));
  CHECK(polyhedron_dimension(2, tri) == 2);
  auto degenerate = tri;
  degenerate.push_back({{-1, -1}, 0, K::ge});
  CHECK(polyhedron_dimension(2, degenerate) == 0);
  auto strict = degenerate;
  strict[0].kind = K::gt;
  CHECK_FALSE(feasible(2, strict));
  auto segment = tri;
  segment.push_back({{1, 0}, 0, K::eq});
  CHECK(polyhedron_dimension(2, segment) == 1);
  CHECK(projected_dimension(2, segment, {{1, 0}}) == 0);
  CHECK(projected_dimension(2, segment, {{0, 1}}) == 1);
  CHECK(polyhedron_dimension(2, {{{1, 0}, 1, K::ge}, {{-1, 0}, 0, K::ge}}) == -1);
}
