#include "doctest.h"

#include "../support/fans.hpp"
#include "torweight/error.hpp"
#include "torweight/flag.hpp"
#include "torweight/laurent.hpp"

#include <set>

using namespace torweight;
using namespace testfans;

namespace {

Flag fixed_flag() { return Flag{{{2, 3, 5}, {3, 5, 7}}, std::nullopt}; }

// theta in (1/m Z / Z)^k with P v_rho . theta summing to an integer vector
std::set<RatVector> brute_group(const Fan& fan, const Cone& alpha, const Cone& beta) {
  auto extra = cone_difference(beta, alpha);
  auto p = quotient_projection(fan, alpha);
  std::vector<IntVector> imgs;
  for (int r : extra) imgs.push_back(primitive(p * fan.ray(r)));
  long m = multiplicity(fan, beta).get_si();
  std::set<RatVector> out;
  std::vector<long> idx(extra.size(), 0);
  for (;;) {
    RatVector th;
    for (long i : idx) th.push_back(make_rational(i, m));
    bool ok = true;
    for (std::size_t row = 0; row < p.rows() && ok; ++row) {
      Rational s = 0;
      for (std::size_t j = 0; j < extra.size(); ++j) s += th[j] * Rational(imgs[j][row]);
      ok = is_integral(s);
    }
    if (ok) out.insert(th);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == m) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

// mu through the symbolic multivariate extraction and brute-force group
Rational mu_oracle(const Fan& fan, const TCoefficients& t, const Cone& a, const Cone& b) {
  auto extra = cone_difference(b, a);
  if (extra.empty()) return 1;
  auto group = brute_group(fan, a, b);
  auto ctx = make_cyclo_context(static_cast<unsigned long>(multiplicity(fan, b).get_si()));
  std::map<int, Rational> values;
  for (int r : extra) values[r] = t.at(b).at(r);
  CycloNumber total = 0;
  for (const auto& th : group) {
    std::vector<CycloNumber> as;
    int poles = 0;
    for (const auto& x : th) {
      as.push_back(root_of_unity(x.get_num().get_si(), x.get_den().get_ui(), ctx));
      if (x == 0) ++poles;
    }
    std::vector<LaurentSeries> fs;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      Rational c(multiplicity(fan, cone_union(a, {extra[i]})));
      fs.push_back(LaurentSeries::from_series(extra[i], factor_series(as[i], c, poles)));
    }
    total += degree_zero_term(fs, values).value;
  }
  return rational_part(total) / static_cast<long>(group.size());
}

}  // namespace

TEST_CASE("t-coefficients on the weighted projective space") {
  auto w = p1123();
  auto t = t_coefficients(w, fixed_flag());
  CHECK(t.at({0, 1, 3}).at(3) == make_rational(-5, 3));
  CHECK(t.at({0, 1}).at(0) == -1);
  for (int r = 0; r < 4; ++r) CHECK(t.at({r}).at(r) == 1);
}

TEST_CASE("t-coefficients span the flag intersection") {
  for (const auto& fan : {p2(), f1(), diag(), p1123(), p3()}) {
    auto flag = sample_flag(fan, 99);
    auto t = t_coefficients(fan, flag);
    const std::size_t n = static_cast<std::size_t>(fan.dim());
    for (const auto& c : fan.cones()) {
      if (c.size() < 2) continue;
      RatVector w(n, Rational(0));
      for (int r : c)
        for (std::size_t j = 0; j < n; ++j) w[j] += t.at(c).at(r) * Rational(fan.ray(r)[j]);
      const std::size_t m = n - c.size() + 1;
      std::vector<RatVector> rows(flag.vectors.begin(), flag.vectors.begin() + static_cast<long>(m));
      CHECK(rank(RatMatrix::from_rows(rows)) == m);
      rows.push_back(w);
      CHECK(rank(RatMatrix::from_rows(rows)) == m);
      if (m == 1) CHECK(w == flag.vectors[0]);
    }
  }
}

TEST_CASE("degenerate flags are rejected") {
  // f_1 on the wall between two cones of P^2
  Flag bad{{{1, 0}}, std::nullopt};
  CHECK_THROWS_AS(t_coefficients(p2(), bad), Error);
  Flag dep{{{1, 2, 3}, {2, 4, 6}}, std::nullopt};
  CHECK_THROWS_AS(t_coefficients(p3(), dep), Error);
}

TEST_CASE("sampled flags are reproducible") {
  auto a = sample_flag(p1123(), 5);
  auto b = sample_flag(p1123(), 5);
  CHECK(a.vectors == b.vectors);
  CHECK(a.seed == std::optional<std::uint64_t>(5));
  for (const auto& v : a.vectors)
    for (const auto& x : v) {
      CHECK(x >= -10000);
      CHECK(x <= 10000);
    }
}

TEST_CASE("group characters") {
  auto smooth = group_characters(p2(), {}, {0, 1});
  CHECK(smooth.elements.size() == 1);
  auto quad = make(2, {{1, 1}, {1, -1}}, {{0, 1}});
  auto g = group_characters(quad, {}, {0, 1});
  CHECK(g.elements.size() == 2);
  std::set<RatVector> got(g.elements.begin(), g.elements.end());
  CHECK(got == std::set<RatVector>{{0, 0}, {make_rational(1, 2), make_rational(1, 2)}});
  auto ctx = make_cyclo_context(2);
  for (const auto& row : g.characters(ctx)) CHECK(row[0] == row[1]);
  auto w = group_characters(p1123(), {}, {0, 1, 3});
  CHECK(w.elements.size() == 3);
  CHECK(w.exponent == 3);
}

TEST_CASE("group characters match brute force") {
  for (const auto& fan : {diag(), p112(), example2d(), p1123()})
    for (const auto& a : fan.cones())
      for (const auto& b : fan.star(a)) {
        auto g = group_characters(fan, a, b);
        std::set<RatVector> got(g.elements.begin(), g.elements.end());
        if (g.extra.empty()) continue;
        CHECK(got == brute_group(fan, a, b));
        CHECK(Rational(static_cast<long>(got.size())) == relative_multiplicity(fan, a, b));
      }
}

TEST_CASE("riemann-roch matrix of the weighted projective space") {
  auto w = p1123();
  auto m = mu_matrix(w, fixed_flag());
  for (const auto& c : w.cones()) CHECK(m.mu(c, c) == 1);
  for (int r = 0; r < 4; ++r) CHECK(m.mu({}, {r}) == make_rational(1, 2));
  CHECK(m.mu({}, {0, 3}) == make_rational(-5, 48));
  CHECK(m.mu({0}, {0, 1, 2}) == make_rational(79, 180));
  auto t = t_coefficients(w, fixed_flag());
  for (const auto& a : w.cones())
    for (const auto& b : w.star(a)) CHECK(m.mu(a, b) == mu_oracle(w, t, a, b));
}

TEST_CASE("mu oracle agreement on other fans") {
  for (const auto& fan : {diag(), p112(), example2d(), p3()}) {
    auto flag = sample_flag(fan, 1234);
    auto m = mu_matrix(fan, flag);
    auto t = t_coefficients(fan, flag);
    for (const auto& a : fan.cones())
      for (const auto& b : fan.star(a)) CHECK(m.mu(a, b) == mu_oracle(fan, t, a, b));
  }
}

TEST_CASE("nu inverts mu") {
  auto line = p1();
  auto m1 = mu_matrix(line, Flag{{{1}}, std::nullopt});
  nu_matrix(m1);
  CHECK(m1.nu({}, {0}) == make_rational(-1, 2));
  CHECK(m1.nu({}, {1}) == make_rational(-1, 2));
  for (const auto& fan : {p1123(), example2d(), diag()}) {
    auto m = mu_matrix(fan, sample_flag(fan, 8));
    nu_matrix(m);
    for (const auto& a : fan.cones()) {
      CHECK(m.nu(a, a) == 1);
      for (const auto& b : fan.cones()) {
        Rational s = 0;
        for (const auto& g : fan.cones()) s += m.mu(a, g) * m.nu(g, b);
        CHECK(s == (a == b ? 1 : 0));
      }
    }
  }
}

TEST_CASE("divisor monomials") {
  auto a = p2();
  auto flag = sample_flag(a, 3);
  auto one = divisor_monomial_expand(a, flag, {{0, 1}});
  CHECK(one.size() == 1);
  CHECK(one.at({0}) == 1);
  auto sq = divisor_monomial_expand(a, flag, {{0, 2}});
  Rational total = 0;
  for (auto& [c, v] : sq) total += v;
  CHECK(total == 1);
  auto h = f1();
  auto e = divisor_monomial_expand(h, sample_flag(h, 4), {{1, 2}});
  Rational deg = 0;
  for (auto& [c, v] : e) deg += v;
  CHECK(deg == -1);
  auto f = divisor_monomial_expand(h, sample_flag(h, 4), {{3, 2}});
  Rational fiber = 0;
  for (auto& [c, v] : f) fiber += v;
  CHECK(fiber == 1);
  auto mixed = divisor_monomial_expand(a, flag, {{0, 1}, {1, 1}});
  CHECK(mixed.size() == 1);
  CHECK(mixed.at({0, 1}) == 1);
}
