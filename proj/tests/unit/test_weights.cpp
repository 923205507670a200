#include "doctest.h"

#include "../support/errors.hpp"
#include "../support/fans.hpp"
#include "torweight/error.hpp"
#include "torweight/weights.hpp"

using namespace torweight;
using namespace testfans;

namespace {

Weight constant(const Fan& fan, long c) {
  Weight g;
  for (const auto& a : fan.cones()) g.set(a, c);
  return g;
}

Weight from_keys(std::initializer_list<std::pair<const char*, long>> vals) {
  Weight g;
  for (auto& [k, v] : vals) g.set(parse_cone_key(k), v);
  return g;
}

// diag(): 0 = (1,1), 1 = (-1,1), 2 = (-1,-1), 3 = (1,-1)
Weight diag_w2() { return from_keys({{"", 2}, {"0", 1}, {"1", -1}, {"2", 1}, {"3", -1}}); }
Weight diag_w3() { return from_keys({{"", 2}}); }
Weight diag_w4() { return from_keys({{"", -1}, {"1", 1}, {"3", 1}}); }

MinkowskiWeight mw(int k, const std::map<Cone, Rational>& v) {
  MinkowskiWeight f;
  f.codim = k;
  f.values = v;
  return f;
}

std::vector<Fan> simplicial_corpus() {
  return {p1(), p2(), p1xp1(), f1(), diag(), p112(), example2d(), bl_p2(), p1123(), p3()};
}

}  // namespace

TEST_CASE("constant one is a weight") {
  for (const auto& fan : simplicial_corpus()) {
    auto v = is_grothendieck_weight(fan, constant(fan, 1), sample_flag(fan, 3));
    CHECK(v.ok);
    CHECK(v.violations.empty());
    CHECK_FALSE(v.refined);
  }
  auto c = cube();
  auto v = is_grothendieck_weight(c, constant(c, 1), sample_flag(c, 3));
  CHECK(v.ok);
  CHECK(v.refined);
}

TEST_CASE("weights on the diagonal square fan") {
  auto fan = diag();
  auto fl = sample_flag(fan, 11);
  CHECK(is_grothendieck_weight(fan, diag_w2(), fl).ok);
  CHECK(is_grothendieck_weight(fan, from_keys({{"", 1}}), fl).ok);
  CHECK(is_grothendieck_weight(fan, diag_w3(), fl).ok);
  CHECK(is_grothendieck_weight(fan, diag_w4(), fl).ok);

  auto bad = is_grothendieck_weight(fan, from_keys({{"0", 1}}), fl);
  CHECK_FALSE(bad.ok);
  REQUIRE_FALSE(bad.violations.empty());
  for (const auto& x : bad.violations) CHECK(fan.codim(x.alpha) == 2);
}

TEST_CASE("rational values need the flag") {
  auto fan = p1();
  auto fl = sample_flag(fan, 1);
  Weight g = constant(fan, 1);
  g.set({}, Rational(1, 2));
  // g(0) is free on P1, but 1/2 is not an integer
  auto v = is_grothendieck_weight(fan, g, fl);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.integral);
  CHECK(v.violations.empty());
  g.rational = true;
  CHECK(is_grothendieck_weight(fan, g, fl).ok);
}

TEST_CASE("membership needs a complete fan") {
  auto fan = quadrant();
  CHECK(code_of([&] { is_grothendieck_weight(fan, constant(fan, 1), Flag{{{1, 2}}, std::nullopt}); }) == "NotComplete");
}

TEST_CASE("minkowski weights on P2") {
  auto fan = p2();
  std::map<Cone, Rational> ones;
  for (const auto& r : fan.cones_of_dim(1)) ones[r] = 1;
  CHECK(is_minkowski_weight(fan, mw(1, ones)));
  CHECK(is_minkowski_weight(fan, mw(1, {})));
  CHECK_FALSE(is_minkowski_weight(fan, mw(1, {{{0}, 1}})));
  // codim 0: constants
  std::map<Cone, Rational> top;
  for (const auto& m : fan.maximal_cones()) top[m] = 3;
  CHECK(is_minkowski_weight(fan, mw(0, top)));
  top[fan.maximal_cones().front()] = 2;
  CHECK_FALSE(is_minkowski_weight(fan, mw(0, top)));
}

TEST_CASE("minkowski weights on a cone that is not complete") {
  auto fan = quadrant();
  // the point class is zero on the affine plane
  CHECK_FALSE(is_minkowski_weight(fan, mw(0, {{{0, 1}, 1}})));
  CHECK(is_minkowski_weight(fan, mw(1, {})));
  // divisors of characters are still zero on the affine plane
  CHECK_FALSE(is_minkowski_weight(fan, mw(1, {{{0}, 2}})));
}

TEST_CASE("closed form criteria") {
  auto p = p1();
  auto g = from_keys({{"0", 5}, {"1", 5}, {"", 7}});
  CHECK(low_dim_criteria(p, g).ok);
  auto h = from_keys({{"0", 5}, {"1", 4}});
  CHECK_FALSE(low_dim_criteria(p, h).ok);

  auto fan = diag();
  CHECK(low_dim_criteria(fan, constant(fan, 1)).ok);
  CHECK(low_dim_criteria(fan, diag_w2()).ok);
  CHECK(low_dim_criteria(fan, diag_w3()).ok);
  CHECK(low_dim_criteria(fan, diag_w4()).ok);

  auto k = constant(fan, 1);
  k.set({0, 1}, 2);
  auto v = low_dim_criteria(fan, k);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.constant_on_maximal);
  auto ray = low_dim_criteria(fan, from_keys({{"0", 1}}));
  CHECK_FALSE(ray.ok);
  CHECK_FALSE(ray.ray_condition);

  CHECK(low_dim_criteria(p3(), constant(p3(), 1)).ok);
  CHECK(code_of([&] { low_dim_criteria(singular4(), Weight{}); }) == "DimensionTooLarge");
}

TEST_CASE("closed form criteria agree with the relations") {
  // candidates: integer combinations of lifted Minkowski basis elements
  // plus a few functions that are not weights
  int checked = 0;
  for (const auto& fan : simplicial_corpus()) {
    auto rr = rr_matrix(fan, sample_flag(fan, 5));
    std::vector<Weight> cands = {constant(fan, 1), constant(fan, 0)};
    for (int k = 0; k <= fan.dim(); ++k)
      for (const auto& f : minkowski_basis(fan, k)) {
        auto l = lift_minkowski(fan, mw(k, f), rr);
        if (l.weight) cands.push_back(*l.weight);
      }
    for (const auto& c : fan.cones()) {
      Weight g = constant(fan, 1);
      g.set(c, 2);
      cands.push_back(g);
    }
    for (const auto& g : cands) {
      CAPTURE(fan.dim());
      CHECK(low_dim_criteria(fan, g).ok == is_grothendieck_weight(fan, g, rr).ok);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("membership does not depend on the flag") {
  for (const auto& fan : {diag(), p112(), example2d(), p1123()}) {
    std::vector<Weight> cands = {constant(fan, 1)};
    for (const auto& c : fan.cones()) {
      Weight g;
      g.set(c, 1);
      cands.push_back(g);
    }
    cands.push_back(constant(fan, 0));
    for (const auto& g : cands) {
      bool first = is_grothendieck_weight(fan, g, sample_flag(fan, 1)).ok;
      for (std::uint64_t seed : {2, 3, 4}) CHECK(is_grothendieck_weight(fan, g, sample_flag(fan, seed)).ok == first);
    }
  }
}

TEST_CASE("the map T on P1") {
  auto fan = p1();
  auto rr = rr_matrix(fan, sample_flag(fan, 1));
  auto g = rr_map_T(fan, mw(0, {{{0}, 1}, {{1}, 1}}), rr);
  CHECK(g == constant(fan, 1));
  CHECK_FALSE(g.rational);
  CHECK(rr_map_T(fan, mw(0, {}), rr) == Weight{});
  CHECK(code_of([&] { rr_map_T(fan, mw(1, {{{0}, 1}}), rr); }) == "WrongCodimension");
}

TEST_CASE("the map T reads a column of mu") {
  auto fan = p1123();
  auto rr = rr_matrix(fan, Flag{{{2, 3, 5}, {3, 5, 7}}, std::nullopt});
  const Cone s = {0, 1, 2};
  auto g = rr_map_T(fan, mw(0, {{s, 1}}), rr);
  for (const auto& c : fan.cones()) {
    CAPTURE(cone_key(c));
    CHECK(g.at(c) == (is_subset(c, s) ? rr.mu(c, s) : Rational(0)));
  }
  CHECK(g.at(s) == 1);
}

TEST_CASE("T restricts to f and lands in the weights") {
  for (const auto& fan : simplicial_corpus()) {
    auto rr = rr_matrix(fan, sample_flag(fan, 9));
    for (int k = 0; k <= fan.dim(); ++k)
      for (const auto& vals : minkowski_basis(fan, k)) {
        auto f = mw(k, vals);
        REQUIRE(is_minkowski_weight(fan, f));
        auto g = rr_map_T(fan, f, rr);
        for (const auto& c : fan.cones()) {
          if (fan.codim(c) < k) CHECK(g.at(c) == 0);
          if (fan.codim(c) == k) CHECK(g.at(c) == f.at(c));
        }
        Weight q = g;
        q.rational = true;
        CHECK(is_grothendieck_weight(fan, q, rr).ok);
        auto parts = rr_inverse_image(fan, q, rr);
        REQUIRE(parts.size() == static_cast<std::size_t>(fan.dim() + 1));
        for (int j = 0; j <= fan.dim(); ++j) {
          if (j == k)
            CHECK(parts[j].values == f.values);
          else
            CHECK(parts[j].values.empty());
        }
      }
  }
}

TEST_CASE("inverse image") {
  auto p = p1();
  auto rp = rr_matrix(p, sample_flag(p, 1));
  auto parts = rr_inverse_image(p, constant(p, 1), rp);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].values.size() == 2);
  CHECK(parts[0].at({0}) == 1);
  CHECK(parts[1].values.empty());
  for (const auto& f : rr_inverse_image(p, Weight{}, rp)) CHECK(f.values.empty());

  auto fan = diag();
  auto rr = rr_matrix(fan, sample_flag(fan, 2));
  auto w = diag_w2();
  auto comps = rr_inverse_image(fan, w, rr);
  Weight sum;
  for (const auto& f : comps) {
    CHECK(is_minkowski_weight(fan, f));
    auto t = rr_map_T(fan, f, rr);
    for (const auto& c : fan.cones()) sum.set(c, sum.at(c) + t.at(c));
  }
  CHECK(sum == w);
  CHECK(code_of([&] { rr_inverse_image(fan, from_keys({{"0", 1}}), rr); }) == "NotAWeight");
}

TEST_CASE("pullback to a refinement") {
  auto fan = p2();
  Refinement id{fan, {}};
  for (const auto& c : fan.cones()) id.cone_map[c] = c;
  auto w = from_keys({{"", 3}, {"0", 1}, {"1,2", -2}});
  CHECK(pullback_refinement(w, id) == w);

  auto big = bl_p2();
  Refinement blow{big, {}};
  for (const auto& c : big.cones()) {
    Cone s;
    for (const auto& d : fan.cones())
      if (s.empty() || d.size() < s.size()) {
        bool all = true;
        for (int r : c) {
          RatVector x;
          for (const auto& e : big.ray(r)) x.emplace_back(e);
          if (!cone_contains(fan.rays(), d, x, false)) all = false;
        }
        if (all) s = d;
      }
    blow.cone_map[c] = s;
  }
  CHECK(pullback_refinement(constant(fan, 1), blow) == constant(big, 1));

  // singular fan: membership is the same before and after refining
  auto q = p112();
  auto ref = smooth_refine(q);
  CHECK(ref.fan.smooth());
  auto rq = rr_matrix(q, sample_flag(q, 4));
  auto rf = rr_matrix(ref.fan, sample_flag(ref.fan, 4));
  std::vector<Weight> cands = {constant(q, 1)};
  for (int k = 0; k <= 2; ++k)
    for (const auto& f : minkowski_basis(q, k)) {
      auto l = lift_minkowski(q, mw(k, f), rq);
      REQUIRE(l.weight);
      cands.push_back(*l.weight);
    }
  for (const auto& c : q.cones()) {
    Weight g;
    g.set(c, 1);
    cands.push_back(g);
  }
  for (const auto& g : cands)
    CHECK(is_grothendieck_weight(ref.fan, pullback_refinement(g, ref), rf).ok ==
          is_grothendieck_weight(q, g, rq).ok);
}

TEST_CASE("extension by zero") {
  auto fan = p2();
  auto sub = make(2, {{0, 1}, {-1, -1}}, {{0, 1}});
  auto g = pushforward_open(sub, constant(sub, 1), fan);
  for (const auto& c : fan.cones()) CHECK(g.at(c) == (is_subset(c, Cone{1, 2}) ? 1 : 0));
  auto off = make(2, {{1, 1}, {0, 1}}, {{0, 1}});
  CHECK(code_of([&] { pushforward_open(off, constant(off, 1), fan); }) == "NotASubfan");
}

TEST_CASE("integral lifts") {
  auto fan = p2();
  auto rr = rr_matrix(fan, sample_flag(fan, 1));
  auto zero = lift_minkowski(fan, mw(1, {}), rr);
  REQUIRE(zero.weight);
  CHECK(*zero.weight == Weight{});

  std::map<Cone, Rational> ones;
  for (const auto& r : fan.cones_of_dim(1)) ones[r] = 1;
  auto l = lift_minkowski(fan, mw(1, ones), rr);
  REQUIRE(l.weight);
  CHECK(l.weight->integral());
  CHECK(is_grothendieck_weight(fan, *l.weight, rr).ok);
  for (const auto& c : fan.cones()) {
    if (fan.codim(c) == 0) CHECK(l.weight->at(c) == 0);
    if (fan.codim(c) == 1) CHECK(l.weight->at(c) == 1);
  }
}

TEST_CASE("a weight with no integral lift") {
  auto fan = singular4();
  CHECK(fan.complete());
  CHECK_FALSE(fan.smooth());
  auto f = mw(2, {});
  for (auto [k, v] : std::initializer_list<std::pair<const char*, long>>{
           {"0,1", 16}, {"0,3", -1}, {"0,4", 17}, {"0,5", -2}, {"0,6", -1}, {"1,2", 5}, {"1,3", -2},
           {"1,5", 1}, {"1,6", 1}, {"2,3", -1}, {"2,4", 7}, {"3,4", -3}, {"4,5", 1}, {"4,6", 1}})
    f.values[parse_cone_key(k)] = v;
  REQUIRE(is_minkowski_weight(fan, f));

  auto twice = f;
  for (auto& [c, v] : twice.values) v *= 2;
  std::map<Cone, Rational> first;
  for (std::uint64_t seed : {1, 2, 3}) {
    auto rr = rr_matrix(fan, sample_flag(fan, seed));
    auto l = lift_minkowski(fan, f, rr);
    CHECK_FALSE(l.weight);
    CHECK(l.modulus == 2);
    if (seed == 1) first = l.certificate;
    CHECK(l.certificate == first);

    // the certificate: integral on codim > 2, not integral on f
    Rational on_f = 0;
    for (const auto& [c, v] : l.certificate) {
      CHECK(fan.codim(c) >= 2);
      if (fan.codim(c) > 2) CHECK(is_integral(v));
      on_f += v * f.at(c);
    }
    CHECK_FALSE(is_integral(on_f));
    // and it kills every rational weight vanishing in codim < 2, which are
    // spanned by the T images of Minkowski weights of codim >= 2
    for (int k = 2; k <= 4; ++k)
      for (const auto& vals : minkowski_basis(fan, k)) {
        auto t = rr_map_T(fan, mw(k, vals), rr);
        Rational s = 0;
        for (const auto& [c, v] : l.certificate) s += v * t.at(c);
        CHECK(s == 0);
      }

    auto l2 = lift_minkowski(fan, twice, rr);
    REQUIRE(l2.weight);
    CHECK(l2.weight->integral());
    CHECK(is_grothendieck_weight(fan, *l2.weight, rr).ok);
  }
}

TEST_CASE("filtration level") {
  auto fan = diag();
  CHECK(filtration_level(fan, constant(fan, 1)) == 0);
  CHECK(filtration_level(fan, from_keys({{"", 1}})) == 2);
  CHECK(filtration_level(fan, diag_w2()) == 1);
  CHECK(filtration_level(fan, Weight{}) == 3);
}
