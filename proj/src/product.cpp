#include "torweight/product.hpp"

#include "torweight/error.hpp"
#include "torweight/linalg.hpp"
#include "torweight/polyhedra.hpp"
#include "torweight/random.hpp"

namespace torweight {

namespace {

RatMatrix span_matrix(const std::vector<IntVector>& rays, const Cone& a, const Cone& b, std::size_t n) {
  RatMatrix m(a.size() + b.size(), n);
  std::size_t i = 0;
  for (const Cone* c : {&a, &b})
    for (int r : *c) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rays[static_cast<std::size_t>(r)][j];
      ++i;
    }
  return m;
}

bool in_proper_span(const std::vector<IntVector>& rays, const Cone& a, const Cone& b, const RatVector& v) {
  const std::size_t n = v.size();
  RatMatrix m = span_matrix(rays, a, b, n);
  const std::size_t r = rank(m);
  if (r == n) return false;
  RatMatrix w(m.rows() + 1, n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
  for (std::size_t j = 0; j < n; ++j) w(m.rows(), j) = v[j];
  return rank(w) == r;
}

// Z-basis of span(c) meet N
std::vector<IntVector> saturated_basis(const Fan& fan, const Cone& c) {
  auto p = quotient_projection(fan, c);
  return solve_integer(p, IntVector(p.rows(), Integer(0))).kernel;
}

// [N : N_a + N_b]; the sum must have full rank
Integer sum_index(const Fan& fan, const Cone& a, const Cone& b) {
  auto rows = saturated_basis(fan, a);
  for (auto& x : saturated_basis(fan, b)) rows.push_back(std::move(x));
  auto snf = smith_normal_form(IntMatrix::from_rows(rows, static_cast<std::size_t>(fan.dim())));
  if (snf.rank() != static_cast<std::size_t>(fan.dim()))
    internal_fail("NonTransversal", "spans of " + cone_key(a) + " and " + cone_key(b) + " do not fill N");
  Integer p = 1;
  for (const auto& d : snf.diagonal())
    if (d != 0) p *= d;
  return p;
}

void check_vector(const Fan& fan, const RatVector& v) {
  if (v.size() != static_cast<std::size_t>(fan.dim()))
    fail("DimensionMismatch", "displacement has " + std::to_string(v.size()) + " entries, fan has dimension " +
                                  std::to_string(fan.dim()));
}

void require_complete_simplicial(const Fan& fan) {
  if (!fan.complete()) fail("NotComplete", "products need a complete fan");
  if (!fan.simplicial()) fail("NotSimplicial", "products need a simplicial fan");
}

}  // namespace

Meet cone_meets_translate(const std::vector<IntVector>& rays, const Cone& gamma, const Cone& epsilon,
                          const RatVector& v) {
  const std::size_t n = v.size();
  const std::size_t k = gamma.size(), l = epsilon.size();
  Meet out;
  if (k + l == 0) {
    bool zero = true;
    for (const auto& x : v)
      if (x != 0) zero = false;
    if (zero) out = {true, 0};
    return out;
  }
  // sum lambda_i g_i - sum kappa_j e_j = v, lambda, kappa >= 0
  std::vector<LinearConstraint> cons;
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint c;
    c.coeffs.assign(k + l, Rational(0));
    for (std::size_t a = 0; a < k; ++a) c.coeffs[a] = rays[static_cast<std::size_t>(gamma[a])][i];
    for (std::size_t b = 0; b < l; ++b) c.coeffs[k + b] = -Rational(rays[static_cast<std::size_t>(epsilon[b])][i]);
    c.rhs = v[i];
    c.kind = LinearConstraint::Kind::eq;
    cons.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < k + l; ++a) {
    LinearConstraint c;
    c.coeffs.assign(k + l, Rational(0));
    c.coeffs[a] = 1;
    cons.push_back(std::move(c));
  }
  std::vector<RatVector> image;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row(k + l, Rational(0));
    for (std::size_t a = 0; a < k; ++a) row[a] = rays[static_cast<std::size_t>(gamma[a])][i];
    image.push_back(std::move(row));
  }
  out.dim = projected_dimension(k + l, cons, image);
  out.meets = out.dim >= 0;
  return out;
}

bool is_generic_displacement(const Fan& fan, const RatVector& v) {
  check_vector(fan, v);
  const auto& cones = fan.cones();
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i; j < cones.size(); ++j)
      if (in_proper_span(fan.rays(), cones[i], cones[j], v)) return false;
  return true;
}

RatVector sample_displacement(const Fan& fan, std::uint64_t seed) {
  Rng base(seed);
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = base.split(attempt);
    RatVector v;
    for (int i = 0; i < fan.dim(); ++i) v.emplace_back(rng.uniform(-1000, 1000));
    if (is_generic_displacement(fan, v)) return v;
  }
  internal_fail("NonGenericVector", "no generic displacement found");
}

PairCoeffs fan_displacement_coeffs(const Fan& fan, const Cone& beta, const RatVector& v) {
  check_vector(fan, v);
  const auto star = fan.star(beta);
  const int cb = fan.codim(beta);
  PairCoeffs out;
  for (const auto& g : star)
    for (const auto& e : star) {
      if (fan.codim(g) + fan.codim(e) != cb) continue;
      if (in_proper_span(fan.rays(), g, e, v))
        fail("NonGenericVector", "displacement lies in span(" + cone_key(g) + ") + span(" + cone_key(e) + ")");
      auto meet = cone_meets_translate(fan.rays(), g, e, v);
      if (!meet.meets) continue;
      if (meet.dim != fan.cone_dim(beta))
        fail("NonGenericVector", "intersection of " + cone_key(g) + " and " + cone_key(e) + " + v is not transversal");
      out[{g, e}] = sum_index(fan, g, e);
    }
  return out;
}

DisplacementData displacement_data(const Fan& fan, const RatVector& v, std::optional<std::uint64_t> seed) {
  if (!is_generic_displacement(fan, v)) fail("NonGenericVector", "displacement is not generic for this fan");
  DisplacementData d;
  d.v = v;
  d.seed = seed;
  for (const auto& b : fan.cones()) {
    auto m = fan_displacement_coeffs(fan, b, v);
    if (!m.empty()) d.m.emplace(b, std::move(m));
  }
  return d;
}

Weight gw_product(const Fan& fan, const Weight& g1, const Weight& g2, const RRMatrix& rr,
                  const DisplacementData& d) {
  require_complete_simplicial(fan);
  check_vector(fan, d.v);
  for (const Weight* g : {&g1, &g2})
    if (!is_grothendieck_weight(fan, *g, rr).ok) fail("NotAWeight", "product input fails the balancing relations");
  // h(gamma) = sum_zeta nu_gamma(zeta) g(zeta)
  auto lower = [&](const Weight& g) {
    std::map<Cone, Rational> h;
    for (const auto& c : fan.cones()) {
      Rational s = 0;
      for (const auto& z : fan.star(c)) {
        Rational x = g.at(z);
        if (x != 0) s += rr.nu(c, z) * x;
      }
      if (s != 0) h[c] = s;
    }
    return h;
  };
  auto h1 = lower(g1), h2 = lower(g2);
  auto at = [](const std::map<Cone, Rational>& h, const Cone& c) {
    auto it = h.find(c);
    return it == h.end() ? Rational(0) : it->second;
  };
  std::map<Cone, Rational> p;
  for (const auto& [b, pairs] : d.m) {
    Rational s = 0;
    for (const auto& [ge, m] : pairs) s += Rational(m) * at(h1, ge.first) * at(h2, ge.second);
    if (s != 0) p[b] = s;
  }
  Weight out;
  out.rational = g1.rational || g2.rational;
  for (const auto& a : fan.cones()) {
    Rational s = 0;
    for (const auto& b : fan.star(a)) s += rr.mu(a, b) * at(p, b);
    out.set(a, s);
  }
  if (!out.rational && !out.integral()) internal_fail("NonIntegralProduct", "product of integral weights is not integral");
  return out;
}

Weight gw_product(const Fan& fan, const Weight& g1, const Weight& g2, const Flag& flag, const RatVector& v) {
  require_complete_simplicial(fan);
  return gw_product(fan, g1, g2, rr_matrix(fan, flag), displacement_data(fan, v));
}

MinkowskiWeight mw_product(const Fan& fan, const MinkowskiWeight& f1, const MinkowskiWeight& f2,
                           const DisplacementData& d) {
  if (!fan.complete()) fail("NotComplete", "products need a complete fan");
  check_vector(fan, d.v);
  MinkowskiWeight out;
  out.codim = f1.codim + f2.codim;
  for (const auto& [b, pairs] : d.m) {
    if (fan.codim(b) != out.codim) continue;
    Rational s = 0;
    for (const auto& [ge, m] : pairs)
      if (fan.codim(ge.first) == f1.codim && fan.codim(ge.second) == f2.codim)
        s += Rational(m) * f1.at(ge.first) * f2.at(ge.second);
    if (s != 0) out.values[b] = s;
  }
  return out;
}

}  // namespace torweight
