#include "torweight/pexp.hpp"

#include "torweight/error.hpp"
#include "torweight/random.hpp"

#include <algorithm>
#include <set>

namespace torweight {

ExpSum ExpSum::constant(std::size_t dim, const Rational& c) {
  ExpSum s(dim);
  s.add(RatVector(dim, Rational(0)), c);
  return s;
}

ExpSum ExpSum::monomial(const RatVector& m, const Rational& c) {
  ExpSum s(m.size());
  s.add(m, c);
  return s;
}

ExpSum ExpSum::one_minus(const RatVector& m) {
  ExpSum s = constant(m.size(), 1);
  s.add(m, -1);
  return s;
}

void ExpSum::add(const RatVector& m, const Rational& c) {
  if (dim_ == 0 && terms_.empty()) dim_ = m.size();
  if (m.size() != dim_)
    fail("DimensionMismatch", "exponent of length " + std::to_string(m.size()) + " in a sum over dimension " +
                                  std::to_string(dim_));
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational ExpSum::value_at_zero() const {
  Rational s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

std::map<Rational, Rational> ExpSum::along(const IntVector& u) const {
  std::map<Rational, Rational> out;
  for (const auto& [m, c] : terms_) {
    Rational l = 0;
    for (std::size_t i = 0; i < m.size(); ++i) l += m[i] * u[i];
    Rational& x = out[l];
    x += c;
    if (x == 0) out.erase(l);
  }
  return out;
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  if (dim_ == 0) dim_ = o.dim_;
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  if (dim_ == 0) dim_ = o.dim_;
  return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum out(std::max(a.dim_, b.dim_));
  for (const auto& [m, c] : a.terms_)
    for (const auto& [n, d] : b.terms_) {
      RatVector e = m;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += n[i];
      out.add(e, c * d);
    }
  return out;
}

ExpSum ExpSum::scaled(const Rational& c) const {
  ExpSum out(dim_);
  if (c == 0) return out;
  for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
  return out;
}

bool same_function(const ExpRational& a, const ExpRational& b) { return a.num * b.den == b.num * a.den; }

namespace {

void require_complete(const Fan& fan) {
  if (!fan.complete()) fail("NotComplete", "piecewise exponential functions need a complete fan");
}

// Restriction of e^m to span(tau), as the values on tau's rays.
RatVector restrict_exponent(const Fan& fan, const Cone& tau, const RatVector& m) {
  RatVector out;
  for (int r : tau) {
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * fan.ray(r)[i];
    out.push_back(s);
  }
  return out;
}

std::string describe(const ExpSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*e^(";
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + to_string(m[i]);
    out += ")";
  }
  return out;
}

Rational factorial(unsigned j) {
  Integer f = 1;
  for (unsigned i = 2; i <= j; ++i) f *= i;
  return Rational(f);
}

// j-th Taylor coefficient of sum c e^{l s}
Rational taylor(const std::map<Rational, Rational>& f, unsigned j, const Rational& inv_fact) {
  Rational s = 0;
  for (const auto& [l, c] : f) {
    Rational p = 1;
    for (unsigned i = 0; i < j; ++i) p *= l;
    s += c * p;
  }
  return s * inv_fact;
}

}  // namespace

PExpFunction validate_pexp(const Fan& fan, const std::map<Cone, ExpSum>& data) {
  require_complete(fan);
  const auto n = static_cast<std::size_t>(fan.dim());
  PExpFunction out;
  for (const auto& [c, s] : data) {
    if (!fan.contains(c) || fan.codim(c) != 0) fail("NotMaximal", "cone " + cone_key(c) + " is not a maximal cone");
    if (!s.is_zero() && s.dim() != n)
      fail("DimensionMismatch", "exponents on cone " + cone_key(c) + " do not have length " + std::to_string(n));
  }
  for (const auto& c : fan.maximal_cones()) {
    auto it = data.find(c);
    if (it == data.end()) fail("MissingCone", "no value on maximal cone " + cone_key(c));
    ExpSum s(n);
    s += it->second;
    out.values.emplace(c, std::move(s));
  }
  for (const auto& tau : fan.cones_of_dim(fan.dim() - 1)) {
    std::vector<Cone> around;
    for (const auto& c : fan.covers(tau)) around.push_back(c);
    for (std::size_t i = 1; i < around.size(); ++i) {
      ExpSum diff = out.values.at(around[0]) - out.values.at(around[i]);
      std::map<RatVector, Rational> grouped;
      for (const auto& [m, c] : diff.terms()) grouped[restrict_exponent(fan, tau, m)] += c;
      for (const auto& g : grouped)
        if (g.second != 0)
          fail("Discontinuous", "values on " + cone_key(around[0]) + " and " + cone_key(around[i]) +
                                    " differ on face " + cone_key(tau) + ": " + describe(diff));
    }
  }
  return out;
}

PExpFunction pexp_product(const PExpFunction& a, const PExpFunction& b) {
  PExpFunction out;
  for (const auto& [c, s] : a.values) {
    auto it = b.values.find(c);
    if (it == b.values.end()) fail("MissingCone", "no value on maximal cone " + cone_key(c));
    out.values.emplace(c, s * it->second);
  }
  return out;
}

PExpFunction pexp_constant(const Fan& fan, const Rational& c) {
  PExpFunction out;
  for (const auto& s : fan.maximal_cones())
    out.values.emplace(s, ExpSum::constant(static_cast<std::size_t>(fan.dim()), c));
  return out;
}

ExpRational smooth_chart(const std::vector<IntVector>& generators, const IntMatrix& projection) {
  const std::size_t d = generators.size();
  const std::size_t n = projection.cols();
  ExpRational out{ExpSum::constant(n, 1), ExpSum::constant(n, 1)};
  if (d == 0) return out;
  IntMatrix inv = unimodular_inverse(IntMatrix::from_rows(generators, d));
  for (std::size_t i = 0; i < d; ++i) {
    // column i of the inverse pairs to 1 with generator i only
    RatVector m(n, Rational(0));
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < d; ++k) m[l] += Rational(projection(k, l) * inv(k, i));
    out.den = out.den * ExpSum::one_minus(m);
  }
  return out;
}

std::vector<ExpRational> multiplicity_terms(const Fan& fan, const Cone& sigma, const Cone& alpha) {
  if (!is_subset(alpha, sigma)) return {};
  const IntMatrix p = quotient_projection(fan, alpha);
  const std::size_t d = p.rows();
  if (d == 0) return {smooth_chart({}, p)};
  // image of sigma in N_alpha
  std::set<IntVector> images;
  for (int r : cone_difference(sigma, alpha)) {
    IntVector v = p * fan.ray(r);
    bool zero = std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    if (!zero) images.insert(primitive(v));
  }
  std::vector<IntVector> gens(images.begin(), images.end());
  Cone all;
  for (std::size_t i = 0; i < gens.size(); ++i) all.push_back(static_cast<int>(i));
  RawFan raw;
  raw.dim = static_cast<int>(d);
  for (const auto& f : cone_faces(gens, all))
    if (f.size() == 1) raw.rays.push_back(gens[static_cast<std::size_t>(f[0])]);
  Cone chart;
  for (std::size_t i = 0; i < raw.rays.size(); ++i) chart.push_back(static_cast<int>(i));
  raw.max_cones.push_back(chart);
  Fan local = Fan::validate(raw);
  if (local.cone_dim(chart) != static_cast<int>(d))
    internal_fail("ChartDimension", "image of " + cone_key(sigma) + " in the quotient by " + cone_key(alpha) +
                                        " is not full-dimensional");
  const Fan resolved = local.smooth() ? local : smooth_refine(local).fan;
  std::vector<ExpRational> out;
  for (const auto& tau : resolved.maximal_cones()) {
    std::vector<IntVector> g;
    for (int r : tau) g.push_back(resolved.ray(r));
    out.push_back(smooth_chart(g, p));
  }
  return out;
}

ExpRational equivariant_multiplicity(const Fan& fan, const Cone& sigma, const Cone& alpha) {
  const auto n = static_cast<std::size_t>(fan.dim());
  ExpRational out{ExpSum(n), ExpSum::constant(n, 1)};
  for (const auto& t : multiplicity_terms(fan, sigma, alpha)) {
    out.num = out.num * t.den + t.num * out.den;
    out.den = out.den * t.den;
  }
  return out;
}

std::map<int, Rational> laurent_along(const std::vector<ExpRational>& terms, const IntVector& u) {
  std::map<int, Rational> out;
  for (const auto& t : terms) {
    const auto num = t.num.along(u);
    if (num.empty()) continue;
    const auto den = t.den.along(u);
    if (den.empty()) fail("NonGenericDirection", "a denominator vanishes along the chosen direction");
    // den has at most |den| - 1 vanishing Taylor coefficients
    std::vector<Rational> inv_fact{Rational(1)};
    auto inv_factorial = [&](unsigned j) {
      while (inv_fact.size() <= j) inv_fact.push_back(1 / factorial(static_cast<unsigned>(inv_fact.size())));
      return inv_fact[j];
    };
    unsigned k = 0;
    Rational lead;
    for (;; ++k) {
      if (k >= den.size()) internal_fail("ZeroSeries", "nonzero exponential sum with vanishing Taylor series");
      lead = taylor(den, k, inv_factorial(k));
      if (lead != 0) break;
    }
    std::vector<Rational> unit{lead}, q;
    for (unsigned j = 1; j <= k; ++j) unit.push_back(taylor(den, k + j, inv_factorial(k + j)));
    for (unsigned j = 0; j <= k; ++j) {
      Rational x = taylor(num, j, inv_factorial(j));
      for (unsigned i = 1; i <= j; ++i) x -= unit[i] * q[j - i];
      q.push_back(x / lead);
    }
    for (unsigned j = 0; j <= k; ++j) {
      if (q[j] == 0) continue;
      const int order = static_cast<int>(j) - static_cast<int>(k);
      Rational& x = out[order];
      x += q[j];
      if (x == 0) out.erase(order);
    }
  }
  return out;
}

Rational limit_along(const std::vector<ExpRational>& terms, const IntVector& u) {
  auto l = laurent_along(terms, u);
  for (const auto& [order, c] : l)
    if (order < 0) internal_fail("PoleSurvives", "pole of order " + std::to_string(-order) + " does not cancel");
  auto it = l.find(0);
  return it == l.end() ? Rational(0) : it->second;
}

bool is_generic_direction(const Fan& fan, const IntVector& u) {
  if (u.size() != static_cast<std::size_t>(fan.dim())) fail("DimensionMismatch", "direction has the wrong length");
  for (const auto& s : fan.maximal_cones())
    for (const auto& a : fan.cones())
      for (const auto& t : multiplicity_terms(fan, s, a))
        if (t.den.along(u).empty()) return false;
  return true;
}

IntVector sample_direction(const Fan& fan, std::uint64_t seed) {
  Rng base(seed);
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = base.split(attempt);
    IntVector u;
    for (int i = 0; i < fan.dim(); ++i) u.emplace_back(rng.uniform(-1000, 1000));
    if (is_generic_direction(fan, u)) return u;
  }
  internal_fail("NonGenericDirection", "no generic direction found");
}

Weight forgetful(const Fan& fan, const PExpFunction& phi, const IntVector& u) {
  require_complete(fan);
  if (u.size() != static_cast<std::size_t>(fan.dim())) fail("DimensionMismatch", "direction has the wrong length");
  Weight g;
  for (const auto& a : fan.cones()) {
    std::vector<ExpRational> terms;
    for (const auto& s : fan.star(a)) {
      if (fan.codim(s) != 0) continue;
      auto it = phi.values.find(s);
      if (it == phi.values.end()) fail("MissingCone", "no value on maximal cone " + cone_key(s));
      if (it->second.is_zero()) continue;
      for (auto& t : multiplicity_terms(fan, s, a)) terms.push_back({t.num * it->second, std::move(t.den)});
    }
    Rational v = limit_along(terms, u);
    if (!is_integral(v)) fail("NonIntegralLimit", "limit " + to_string(v) + " on cone " + cone_key(a));
    g.set(a, v);
  }
  return g;
}

Weight forgetful(const Fan& fan, const PExpFunction& phi, std::uint64_t seed) {
  require_complete(fan);
  return forgetful(fan, phi, sample_direction(fan, seed));
}

SpanResult span_test(const std::vector<Weight>& generators, const Weight& target) {
  std::set<Cone> support;
  for (const auto& [c, v] : target.values)
    if (v != 0) support.insert(c);
  for (const auto& g : generators)
    for (const auto& [c, v] : g.values)
      if (v != 0) support.insert(c);
  for (const auto& g : generators)
    if (!g.integral()) fail("NotIntegral", "span_test needs integral weights");
  if (!target.integral()) fail("NotIntegral", "span_test needs an integral target");
  std::vector<Cone> cones(support.begin(), support.end());
  SpanResult out;
  if (cones.empty()) {
    out.member = true;
    out.coefficients.assign(generators.size(), Integer(0));
    return out;
  }
  if (generators.empty()) {
    for (const auto& c : cones)
      if (target.at(c) != 0) {
        out.certificate[c] = 1 / (2 * target.at(c));
        return out;
      }
  }
  IntMatrix a(cones.size(), generators.size());
  IntVector b;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (std::size_t j = 0; j < generators.size(); ++j) a(i, j) = generators[j].at(cones[i]).get_num();
    b.push_back(target.at(cones[i]).get_num());
  }
  auto sol = solve_integer(a, b);
  out.member = sol.solvable;
  out.modulus = sol.modulus;
  if (sol.solvable) {
    out.coefficients = sol.particular;
  } else {
    for (std::size_t i = 0; i < cones.size(); ++i)
      if (sol.certificate[i] != 0) out.certificate[cones[i]] = sol.certificate[i];
  }
  return out;
}

PExpFunction exp_pl(const Fan& fan, const std::map<int, Rational>& ray_values, const Rational& scale) {
  require_complete(fan);
  const auto n = static_cast<std::size_t>(fan.dim());
  for (const auto& rv : ray_values)
    if (rv.first < 0 || static_cast<std::size_t>(rv.first) >= fan.rays().size())
      fail("UnknownRay", "no ray with index " + std::to_string(rv.first));
  PExpFunction out;
  for (const auto& s : fan.maximal_cones()) {
    RatMatrix a(s.size(), n);
    RatVector b;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = fan.ray(s[i])[j];
      auto it = ray_values.find(s[i]);
      b.push_back(it == ray_values.end() ? Rational(0) : it->second);
    }
    auto sol = solve_rational(a, b);
    if (!sol.consistent) fail("NotPiecewiseLinear", "ray values are not linear on cone " + cone_key(s));
    RatVector m = sol.particular;
    for (auto& x : m) x *= scale;
    out.values.emplace(s, ExpSum::monomial(m));
  }
  return out;
}

}  // namespace torweight
