#include "torweight/ehrhart.hpp"

#include "torweight/error.hpp"
#include "torweight/linalg.hpp"
#include "torweight/product.hpp"
#include "torweight/random.hpp"

#include <algorithm>
#include <set>

namespace torweight {

namespace {

Rational value_of(const Divisor& a, int r) {
  auto it = a.find(r);
  return it == a.end() ? Rational(0) : it->second;
}

Rational pair(const RatVector& m, const IntVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * v[i];
  return s;
}

int face_dim(const Polytope& p, const std::vector<std::size_t>& verts) {
  if (verts.size() <= 1) return 0;
  const auto n = static_cast<std::size_t>(p.dim);
  RatMatrix d(verts.size() - 1, n);
  for (std::size_t i = 1; i < verts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) d(i - 1, j) = p.vertices[verts[i]][j] - p.vertices[verts[0]][j];
  return static_cast<int>(rank(d));
}

const std::vector<std::size_t>& face_vertices(const Polytope& p, const Cone& alpha) {
  auto it = p.faces.find(alpha);
  if (it == p.faces.end()) fail("UnknownCone", "no face for cone " + cone_key(alpha));
  return it->second;
}

}  // namespace

Polytope polytope_from_divisor(const Fan& fan, const Divisor& a, Positivity need) {
  if (!fan.complete()) fail("NotComplete", "polytopes need a complete fan");
  const auto n = static_cast<std::size_t>(fan.dim());
  for (const auto& rv : a)
    if (rv.first < 0 || static_cast<std::size_t>(rv.first) >= fan.rays().size())
      fail("UnknownRay", "no ray with index " + std::to_string(rv.first));
  Polytope p;
  p.dim = fan.dim();
  p.normals = fan.rays();
  for (std::size_t r = 0; r < fan.rays().size(); ++r) p.offsets.push_back(value_of(a, static_cast<int>(r)));
  p.lattice = true;
  p.ample = true;
  const auto& maxes = fan.maximal_cones();
  for (const auto& s : maxes) {
    RatMatrix m(s.size(), n);
    RatVector b;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = fan.ray(s[i])[j];
      b.push_back(-value_of(a, s[i]));
    }
    auto sol = solve_rational(m, b);
    if (!sol.consistent) fail("NotAmple", "divisor is not linear on cone " + cone_key(s));
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      if (std::binary_search(s.begin(), s.end(), static_cast<int>(r))) continue;
      const Rational x = pair(sol.particular, fan.ray(static_cast<int>(r))), y = -value_of(a, static_cast<int>(r));
      if (x < y) fail("NotAmple", "support function is not convex across cone " + cone_key(s));
      if (x == y) {
        if (need == Positivity::ample)
          fail("NotAmple", "support function is not strictly convex across cone " + cone_key(s));
        p.ample = false;
      }
    }
    for (const auto& x : sol.particular)
      if (!is_integral(x)) p.lattice = false;
    p.vertices.push_back(sol.particular);
  }
  for (const auto& c : fan.cones()) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < maxes.size(); ++i)
      if (is_subset(c, maxes[i])) f.push_back(i);
    p.faces.emplace(c, std::move(f));
  }
  return p;
}

bool is_ample(const Fan& fan, const Divisor& a) {
  try {
    polytope_from_divisor(fan, a);
    return true;
  } catch (const Error& e) {
    if (e.code() == "NotAmple") return false;
    throw;
  }
}

Integer count_points(const Polytope& p, const Cone& alpha, long t, bool interior) {
  const auto& verts = face_vertices(p, alpha);
  const auto n = static_cast<std::size_t>(p.dim);
  std::vector<Integer> lo(n), hi(n);
  Integer volume = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = p.vertices[verts[0]][j] * t, mx = mn;
    for (std::size_t v : verts) {
      Rational x = p.vertices[v][j] * t;
      mn = std::min(mn, x);
      mx = std::max(mx, x);
    }
    lo[j] = ceil(mn);
    hi[j] = floor(mx);
    if (hi[j] < lo[j]) return 0;
    volume *= hi[j] - lo[j] + 1;
    if (volume > kCountBudget) fail("TooLarge", "more than " + std::to_string(kCountBudget) + " candidate points");
  }
  std::vector<bool> on(p.normals.size(), false);
  for (int r : alpha) on[static_cast<std::size_t>(r)] = true;
  Integer count = 0;
  IntVector m = lo;
  while (true) {
    bool inside = true;
    for (std::size_t r = 0; r < p.normals.size() && inside; ++r) {
      Rational lhs = dot(m, p.normals[r]);
      Rational rhs = -p.offsets[r] * t;
      if (on[r])
        inside = lhs == rhs;
      else
        inside = interior ? lhs > rhs : lhs >= rhs;
    }
    if (inside) ++count;
    std::size_t j = 0;
    while (j < n && m[j] == hi[j]) {
      m[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    ++m[j];
  }
  return count;
}

Rational EhrhartPolynomial::operator()(const Rational& t) const {
  Rational s = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * t + *it;
  return s;
}

EhrhartPolynomial ehrhart_polynomial(const Polytope& p, const Cone& alpha) {
  if (!p.lattice) fail("NotLattice", "polytope has non-integral vertices");
  const auto d = static_cast<std::size_t>(face_dim(p, face_vertices(p, alpha)));
  RatMatrix v(d + 1, d + 1);
  RatVector counts;
  for (std::size_t t = 0; t <= d; ++t) {
    Rational x = 1;
    for (std::size_t k = 0; k <= d; ++k) {
      v(t, k) = x;
      x *= static_cast<long>(t);
    }
    counts.emplace_back(count_points(p, alpha, static_cast<long>(t)));
  }
  auto sol = solve_rational(v, counts);
  EhrhartPolynomial out;
  out.coeffs = sol.particular;
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  return out;
}

std::vector<Divisor> sample_ample(const Fan& fan, std::size_t count, std::uint64_t seed) {
  Rng base(seed);
  std::vector<Divisor> out;
  std::set<Divisor> seen;
  for (std::uint64_t attempt = 0; attempt < 20000 && out.size() < count; ++attempt) {
    Rng rng = base.split(attempt);
    Divisor a;
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      long x = rng.uniform(0, 3);
      if (x != 0) a[static_cast<int>(r)] = x;
    }
    Polytope p;
    try {
      p = polytope_from_divisor(fan, a);
    } catch (const Error& e) {
      if (e.code() == "NotAmple") continue;
      throw;
    }
    Integer l = 1;
    for (const auto& v : p.vertices)
      for (const auto& x : v) l = lcm(l, x.get_den());
    for (auto& rv : a) rv.second *= l;
    if (seen.insert(a).second) out.push_back(a);
  }
  if (out.size() < count) fail("NoAmpleFound", "found " + std::to_string(out.size()) + " ample divisors");
  return out;
}

namespace {

RatVector sum_polynomial(const Fan& fan, const std::map<Cone, Rational>& a, const Polytope& p) {
  RatVector s(static_cast<std::size_t>(fan.dim()) + 1, Rational(0));
  for (const auto& [c, x] : a) {
    if (x == 0) continue;
    auto l = ehrhart_polynomial(p, c);
    for (std::size_t j = 0; j < l.coeffs.size(); ++j) s[j] += x * l.coeffs[j];
  }
  return s;
}

}  // namespace

bool kernel_relation_check(const Fan& fan, const std::map<Cone, Rational>& a, const std::vector<Polytope>& ps) {
  for (const auto& p : ps)
    if (!p.ample) fail("NotAmple", "kernel oracle needs polytopes with normal fan equal to the fan");
  for (const auto& [c, x] : a)
    if (!fan.contains(c)) fail("UnknownCone", "cone " + cone_key(c) + " is not in the fan");
  for (const auto& p : ps)
    for (const auto& x : sum_polynomial(fan, a, p))
      if (x != 0) return false;
  return true;
}

std::vector<std::map<Cone, Rational>> ehrhart_relations(const Fan& fan, const std::vector<Polytope>& ps) {
  for (const auto& p : ps)
    if (!p.ample) fail("NotAmple", "kernel oracle needs polytopes with normal fan equal to the fan");
  const auto& cones = fan.cones();
  const std::size_t deg = static_cast<std::size_t>(fan.dim()) + 1;
  RatMatrix m(ps.size() * deg, cones.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t c = 0; c < cones.size(); ++c) {
      auto l = ehrhart_polynomial(ps[i], cones[c]);
      for (std::size_t j = 0; j < l.coeffs.size(); ++j) m(i * deg + j, c) = l.coeffs[j];
    }
  std::vector<std::map<Cone, Rational>> out;
  for (const auto& k : kernel_basis(m)) {
    std::map<Cone, Rational> r;
    for (std::size_t c = 0; c < cones.size(); ++c)
      if (k[c] != 0) r[cones[c]] = k[c];
    out.push_back(std::move(r));
  }
  return out;
}

bool ehrhart_membership(const Weight& g, const std::vector<std::map<Cone, Rational>>& relations) {
  if (!g.integral()) return false;
  for (const auto& r : relations) {
    Rational s = 0;
    for (const auto& [c, x] : r) s += x * g.at(c);
    if (s != 0) return false;
  }
  return true;
}

Weight euler_char_cocycle(const Fan& fan, const Divisor& a) {
  Polytope p = polytope_from_divisor(fan, a, Positivity::nef);
  if (!p.lattice) fail("NotLattice", "divisor has non-integral vertices");
  Weight g;
  for (const auto& c : fan.cones()) g.set(c, Rational(count_points(p, c, 1)));
  return g;
}

Integer pairing_euler(const Fan& fan, const Weight& gy, const Weight& ge, const Flag& flag, const RatVector& v) {
  Rational x = gw_product(fan, gy, ge, flag, v).at({});
  if (!is_integral(x)) internal_fail("NonIntegralPairing", "pairing value " + to_string(x));
  return x.get_num();
}

}  // namespace torweight
