#include "torweight/weights.hpp"

#include "torweight/error.hpp"

#include <algorithm>

namespace torweight {

Rational Weight::at(const Cone& c) const {
  auto it = values.find(c);
  return it == values.end() ? Rational(0) : it->second;
}

void Weight::set(const Cone& c, const Rational& v) {
  if (v == 0)
    values.erase(c);
  else
    values[c] = v;
}

bool Weight::integral() const {
  for (const auto& [c, v] : values)
    if (!is_integral(v)) return false;
  return true;
}

Rational MinkowskiWeight::at(const Cone& c) const {
  auto it = values.find(c);
  return it == values.end() ? Rational(0) : it->second;
}

bool operator==(const Weight& a, const Weight& b) {
  for (const auto& [c, v] : a.values)
    if (b.at(c) != v) return false;
  for (const auto& [c, v] : b.values)
    if (a.at(c) != v) return false;
  return true;
}

RRMatrix rr_matrix(const Fan& fan, const Flag& flag) {
  auto m = mu_matrix(fan, flag);
  nu_matrix(m);
  return m;
}

IntVector relative_generator(const Fan& fan, const Cone& alpha, const Cone& beta) {
  auto extra = cone_difference(beta, alpha);
  if (extra.empty()) fail("NotAFace", cone_key(alpha) + " is not a proper face of " + cone_key(beta));
  return primitive(quotient_projection(fan, alpha) * fan.ray(extra.front()));
}

std::vector<Relation> balancing_relations(const Fan& fan, const RRMatrix& rr) {
  std::vector<Relation> out;
  for (const auto& a : fan.cones()) {
    auto up = fan.covers(a);
    if (up.empty()) continue;
    const std::size_t d = static_cast<std::size_t>(fan.dim() - fan.cone_dim(a));
    std::vector<Relation> rows(d);
    for (std::size_t u = 0; u < d; ++u) {
      rows[u].alpha = a;
      rows[u].coord = u;
    }
    for (const auto& b : up) {
      auto v = relative_generator(fan, a, b);
      for (const auto& g : fan.star(b)) {
        Rational nu = rr.nu(b, g);
        if (nu == 0) continue;
        for (std::size_t u = 0; u < d; ++u)
          if (v[u] != 0) rows[u].coeffs[g] += nu * Rational(v[u]);
      }
    }
    for (auto& r : rows) {
      for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
        it = it->second == 0 ? r.coeffs.erase(it) : std::next(it);
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

void require_complete(const Fan& fan) {
  if (!fan.complete()) fail("NotComplete", "operation needs a complete fan");
}

Verdict check_relations(const Fan& fan, const Weight& g, const RRMatrix& rr) {
  Verdict v;
  v.integral = g.integral();
  for (const auto& rel : balancing_relations(fan, rr)) {
    Rational s = 0;
    for (const auto& [c, k] : rel.coeffs) s += k * g.at(c);
    if (s != 0) v.violations.push_back({rel.alpha, rel.coord, s});
  }
  v.ok = v.violations.empty() && (v.integral || g.rational);
  return v;
}

}  // namespace

Verdict is_grothendieck_weight(const Fan& fan, const Weight& g, const RRMatrix& rr) {
  require_complete(fan);
  if (!fan.simplicial()) fail("NotSimplicial", "refine the fan before passing a matrix");
  return check_relations(fan, g, rr);
}

Verdict is_grothendieck_weight(const Fan& fan, const Weight& g, const Flag& flag) {
  require_complete(fan);
  if (fan.simplicial()) return check_relations(fan, g, rr_matrix(fan, flag));
  auto ref = smooth_refine(fan);
  auto v = check_relations(ref.fan, pullback_refinement(g, ref), rr_matrix(ref.fan, flag));
  v.refined = true;
  return v;
}

bool is_minkowski_weight(const Fan& fan, const MinkowskiWeight& f) {
  for (const auto& a : fan.cones()) {
    if (fan.codim(a) != f.codim + 1) continue;
    const std::size_t d = static_cast<std::size_t>(fan.codim(a));
    std::vector<Rational> sum(d, Rational(0));
    for (const auto& b : fan.covers(a)) {
      Rational c = f.at(b);
      if (c == 0) continue;
      auto v = relative_generator(fan, a, b);
      for (std::size_t u = 0; u < d; ++u) sum[u] += c * Rational(v[u]);
    }
    for (const auto& s : sum)
      if (s != 0) return false;
  }
  return true;
}

LowDimVerdict low_dim_criteria(const Fan& fan, const Weight& g) {
  require_complete(fan);
  const int n = fan.dim();
  if (n > 3) fail("DimensionTooLarge", "closed-form criteria exist up to dimension 3");
  LowDimVerdict v;
  const auto& maxc = fan.maximal_cones();
  const Rational top = g.at(maxc.front());
  v.constant_on_maximal = true;
  for (const auto& m : maxc)
    if (g.at(m) != top) v.constant_on_maximal = false;
  const std::size_t un = static_cast<std::size_t>(n);
  auto zero = [&](const std::vector<Rational>& s) {
    return std::all_of(s.begin(), s.end(), [](const Rational& x) { return x == 0; });
  };
  if (n == 2) {
    std::vector<Rational> s(un, Rational(0));
    for (const auto& r : fan.cones_of_dim(1))
      for (std::size_t j = 0; j < un; ++j) s[j] += (g.at(r) - top) * Rational(fan.ray(r[0])[j]);
    v.ray_condition = zero(s);
  }
  if (n == 3) {
    for (const auto& r : fan.cones_of_dim(1)) {
      std::vector<Rational> s(2, Rational(0));
      for (const auto& b : fan.covers(r)) {
        auto gen = relative_generator(fan, r, b);
        for (std::size_t j = 0; j < 2; ++j) s[j] += (g.at(b) - top) * Rational(gen[j]);
      }
      if (!zero(s)) v.condition_a = false;
    }
    std::vector<Rational> lhs(un, Rational(0)), rhs(un, Rational(0));
    for (const auto& r : fan.cones_of_dim(1)) {
      Rational half_sum = 0, half_count = 0;
      for (const auto& a : fan.covers(r)) {
        half_sum += g.at(a) / 2;
        half_count += Rational(1, 2);
      }
      for (std::size_t j = 0; j < un; ++j) {
        Rational vj(fan.ray(r[0])[j]);
        lhs[j] += (g.at(r) - half_sum) * vj;
        rhs[j] += (1 - half_count) * vj;
      }
    }
    for (std::size_t j = 0; j < un; ++j) rhs[j] *= top;
    v.condition_b = lhs == rhs;
  }
  v.ok = v.constant_on_maximal && v.ray_condition && v.condition_a && v.condition_b;
  return v;
}

Weight rr_map_T(const Fan& fan, const Weight& graded, const RRMatrix& rr) {
  Weight g;
  g.rational = true;
  for (const auto& a : fan.cones()) {
    Rational s = 0;
    for (const auto& b : fan.star(a)) {
      Rational f = graded.at(b);
      if (f != 0) s += rr.mu(a, b) * f;
    }
    g.set(a, s);
  }
  g.rational = !g.integral();
  return g;
}

Weight rr_map_T(const Fan& fan, const MinkowskiWeight& f, const RRMatrix& rr) {
  Weight graded;
  for (const auto& [c, v] : f.values) {
    if (fan.codim(c) != f.codim) fail("WrongCodimension", "value on cone " + cone_key(c) + " outside codim " + std::to_string(f.codim));
    graded.set(c, v);
  }
  return rr_map_T(fan, graded, rr);
}

std::vector<MinkowskiWeight> rr_inverse_image(const Fan& fan, const Weight& g, const RRMatrix& rr) {
  require_complete(fan);
  Weight probe = g;
  probe.rational = true;
  if (!is_grothendieck_weight(fan, probe, rr).ok) fail("NotAWeight", "function fails the balancing relations");
  std::vector<MinkowskiWeight> out;
  Weight rest = g;
  for (int k = 0; k <= fan.dim(); ++k) {
    MinkowskiWeight f;
    f.codim = k;
    for (const auto& c : fan.cones())
      if (fan.codim(c) == k && rest.at(c) != 0) f.values[c] = rest.at(c);
    auto tf = rr_map_T(fan, f, rr);
    for (const auto& c : fan.cones()) rest.set(c, rest.at(c) - tf.at(c));
    out.push_back(std::move(f));
  }
  if (!rest.values.empty()) internal_fail("PeelingFailed", "remainder after peeling is nonzero");
  return out;
}

Weight pullback_refinement(const Weight& g, const Refinement& r) {
  Weight out;
  out.rational = g.rational;
  for (const auto& [fine, coarse] : r.cone_map) out.set(fine, g.at(coarse));
  return out;
}

Weight pushforward_open(const Fan& sub, const Weight& g, const Fan& big) {
  std::map<IntVector, int> index;
  for (std::size_t i = 0; i < big.rays().size(); ++i) index.emplace(big.rays()[i], static_cast<int>(i));
  Weight out;
  out.rational = g.rational;
  for (const auto& c : sub.cones()) {
    Cone img;
    for (int r : c) {
      auto it = index.find(sub.ray(r));
      if (it == index.end()) fail("NotASubfan", "ray " + std::to_string(r) + " is not a ray of the target fan");
      img.push_back(it->second);
    }
    std::sort(img.begin(), img.end());
    if (!big.contains(img)) fail("NotASubfan", "cone " + cone_key(c) + " is not a cone of the target fan");
    out.set(img, g.at(c));
  }
  return out;
}

Lift lift_minkowski(const Fan& fan, const MinkowskiWeight& f, const RRMatrix& rr) {
  require_complete(fan);
  // columns: cones of codim > k (unknown), then codim k (fixed by f)
  std::vector<Cone> cols;
  for (const auto& c : fan.cones())
    if (fan.codim(c) > f.codim) cols.push_back(c);
  const std::size_t nu = cols.size();
  for (const auto& c : fan.cones())
    if (fan.codim(c) == f.codim) cols.push_back(c);
  std::map<Cone, std::size_t> col;
  for (std::size_t j = 0; j < cols.size(); ++j) col.emplace(cols[j], j);
  auto rels = balancing_relations(fan, rr);
  RatMatrix m(rels.size(), cols.size());
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (const auto& [c, k] : rels[i].coeffs) {
      auto it = col.find(c);
      if (it != col.end()) m(i, it->second) = k;
    }
  // the row space does not depend on the flag; reduce before going to Z
  const std::size_t r = row_reduce(m).size();
  RatVector fixed(cols.size() - nu);
  for (std::size_t j = nu; j < cols.size(); ++j) fixed[j - nu] = f.at(cols[j]);
  Lift out;
  auto functional = [&](const RatVector& w) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (w[j] != 0) out.certificate[cols[j]] = w[j];
  };
  std::vector<IntVector> rows;
  std::vector<RatVector> full;
  RatVector rhs;
  for (std::size_t i = 0; i < r; ++i) {
    RatVector w = m.row(i);
    Rational b = 0;
    for (std::size_t j = nu; j < cols.size(); ++j) b -= w[j] * fixed[j - nu];
    Integer den = 1;
    for (std::size_t j = 0; j < nu; ++j) den = lcm(den, w[j].get_den());
    bool empty = true;
    for (std::size_t j = 0; j < nu; ++j)
      if (w[j] != 0) empty = false;
    if (empty) {
      if (b == 0) continue;
      // f itself breaks a relation; rescale so the value is 1/2
      Rational s = Rational(1, 2) / b;
      for (auto& x : w) x *= -s;
      functional(w);
      out.modulus = 0;
      return out;
    }
    IntVector row;
    for (std::size_t j = 0; j < nu; ++j) row.push_back(Rational(w[j] * den).get_num());
    for (auto& x : w) x *= den;
    rows.push_back(std::move(row));
    full.push_back(std::move(w));
    rhs.push_back(b * den);
  }
  Weight g;
  for (const auto& [c, v] : f.values) g.set(c, v);
  if (rows.empty()) {
    out.weight = g;
    return out;
  }
  Integer den = 1;
  for (const auto& x : rhs) den = lcm(den, x.get_den());
  IntVector b;
  for (auto& row : rows) {
    for (auto& x : row) x *= den;
    b.push_back(Rational(rhs[b.size()] * den).get_num());
  }
  auto sol = solve_integer(IntMatrix::from_rows(rows, nu), b);
  if (!sol.solvable) {
    // sum_l w_l full_l: integral on the unknowns, -w b on f
    RatVector w(cols.size(), Rational(0));
    for (std::size_t l = 0; l < rows.size(); ++l)
      for (std::size_t j = 0; j < cols.size(); ++j) w[j] += sol.certificate[l] * den * full[l][j];
    functional(w);
    out.modulus = sol.modulus;
    return out;
  }
  for (std::size_t j = 0; j < nu; ++j) g.set(cols[j], Rational(sol.particular[j]));
  out.weight = g;
  return out;
}

int filtration_level(const Fan& fan, const Weight& g) {
  int level = fan.dim() + 1;
  for (const auto& c : fan.cones())
    if (g.at(c) != 0) level = std::min(level, fan.codim(c));
  return level;
}

}  // namespace torweight
