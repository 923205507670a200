#include "torweight/fan.hpp"

#include "torweight/error.hpp"
#include "torweight/polyhedra.hpp"
#include "torweight/random.hpp"

#include <algorithm>
#include <set>

namespace torweight {

std::string cone_key(const Cone& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out;
}

Cone parse_cone_key(std::string_view key) {
  Cone c;
  if (key.empty()) return c;
  std::size_t start = 0;
  for (;;) {
    auto comma = key.find(',', start);
    auto part = key.substr(start, comma == std::string_view::npos ? key.size() - start : comma - start);
    if (part.empty()) fail("ParseError", "bad cone key '" + std::string(key) + "'");
    int v = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') fail("ParseError", "bad cone key '" + std::string(key) + "'");
      v = v * 10 + (ch - '0');
      if (v > 1000000) fail("ParseError", "ray index too large in '" + std::string(key) + "'");
    }
    c.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end())
    fail("ParseError", "repeated ray in cone key '" + std::string(key) + "'");
  return c;
}

bool is_subset(const Cone& a, const Cone& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Cone cone_union(const Cone& a, const Cone& b) {
  Cone out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cone cone_difference(const Cone& a, const Cone& b) {
  Cone out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

RatMatrix rows_of(const std::vector<IntVector>& rays, const Cone& c, std::size_t n) {
  RatMatrix m(c.size(), n);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(rays[static_cast<std::size_t>(c[i])][j]);
  return m;
}

std::size_t rank_of(const std::vector<IntVector>& rays, const Cone& c) {
  if (c.empty()) return 0;
  return rank(rows_of(rays, c, rays[static_cast<std::size_t>(c[0])].size()));
}

void combinations(const Cone& c, std::size_t k, std::size_t start, Cone& cur, std::vector<Cone>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= c.size(); ++i) {
    cur.push_back(c[i]);
    combinations(c, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Cone> subsets_of_size(const Cone& c, std::size_t k) {
  std::vector<Cone> out;
  Cone cur;
  combinations(c, k, 0, cur, out);
  return out;
}

std::vector<Cone> facets(const std::vector<IntVector>& rays, const Cone& c) {
  const std::size_t d = rank_of(rays, c);
  if (d == 0) return {};
  if (d == c.size()) {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Cone f = c;
      f.erase(f.begin() + static_cast<long>(i));
      out.push_back(f);
    }
    return out;
  }
  const std::size_t n = rays[static_cast<std::size_t>(c[0])].size();
  std::set<Cone> found;
  for (const auto& s : subsets_of_size(c, d - 1)) {
    if (rank_of(rays, s) != d - 1) continue;
    std::vector<RatVector> kernel;
    if (s.empty()) {
      for (std::size_t j = 0; j < n; ++j) {
        RatVector e(n, Rational(0));
        e[j] = 1;
        kernel.push_back(e);
      }
    } else {
      kernel = kernel_basis(rows_of(rays, s, n));
    }
    // any kernel vector not vanishing on the cone gives the facet functional
    RatVector values;
    for (const auto& k : kernel) {
      RatVector vals;
      bool nonzero = false;
      for (int r : c) {
        vals.push_back(dot(to_rational(rays[static_cast<std::size_t>(r)]), k));
        if (vals.back() != 0) nonzero = true;
      }
      if (nonzero) {
        values = vals;
        break;
      }
    }
    if (values.empty()) continue;
    int sign = 0;
    bool ok = true;
    Cone face;
    for (std::size_t i = 0; i < c.size(); ++i) {
      int sg = sgn(values[i]);
      if (sg == 0) {
        face.push_back(c[i]);
        continue;
      }
      if (sign == 0) sign = sg;
      if (sg != sign) {
        ok = false;
        break;
      }
    }
    if (ok) found.insert(face);
  }
  return {found.begin(), found.end()};
}

std::vector<LinearConstraint> combination_constraints(const std::vector<IntVector>& rays, const Cone& c,
                                                      const RatVector& x, bool interior) {
  // lambda_i >= 0 (or > 0), sum lambda_i v_i = x
  const std::size_t k = c.size();
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < k; ++i) {
    RatVector e(k, Rational(0));
    e[i] = 1;
    cs.push_back({e, 0, interior ? LinearConstraint::Kind::gt : LinearConstraint::Kind::ge});
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    RatVector row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = Rational(rays[static_cast<std::size_t>(c[i])][j]);
    cs.push_back({row, x[j], LinearConstraint::Kind::eq});
  }
  return cs;
}

}  // namespace

std::vector<Cone> cone_faces(const std::vector<IntVector>& all_rays, const Cone& c) {
  std::set<Cone> seen{c};
  std::vector<Cone> todo{c};
  while (!todo.empty()) {
    Cone f = todo.back();
    todo.pop_back();
    for (auto& g : facets(all_rays, f))
      if (seen.insert(g).second) todo.push_back(g);
  }
  return {seen.begin(), seen.end()};
}

bool cone_contains(const std::vector<IntVector>& all_rays, const Cone& c, const RatVector& x,
                   bool interior) {
  if (c.empty()) {
    for (const auto& v : x)
      if (v != 0) return false;
    return true;
  }
  const std::size_t n = x.size();
  RatMatrix m = rows_of(all_rays, c, n);
  if (rank(m) == c.size()) {
    auto sol = solve_rational(m.transpose(), x);
    if (!sol.consistent) return false;
    for (const auto& l : sol.particular)
      if (interior ? l <= 0 : l < 0) return false;
    return true;
  }
  return feasible(c.size(), combination_constraints(all_rays, c, x, interior));
}

Fan Fan::validate(const RawFan& raw, std::uint64_t seed) {
  if (raw.dim < 1) fail("InvalidFan", "dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(raw.dim);
  Fan fan;
  fan.dim_ = raw.dim;
  fan.rays_ = raw.rays;
  std::set<IntVector> distinct;
  for (std::size_t i = 0; i < raw.rays.size(); ++i) {
    const auto& r = raw.rays[i];
    if (r.size() != n) fail("DimensionMismatch", "ray " + std::to_string(i) + " has wrong length");
    if (content(r) == 0) fail("NotPrimitive", "ray " + std::to_string(i) + " is zero");
    if (content(r) != 1) fail("NotPrimitive", "ray " + std::to_string(i) + " is not primitive");
    if (!distinct.insert(r).second)
      fail("NotStronglyConvex", "duplicate ray " + std::to_string(i));
  }
  std::set<Cone> listed;
  for (auto c : raw.max_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      fail("InvalidCone", "cone " + cone_key(c) + " repeats a ray");
    for (int r : c)
      if (r < 0 || static_cast<std::size_t>(r) >= raw.rays.size())
        fail("InvalidCone", "cone " + cone_key(c) + " uses an unknown ray");
    listed.insert(c);
  }
  std::set<Cone> all;
  all.insert(Cone{});
  for (const auto& c : listed) {
    if (!c.empty()) {
      // some u > 0 on every generator
      std::vector<LinearConstraint> pos;
      for (int r : c) pos.push_back({to_rational(fan.ray(r)), 0, LinearConstraint::Kind::gt});
      if (!feasible(n, pos)) fail("NotStronglyConvex", "cone " + cone_key(c) + " contains a line");
    }
    auto faces = cone_faces(fan.rays_, c);
    for (int r : c)
      if (!std::binary_search(faces.begin(), faces.end(), Cone{r}))
        fail("InvalidCone", "ray " + std::to_string(r) + " is not extremal in cone " + cone_key(c));
    all.insert(faces.begin(), faces.end());
  }
  std::vector<Cone> cones(all.begin(), all.end());
  std::vector<int> dims;
  for (const auto& c : cones) dims.push_back(static_cast<int>(rank_of(fan.rays_, c)));
  std::vector<std::size_t> order(cones.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dims[a] != dims[b]) return dims[a] < dims[b];
    return cones[a] < cones[b];
  });
  for (std::size_t i : order) {
    fan.index_.emplace(cones[i], fan.cones_.size());
    fan.cones_.push_back(cones[i]);
    fan.cone_dims_.push_back(dims[i]);
  }
  for (const auto& c : fan.cones_) {
    bool maximal = true;
    for (const auto& d : fan.cones_)
      if (d.size() > c.size() && is_subset(c, d)) {
        maximal = false;
        break;
      }
    if (maximal) fan.maximal_.push_back(c);
  }
  // pairwise intersections through a strictly separating hyperplane
  for (std::size_t i = 0; i < fan.maximal_.size(); ++i)
    for (std::size_t j = i + 1; j < fan.maximal_.size(); ++j) {
      const auto& s = fan.maximal_[i];
      const auto& t = fan.maximal_[j];
      Cone common;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
      std::vector<LinearConstraint> sep;
      for (int r : s) {
        bool shared = std::binary_search(common.begin(), common.end(), r);
        sep.push_back({to_rational(fan.ray(r)), 0,
                       shared ? LinearConstraint::Kind::eq : LinearConstraint::Kind::gt});
      }
      for (int r : t) {
        if (std::binary_search(common.begin(), common.end(), r)) continue;
        RatVector neg = to_rational(fan.ray(r));
        for (auto& x : neg) x = -x;
        sep.push_back({neg, 0, LinearConstraint::Kind::gt});
      }
      if (!feasible(n, sep))
        fail("OverlappingCones", "cones " + cone_key(s) + " and " + cone_key(t) +
                                     " do not meet in a common face");
    }
  fan.simplicial_ = true;
  fan.smooth_ = true;
  for (const auto& c : fan.maximal_) {
    if (static_cast<std::size_t>(fan.cone_dim(c)) != c.size()) {
      fan.simplicial_ = false;
      fan.smooth_ = false;
      break;
    }
    if (lattice_index(ray_matrix(fan, c)) != 1) fan.smooth_ = false;
  }
  bool complete = true;
  for (const auto& c : fan.maximal_)
    if (fan.cone_dim(c) != raw.dim) complete = false;
  if (complete) {
    for (const auto& c : fan.cones_) {
      if (fan.cone_dim(c) != raw.dim - 1) continue;
      int count = 0;
      for (const auto& m : fan.maximal_)
        if (is_subset(c, m)) ++count;
      if (count != 2) {
        complete = false;
        break;
      }
    }
  }
  if (complete) {
    Rng rng = Rng(seed).split(1);
    for (int trial = 0; trial < 1000 && complete; ++trial) {
      RatVector x(n);
      bool zero = true;
      for (auto& v : x) {
        v = rng.uniform(-1000, 1000);
        if (v != 0) zero = false;
      }
      if (zero) continue;
      bool covered = false;
      for (const auto& m : fan.maximal_)
        if (cone_contains(fan.rays_, m, x, false)) {
          covered = true;
          break;
        }
      if (!covered) complete = false;
    }
  }
  fan.complete_ = complete;
  return fan;
}

std::size_t Fan::index_of(const Cone& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) fail("UnknownCone", "cone '" + cone_key(c) + "' is not in the fan");
  return it->second;
}

int Fan::cone_dim(const Cone& c) const { return cone_dims_[index_of(c)]; }

std::vector<Cone> Fan::star(const Cone& alpha) const {
  std::vector<Cone> out;
  for (const auto& c : cones_)
    if (is_subset(alpha, c)) out.push_back(c);
  return out;
}

std::vector<Cone> Fan::covers(const Cone& alpha) const {
  std::vector<Cone> out;
  const int d = cone_dim(alpha);
  for (const auto& c : cones_)
    if (is_subset(alpha, c) && cone_dim(c) == d + 1) out.push_back(c);
  return out;
}

std::vector<Cone> Fan::cones_of_dim(int d) const {
  std::vector<Cone> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cone_dims_[i] == d) out.push_back(cones_[i]);
  return out;
}

RawFan Fan::raw() const { return {dim_, rays_, maximal_}; }

IntMatrix ray_matrix(const Fan& fan, const Cone& c) {
  IntMatrix m(c.size(), static_cast<std::size_t>(fan.dim()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = fan.ray(c[i])[j];
  return m;
}

Integer multiplicity(const Fan& fan, const Cone& c) {
  if (c.empty()) return 1;
  if (static_cast<std::size_t>(fan.cone_dim(c)) != c.size())
    fail("NotSimplicial", "cone " + cone_key(c) + " is not simplicial");
  return lattice_index(ray_matrix(fan, c));
}

Rational relative_multiplicity(const Fan& fan, const Cone& alpha, const Cone& beta) {
  if (!is_subset(alpha, beta)) fail("NotAFace", cone_key(alpha) + " is not a face of " + cone_key(beta));
  Integer ma = multiplicity(fan, alpha);
  Rational out(multiplicity(fan, beta), ma);
  out.canonicalize();
  for (int r : cone_difference(beta, alpha)) {
    Rational f(ma, multiplicity(fan, cone_union(alpha, {r})));
    f.canonicalize();
    out *= f;
  }
  return out;
}

IntMatrix quotient_projection(const Fan& fan, const Cone& alpha) {
  const std::size_t n = static_cast<std::size_t>(fan.dim());
  if (alpha.empty()) return IntMatrix::identity(n);
  auto snf = smith_normal_form(ray_matrix(fan, alpha));
  const std::size_t r = snf.rank();
  IntMatrix p(n - r, n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = snf.V(j, r + i);
  return p;
}

Integer relative_multiplicity_snf(const Fan& fan, const Cone& alpha, const Cone& beta) {
  if (!is_subset(alpha, beta)) fail("NotAFace", cone_key(alpha) + " is not a face of " + cone_key(beta));
  auto extra = cone_difference(beta, alpha);
  if (extra.empty()) return 1;
  IntMatrix p = quotient_projection(fan, alpha);
  std::vector<IntVector> imgs;
  for (int r : extra) imgs.push_back(primitive(p * fan.ray(r)));
  return lattice_index(IntMatrix::from_rows(imgs));
}

IntVector StarFan::project(const IntVector& v) const { return projection * v; }

RatVector StarFan::project(const RatVector& v) const { return to_rational(projection) * v; }

StarFan star_fan(const Fan& fan, const Cone& alpha) {
  StarFan s;
  s.alpha = alpha;
  s.projection = quotient_projection(fan, alpha);
  s.cones = fan.star(alpha);
  for (const auto& b : s.cones)
    for (int r : cone_difference(b, alpha))
      if (!s.images.count(r)) s.images.emplace(r, primitive(s.projection * fan.ray(r)));
  return s;
}

Fan StarFan::as_fan(std::vector<int>* ray_map) const {
  RawFan raw;
  raw.dim = static_cast<int>(projection.rows());
  std::map<IntVector, int> by_image;
  std::map<int, int> new_index;
  std::vector<int> back;
  for (const auto& [r, img] : images) {
    auto it = by_image.find(img);
    if (it == by_image.end()) {
      it = by_image.emplace(img, static_cast<int>(raw.rays.size())).first;
      raw.rays.push_back(img);
      back.push_back(r);
    }
    new_index[r] = it->second;
  }
  for (const auto& b : cones) {
    bool maximal = true;
    for (const auto& c : cones)
      if (c.size() > b.size() && is_subset(b, c)) maximal = false;
    if (!maximal) continue;
    Cone img;
    for (int r : cone_difference(b, alpha)) img.push_back(new_index.at(r));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    raw.max_cones.push_back(img);
  }
  if (ray_map) *ray_map = back;
  if (raw.dim == 0) {
    Fan f;
    return f;
  }
  return Fan::validate(raw);
}

Cone containing_cone(const Fan& fan, const RatVector& x) {
  for (const auto& c : fan.cones())
    if (cone_contains(fan.rays(), c, x, true)) return c;
  fail("OutsideSupport", "point is not in the support of the fan");
}

namespace {

std::vector<Cone> pulling(const std::vector<IntVector>& rays, const Cone& c) {
  if (rank_of(rays, c) == c.size()) return {c};
  const int apex = c.front();
  std::vector<Cone> out;
  for (const auto& f : facets(rays, c)) {
    if (std::binary_search(f.begin(), f.end(), apex)) continue;
    for (auto s : pulling(rays, f)) {
      s.push_back(apex);
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
  }
  return out;
}

RatVector interior_point(const Fan& fan, const Cone& c) {
  RatVector x(static_cast<std::size_t>(fan.dim()), Rational(0));
  for (int r : c)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += fan.ray(r)[j];
  return x;
}

std::map<Cone, Cone> map_back(const Fan& fine, const Fan& coarse) {
  std::map<Cone, Cone> m;
  for (const auto& c : fine.cones()) m.emplace(c, containing_cone(coarse, interior_point(fine, c)));
  return m;
}

}  // namespace

Refinement triangulate(const Fan& fan) {
  if (fan.simplicial()) {
    Refinement r{fan, {}};
    for (const auto& c : fan.cones()) r.cone_map.emplace(c, c);
    return r;
  }
  RawFan raw = fan.raw();
  raw.max_cones.clear();
  for (const auto& m : fan.maximal_cones())
    for (const auto& s : pulling(fan.rays(), m)) raw.max_cones.push_back(s);
  Fan t = Fan::validate(raw);
  return {t, map_back(t, fan)};
}

Refinement smooth_refine(const Fan& fan) {
  Fan cur = triangulate(fan).fan;
  if (cur.smooth() && fan.simplicial()) return triangulate(fan);
  for (;;) {
    const Cone* bad = nullptr;
    for (const auto& c : cur.cones())
      if (!c.empty() && multiplicity(cur, c) != 1) {
        bad = &c;
        break;
      }
    if (!bad) break;
    const Cone tau = *bad;
    // shortest nonzero point of the fundamental parallelepiped
    auto lambdas = fractional_solutions(ray_matrix(cur, tau).transpose());
    const RatVector* best = nullptr;
    Rational best_sum;
    for (const auto& l : lambdas) {
      Rational s = 0;
      for (const auto& x : l) s += x;
      if (s == 0) continue;
      if (!best || s < best_sum || (s == best_sum && l < *best)) {
        best = &l;
        best_sum = s;
      }
    }
    if (!best) internal_fail("ResolutionFailed", "no interior lattice point in " + cone_key(tau));
    RatVector w(static_cast<std::size_t>(cur.dim()), Rational(0));
    for (std::size_t i = 0; i < tau.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += (*best)[i] * cur.ray(tau[i])[j];
    RawFan raw = cur.raw();
    const int fresh = static_cast<int>(raw.rays.size());
    raw.rays.push_back(primitive(w));
    std::vector<Cone> next;
    for (const auto& m : raw.max_cones) {
      if (!is_subset(tau, m)) {
        next.push_back(m);
        continue;
      }
      for (int r : tau) {
        Cone c = cone_difference(m, {r});
        c.push_back(fresh);
        std::sort(c.begin(), c.end());
        next.push_back(c);
      }
    }
    raw.max_cones = next;
    cur = Fan::validate(raw);
  }
  return {cur, map_back(cur, fan)};
}

}  // namespace torweight
