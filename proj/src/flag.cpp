#include "torweight/flag.hpp"

#include "torweight/error.hpp"
#include "torweight/laurent.hpp"
#include "torweight/random.hpp"

#include <algorithm>

namespace torweight {

namespace {

void require_simplicial(const Fan& fan) {
  if (!fan.simplicial()) fail("NotSimplicial", "operation needs a simplicial fan");
}

}  // namespace

TCoefficients t_coefficients(const Fan& fan, const Flag& flag) {
  require_simplicial(fan);
  const std::size_t n = static_cast<std::size_t>(fan.dim());
  if (flag.vectors.size() + 1 < n) fail("DegenerateFlag", "flag needs at least n - 1 vectors");
  for (const auto& f : flag.vectors)
    if (f.size() != n) fail("DimensionMismatch", "flag vector of wrong length");
  RatMatrix fm = RatMatrix::from_rows(flag.vectors, n);
  if (rank(fm) != flag.vectors.size()) fail("DegenerateFlag", "flag vectors are dependent");
  TCoefficients out;
  for (const auto& c : fan.cones()) {
    const std::size_t k = c.size();
    if (k == 0) {
      out[c];
      continue;
    }
    if (k == 1) {
      out[c][c[0]] = 1;
      continue;
    }
    const std::size_t m = n - k + 1;
    // columns f_1..f_m, v_1..v_k
    RatMatrix a(n, n + 1);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, j) = flag.vectors[j][i];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, m + j) = Rational(fan.ray(c[j])[i]);
    RatVector x(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      RatMatrix minor(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t col = 0, cc = 0; col <= n; ++col) {
          if (col == j) continue;
          minor(i, cc++) = a(i, col);
        }
      x[j] = determinant(minor);
      if (j % 2 == 1) x[j] = -x[j];
    }
    Rational scale = 1;
    if (m == 1) {
      if (x[0] == 0) fail("DegenerateFlag", "f_1 is not in general position for " + cone_key(c));
      scale = 1 / x[0];
    }
    auto& row = out[c];
    for (std::size_t i = 0; i < k; ++i) {
      Rational t = -x[m + i] * scale;
      if (t == 0) fail("DegenerateFlag", "vanishing t-coefficient on cone " + cone_key(c));
      row[c[i]] = t;
    }
  }
  return out;
}

Flag sample_flag(const Fan& fan, std::uint64_t seed) {
  // membership on such fans runs on the refinement, so be generic there
  if (!fan.simplicial()) return sample_flag(smooth_refine(fan).fan, seed);
  Rng base(seed);
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = base.split(attempt);
    Flag flag;
    flag.seed = seed;
    for (int i = 0; i < fan.dim(); ++i) {
      RatVector v;
      for (int j = 0; j < fan.dim(); ++j) v.emplace_back(rng.uniform(-10000, 10000));
      flag.vectors.push_back(v);
    }
    try {
      t_coefficients(fan, flag);
      return flag;
    } catch (const Error& e) {
      if (e.code() != "DegenerateFlag") throw;
    }
  }
  internal_fail("DegenerateFlag", "no generic flag found");
}

std::vector<std::vector<CycloNumber>> GroupData::characters(const CycloContext& ctx) const {
  std::vector<std::vector<CycloNumber>> out;
  for (const auto& th : elements) {
    std::vector<CycloNumber> row;
    for (const auto& x : th) {
      if (x == 0) {
        row.emplace_back(1);
        continue;
      }
      row.push_back(root_of_unity(x.get_num().get_si(), x.get_den().get_ui(), ctx));
    }
    out.push_back(std::move(row));
  }
  return out;
}

GroupData group_characters(const Fan& fan, const Cone& alpha, const Cone& beta) {
  if (!is_subset(alpha, beta)) fail("NotAFace", cone_key(alpha) + " is not a face of " + cone_key(beta));
  if (static_cast<std::size_t>(fan.cone_dim(beta)) != beta.size())
    fail("NotSimplicial", "cone " + cone_key(beta) + " is not simplicial");
  GroupData g;
  g.alpha = alpha;
  g.beta = beta;
  g.extra = cone_difference(beta, alpha);
  if (g.extra.empty()) {
    g.elements.push_back({});
    return g;
  }
  IntMatrix p = quotient_projection(fan, alpha);
  IntMatrix b(p.rows(), g.extra.size());
  for (std::size_t j = 0; j < g.extra.size(); ++j) {
    auto img = primitive(p * fan.ray(g.extra[j]));
    for (std::size_t i = 0; i < p.rows(); ++i) b(i, j) = img[i];
  }
  g.elements = fractional_solutions(b);
  Integer e = 1;
  for (const auto& th : g.elements)
    for (const auto& x : th) e = lcm(e, x.get_den());
  g.exponent = e.get_ui();
  return g;
}

Rational mu_entry(const Fan& fan, const TCoefficients& t, const Cone& alpha, const Cone& beta,
                  const CycloContext& ctx) {
  auto g = group_characters(fan, alpha, beta);
  if (g.extra.empty()) return 1;
  const auto& tb = t.at(beta);
  std::vector<Integer> scale;
  RatVector values;
  for (int r : g.extra) {
    scale.push_back(multiplicity(fan, cone_union(alpha, {r})));
    values.push_back(tb.at(r));
  }
  CycloNumber total = 0;
  for (const auto& chars : g.characters(ctx)) {
    int poles = 0;
    for (const auto& a : chars)
      if (a == CycloNumber(1)) ++poles;
    std::vector<CycloSeries> factors;
    for (std::size_t i = 0; i < chars.size(); ++i)
      factors.push_back(factor_series(chars[i], Rational(scale[i]), poles));
    total += degree_zero_value(factors, values);
  }
  return rational_part(total) / static_cast<long>(g.elements.size());
}

Rational RRMatrix::mu(const Cone& alpha, const Cone& beta) const {
  auto it = mu_.find({alpha, beta});
  return it == mu_.end() ? Rational(0) : it->second;
}

Rational RRMatrix::nu(const Cone& alpha, const Cone& beta) const {
  auto it = nu_.find({alpha, beta});
  return it == nu_.end() ? Rational(0) : it->second;
}

void RRMatrix::set_mu(const Cone& alpha, const Cone& beta, const Rational& v) {
  if (v == 0)
    mu_.erase({alpha, beta});
  else
    mu_[{alpha, beta}] = v;
}

void RRMatrix::set_nu(const Cone& alpha, const Cone& beta, const Rational& v) {
  if (v == 0)
    nu_.erase({alpha, beta});
  else
    nu_[{alpha, beta}] = v;
}

RRMatrix mu_matrix(const Fan& fan, const Flag& flag) {
  require_simplicial(fan);
  auto t = t_coefficients(fan, flag);
  // one field per group exponent; a shared lcm order blows up the degree
  std::map<unsigned long, CycloContext> fields;
  RRMatrix m(fan);
  for (const auto& a : fan.cones())
    for (const auto& b : fan.star(a)) {
      const unsigned long e = group_characters(fan, a, b).exponent;
      auto it = fields.find(e);
      if (it == fields.end()) it = fields.emplace(e, make_cyclo_context(e)).first;
      m.set_mu(a, b, mu_entry(fan, t, a, b, it->second));
    }
  return m;
}

void nu_matrix(RRMatrix& m) {
  const auto& cones = m.cones();
  // cones are ordered by dimension, so faces come first
  for (const auto& a : cones) {
    for (const auto& b : cones) {
      if (!is_subset(a, b)) continue;
      if (a == b) {
        m.set_nu(a, b, 1);
        continue;
      }
      Rational s = 0;
      for (const auto& g : cones) {
        if (g == b || !is_subset(a, g) || !is_subset(g, b)) continue;
        Rational v = m.nu(a, g);
        if (v != 0) s += v * m.mu(g, b);
      }
      m.set_nu(a, b, -s);
    }
  }
}

std::map<Cone, Rational> divisor_monomial_expand(const Fan& fan, const Flag& flag,
                                                 const std::map<int, int>& exponents) {
  require_simplicial(fan);
  auto t = t_coefficients(fan, flag);
  Cone support;
  int l = 0;
  for (const auto& [r, a] : exponents) {
    if (a < 0) fail("InvalidExponent", "negative exponent on ray " + std::to_string(r));
    if (a == 0) continue;
    support.push_back(r);
    l += a;
  }
  std::sort(support.begin(), support.end());
  std::map<Cone, Rational> out;
  for (const auto& b : fan.cones_of_dim(l)) {
    if (!is_subset(support, b)) continue;
    const auto& tb = t.at(b);
    Rational v = 1;
    for (const auto& [r, a] : exponents)
      for (int i = 0; i < a; ++i) v *= tb.at(r);
    for (int r : b) v /= tb.at(r);
    v /= Rational(multiplicity(fan, b));
    if (v != 0) out[b] = v;
  }
  return out;
}

}  // namespace torweight
