#include "torweight/polyhedra.hpp"

#include "torweight/linalg.hpp"

#include <map>
#include <utility>

namespace torweight {

namespace {

struct Ineq {
  RatVector c;
  Rational r;
  bool strict = false;
};

bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Scales by a positive factor so the first nonzero coefficient is +-1.
void normalize(Ineq& q) {
  for (const auto& x : q.c) {
    if (x == 0) continue;
    Rational s = abs(x);
    for (auto& y : q.c) y /= s;
    q.r /= s;
    return;
  }
}

std::vector<Ineq> dedupe(std::vector<Ineq> in) {
  std::map<RatVector, std::pair<Rational, bool>> best;
  std::vector<Ineq> trivial;
  for (auto& q : in) {
    normalize(q);
    if (is_zero(q.c)) {
      trivial.push_back(std::move(q));
      continue;
    }
    auto it = best.find(q.c);
    if (it == best.end()) {
      best.emplace(q.c, std::make_pair(q.r, q.strict));
    } else if (q.r > it->second.first || (q.r == it->second.first && q.strict)) {
      it->second = {q.r, q.strict};
    }
  }
  std::vector<Ineq> out = std::move(trivial);
  for (auto& [c, v] : best) out.push_back({c, v.first, v.second});
  return out;
}

bool trivially_satisfied(const Ineq& q) { return q.strict ? 0 > q.r : 0 >= q.r; }

}  // namespace

bool feasible(std::size_t num_vars, const std::vector<LinearConstraint>& constraints) {
  std::vector<LinearConstraint> eqs;
  std::vector<Ineq> ineqs;
  for (const auto& c : constraints) {
    if (c.kind == LinearConstraint::Kind::eq)
      eqs.push_back(c);
    else
      ineqs.push_back({c.coeffs, c.rhs, c.kind == LinearConstraint::Kind::gt});
  }
  // substitute equalities away
  while (!eqs.empty()) {
    auto e = std::move(eqs.back());
    eqs.pop_back();
    std::size_t j = num_vars;
    for (std::size_t k = 0; k < num_vars; ++k)
      if (e.coeffs[k] != 0) {
        j = k;
        break;
      }
    if (j == num_vars) {
      if (e.rhs != 0) return false;
      continue;
    }
    // x_j = (rhs - sum_{k != j} c_k x_k) / c_j
    Rational pivot = e.coeffs[j];
    auto substitute = [&](RatVector& c, Rational& r) {
      if (c[j] == 0) return;
      Rational f = c[j] / pivot;
      for (std::size_t k = 0; k < num_vars; ++k) c[k] -= f * e.coeffs[k];
      r -= f * e.rhs;
    };
    for (auto& other : eqs) substitute(other.coeffs, other.rhs);
    for (auto& q : ineqs) substitute(q.c, q.r);
  }
  ineqs = dedupe(std::move(ineqs));
  std::vector<bool> eliminated(num_vars, false);
  for (;;) {
    // pick the variable with the fewest generated pairs
    std::size_t best = num_vars;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < num_vars; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& q : ineqs) {
        if (q.c[j] > 0) ++pos;
        if (q.c[j] < 0) ++neg;
      }
      if (pos + neg == 0) {
        eliminated[j] = true;
        continue;
      }
      std::size_t cost = pos * neg;
      if (best == num_vars || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == num_vars) break;
    const std::size_t j = best;
    eliminated[j] = true;
    std::vector<Ineq> pos, neg, next;
    for (auto& q : ineqs) {
      if (q.c[j] > 0)
        pos.push_back(std::move(q));
      else if (q.c[j] < 0)
        neg.push_back(std::move(q));
      else
        next.push_back(std::move(q));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Rational a = p.c[j], b = -n.c[j];
        Ineq combined;
        combined.c.resize(num_vars);
        for (std::size_t k = 0; k < num_vars; ++k) combined.c[k] = b * p.c[k] + a * n.c[k];
        combined.c[j] = 0;
        combined.r = b * p.r + a * n.r;
        combined.strict = p.strict || n.strict;
        next.push_back(std::move(combined));
      }
    ineqs = dedupe(std::move(next));
    for (const auto& q : ineqs)
      if (is_zero(q.c) && !trivially_satisfied(q)) return false;
  }
  for (const auto& q : ineqs)
    if (!trivially_satisfied(q)) return false;
  return true;
}

namespace {

std::vector<RatVector> affine_hull_equations(std::size_t num_vars,
                                             const std::vector<LinearConstraint>& constraints) {
  std::vector<RatVector> eqs;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.kind == LinearConstraint::Kind::eq) {
      eqs.push_back(c.coeffs);
      continue;
    }
    auto probe = constraints;
    probe[i].kind = LinearConstraint::Kind::gt;
    if (!feasible(num_vars, probe)) eqs.push_back(c.coeffs);
  }
  return eqs;
}

}  // namespace

int polyhedron_dimension(std::size_t num_vars, const std::vector<LinearConstraint>& constraints) {
  if (!feasible(num_vars, constraints)) return -1;
  auto eqs = affine_hull_equations(num_vars, constraints);
  if (eqs.empty()) return static_cast<int>(num_vars);
  RatMatrix m = RatMatrix::from_rows(eqs);
  return static_cast<int>(num_vars - rank(m));
}

int projected_dimension(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                        const std::vector<RatVector>& map_rows) {
  if (!feasible(num_vars, constraints)) return -1;
  auto eqs = affine_hull_equations(num_vars, constraints);
  std::vector<RatVector> directions;
  if (eqs.empty()) {
    for (std::size_t k = 0; k < num_vars; ++k) {
      RatVector e(num_vars, Rational(0));
      e[k] = 1;
      directions.push_back(std::move(e));
    }
  } else {
    directions = kernel_basis(RatMatrix::from_rows(eqs));
  }
  if (directions.empty() || map_rows.empty()) return 0;
  RatMatrix m = RatMatrix::from_rows(map_rows, num_vars);
  std::vector<RatVector> images;
  for (const auto& d : directions) images.push_back(m * d);
  return static_cast<int>(rank(RatMatrix::from_rows(images)));
}

}  // namespace torweight
