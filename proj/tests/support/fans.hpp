#pragma once

#include "torweight/fan.hpp"

#include "torweight/linalg.hpp"

#include <initializer_list>
#include <map>
#include <vector>

namespace testfans {

using torweight::Cone;
using torweight::Fan;
using torweight::IntVector;
using torweight::RawFan;

inline Fan make(int dim, std::initializer_list<std::initializer_list<long>> rays,
                std::initializer_list<std::initializer_list<int>> cones) {
  RawFan raw;
  raw.dim = dim;
  for (auto& r : rays) {
    IntVector v;
    for (long x : r) v.emplace_back(x);
    raw.rays.push_back(v);
  }
  for (auto& c : cones) raw.max_cones.emplace_back(c);
  return Fan::validate(raw);
}

inline Fan p1() { return make(1, {{1}, {-1}}, {{0}, {1}}); }
inline Fan p2() { return make(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }
inline Fan p1xp1() { return make(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
// Hirzebruch F1; ray 1 = (0,1) is the exceptional curve
inline Fan f1() { return make(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
// rays (1,1),(-1,1),(-1,-1),(1,-1)
inline Fan diag() { return make(2, {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
inline Fan p112() { return make(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}); }
// rays e1, e2, (0,-1), (-2,3)
inline Fan example2d() { return make(2, {{0, 1}, {1, 0}, {0, -1}, {-2, 3}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
inline Fan p1123() {
  return make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -2, -3}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
inline Fan p3() {
  return make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
// fan over the faces of the cube [-1,1]^3
inline Fan cube() {
  return make(3,
              {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}, {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}},
              {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 4, 5}, {2, 3, 6, 7}, {0, 2, 4, 6}, {1, 3, 5, 7}});
}

// P2 blown up at the fixed point of cone {0,1}
inline Fan bl_p2() { return make(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {1, 3}, {1, 2}, {0, 2}}); }
// not complete
inline Fan quadrant() { return make(2, {{1, 0}, {0, 1}}, {{0, 1}}); }

// complete singular simplicial 4-fold; some codim 2 weight has no integral lift
inline Fan singular4() {
  return make(4,
              {{0, 0, 1, 0}, {-1, 0, 1, 1}, {-2, 0, -2, 1}, {-2, 0, 1, 0},
               {1, 0, 0, -1}, {0, 2, 1, -2}, {2, -2, -1, 1}, {0, 2, -1, 0}},
              {{0, 1, 3, 5}, {0, 1, 3, 6}, {0, 1, 5, 7}, {0, 1, 6, 7}, {0, 3, 4, 5}, {0, 3, 4, 6},
               {0, 4, 5, 6}, {0, 5, 6, 7}, {1, 2, 3, 6}, {1, 2, 3, 7}, {1, 2, 6, 7}, {1, 3, 5, 7},
               {2, 3, 4, 5}, {2, 3, 4, 6}, {2, 3, 5, 7}, {2, 4, 5, 7}, {2, 4, 6, 7}, {4, 5, 6, 7}});
}

// Z-basis of the integer Minkowski weights of codim k, from the balancing
// system written out directly (one row per coordinate of N / alpha).
inline std::vector<std::map<Cone, torweight::Rational>> minkowski_basis(const Fan& fan, int k) {
  using namespace torweight;
  std::vector<Cone> ck;
  for (const auto& c : fan.cones())
    if (fan.codim(c) == k) ck.push_back(c);
  std::vector<IntVector> rows;
  for (const auto& a : fan.cones()) {
    if (fan.codim(a) != k + 1) continue;
    auto p = quotient_projection(fan, a);
    std::vector<IntVector> r(p.rows(), IntVector(ck.size(), Integer(0)));
    for (std::size_t j = 0; j < ck.size(); ++j) {
      if (!is_subset(a, ck[j])) continue;
      auto extra = cone_difference(ck[j], a);
      auto v = primitive(p * fan.ray(extra.front()));
      for (std::size_t u = 0; u < p.rows(); ++u) r[u][j] = v[u];
    }
    for (auto& x : r) rows.push_back(x);
  }
  std::vector<std::map<Cone, Rational>> out;
  std::vector<IntVector> kernel;
  if (rows.empty()) {
    for (std::size_t j = 0; j < ck.size(); ++j) {
      IntVector e(ck.size(), Integer(0));
      e[j] = 1;
      kernel.push_back(e);
    }
  } else {
    kernel = solve_integer(IntMatrix::from_rows(rows, ck.size()), IntVector(rows.size(), Integer(0))).kernel;
  }
  for (const auto& b : kernel) {
    std::map<Cone, Rational> f;
    for (std::size_t j = 0; j < ck.size(); ++j)
      if (b[j] != 0) f[ck[j]] = Rational(b[j]);
    out.push_back(f);
  }
  return out;
}

}  // namespace testfans
