#pragma once

#include "torweight/fan.hpp"
#include "torweight/flag.hpp"
#include "torweight/weights.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace torweight {

// Ray values a_rho of the divisor sum a_rho D_rho.
using Divisor = std::map<int, Rational>;

// P = {m : <m, v_rho> >= -a_rho}. vertices[i] belongs to maximal cone i in
// fan order; faces[alpha] lists the vertices of F_alpha.
struct Polytope {
  int dim = 0;
  std::vector<IntVector> normals;
  RatVector offsets;
  std::vector<RatVector> vertices;
  std::map<Cone, std::vector<std::size_t>> faces;
  bool lattice = false;
  // strictly convex support function: the normal fan is the fan itself
  bool ample = false;
};

// nef accepts convex support functions, whose faces F_alpha may collapse.
enum class Positivity { ample, nef };

// Throws NotComplete, NotAmple (not (strictly) convex, or not linear on a
// non-simplicial cone), UnknownRay.
Polytope polytope_from_divisor(const Fan& fan, const Divisor& a, Positivity need = Positivity::ample);
bool is_ample(const Fan& fan, const Divisor& a);

constexpr std::uint64_t kCountBudget = 10000000;

// |t F_alpha meet M|, or the points in the relative interior. Throws
// TooLarge past the enumeration budget.
Integer count_points(const Polytope& p, const Cone& alpha, long t, bool interior = false);

// Coefficients in t, lowest first.
struct EhrhartPolynomial {
  RatVector coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational operator()(const Rational& t) const;
};

// L(F_alpha, t) from counts at t = 0..dim F_alpha. Throws NotLattice, TooLarge.
EhrhartPolynomial ehrhart_polynomial(const Polytope& p, const Cone& alpha = {});

// Lattice ample divisors with ray values drawn from [0, 3], scaled to clear
// vertex denominators. Throws NoAmpleFound.
std::vector<Divisor> sample_ample(const Fan& fan, std::size_t count, std::uint64_t seed);

// sum_alpha a_alpha L(F_alpha, t) == 0 for every polytope.
bool kernel_relation_check(const Fan& fan, const std::map<Cone, Rational>& a, const std::vector<Polytope>& ps);

// Basis of the common kernel of the maps a -> sum a_alpha L(F_alpha, t).
std::vector<std::map<Cone, Rational>> ehrhart_relations(const Fan& fan, const std::vector<Polytope>& ps);

// g integral and annihilating every relation.
bool ehrhart_membership(const Weight& g, const std::vector<std::map<Cone, Rational>>& relations);

// alpha -> L(F_alpha, 1), for nef lattice divisors. Throws NotAmple, NotLattice.
Weight euler_char_cocycle(const Fan& fan, const Divisor& a);

// (g_Y u g_E)(0)
Integer pairing_euler(const Fan& fan, const Weight& gy, const Weight& ge, const Flag& flag, const RatVector& v);

}  // namespace torweight
