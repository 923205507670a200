#pragma once

#include "torweight/rational.hpp"

#include <cstddef>
#include <vector>

namespace torweight {

// coeffs . x  (>= | > | =)  rhs
struct LinearConstraint {
  enum class Kind { ge, gt, eq };
  RatVector coeffs;
  Rational rhs;
  Kind kind = Kind::ge;
};

// Exact feasibility by equality substitution then Fourier-Motzkin
// elimination. Strict inequalities are tracked through elimination.
bool feasible(std::size_t num_vars, const std::vector<LinearConstraint>& constraints);

// Dimension of the affine hull of a polyhedron given by non-strict
// constraints, or -1 when empty.
int polyhedron_dimension(std::size_t num_vars, const std::vector<LinearConstraint>& constraints);

// Dimension of the image of the polyhedron under x -> M x, or -1 when empty.
int projected_dimension(std::size_t num_vars, const std::vector<LinearConstraint>& constraints,
                        const std::vector<RatVector>& map_rows);

}  // namespace torweight
