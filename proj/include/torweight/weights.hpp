#pragma once

#include "torweight/fan.hpp"
#include "torweight/flag.hpp"
#include "torweight/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace torweight {

// Function on cones; missing cones are 0. `rational` marks values outside Z
// as intended (a GW over Q).
struct Weight {
  std::map<Cone, Rational> values;
  bool rational = false;

  Rational at(const Cone& c) const;
  void set(const Cone& c, const Rational& v);
  bool integral() const;
};

// Values on the cones of codimension `codim`.
struct MinkowskiWeight {
  int codim = 0;
  std::map<Cone, Rational> values;

  Rational at(const Cone& c) const;
};

bool operator==(const Weight& a, const Weight& b);

// Primitive generator of the image of beta in N_alpha, for alpha a facet of beta.
IntVector relative_generator(const Fan& fan, const Cone& alpha, const Cone& beta);

// sum_gamma coeffs[gamma] g(gamma) = 0, the coordinate `coord` of the
// balancing condition at alpha.
struct Relation {
  Cone alpha;
  std::size_t coord = 0;
  std::map<Cone, Rational> coeffs;
};

std::vector<Relation> balancing_relations(const Fan& fan, const RRMatrix& rr);

struct Violation {
  Cone alpha;
  std::size_t coord = 0;
  Rational value;
};

struct Verdict {
  bool ok = false;
  bool integral = true;
  // cones the check actually ran on (differs from the input fan after refinement)
  bool refined = false;
  std::vector<Violation> violations;
};

// Balancing of nu * g. Non-simplicial fans are refined first and g pulled
// back. Throws NotComplete.
Verdict is_grothendieck_weight(const Fan& fan, const Weight& g, const Flag& flag);
Verdict is_grothendieck_weight(const Fan& fan, const Weight& g, const RRMatrix& rr);

bool is_minkowski_weight(const Fan& fan, const MinkowskiWeight& f);

struct LowDimVerdict {
  bool ok = false;
  bool constant_on_maximal = false;
  // dim 2: the ray sum; dim 3: conditions (a) and (b)
  bool ray_condition = true;
  bool condition_a = true;
  bool condition_b = true;
};

// Closed-form criteria in dimensions 1 to 3. Throws DimensionTooLarge.
LowDimVerdict low_dim_criteria(const Fan& fan, const Weight& g);

// g(alpha) = sum_beta mu_alpha(beta) f(beta)
Weight rr_map_T(const Fan& fan, const MinkowskiWeight& f, const RRMatrix& rr);
Weight rr_map_T(const Fan& fan, const Weight& graded, const RRMatrix& rr);

// Components f_k, k = 0..dim, with g = sum T(f_k). Throws NotAWeight.
std::vector<MinkowskiWeight> rr_inverse_image(const Fan& fan, const Weight& g, const RRMatrix& rr);

Weight pullback_refinement(const Weight& g, const Refinement& r);
// Extension by zero from a subfan; throws NotASubfan.
Weight pushforward_open(const Fan& sub, const Weight& g, const Fan& big);

struct Lift {
  std::optional<Weight> weight;
  // On failure: a rational combination of the balancing relations, as a
  // functional on cones. It is integral on the cones of codim > k and its
  // value on f is not an integer, so no integral lift can vanish on it.
  // modulus is the elementary divisor it came from (0: no rational lift).
  std::map<Cone, Rational> certificate;
  Integer modulus;
};

// Integer g vanishing in codim < k with g = f in codim k.
Lift lift_minkowski(const Fan& fan, const MinkowskiWeight& f, const RRMatrix& rr);

// Largest k with g = 0 in codim < k; dim + 1 for g = 0.
int filtration_level(const Fan& fan, const Weight& g);

// Full mu and nu for a flag.
RRMatrix rr_matrix(const Fan& fan, const Flag& flag);

}  // namespace torweight
