#pragma once

#include "torweight/fan.hpp"
#include "torweight/flag.hpp"
#include "torweight/weights.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace torweight {

struct Meet {
  bool meets = false;
  // dimension of gamma meet (epsilon + v), -1 when empty
  int dim = -1;
};

// Exact test of gamma meet (epsilon + v) for cones given by ray indices.
Meet cone_meets_translate(const std::vector<IntVector>& rays, const Cone& gamma, const Cone& epsilon,
                          const RatVector& v);

// v avoids span(gamma) + span(epsilon) whenever that sum is a proper subspace.
bool is_generic_displacement(const Fan& fan, const RatVector& v);

// Integer entries in [-1000, 1000]; resamples until generic.
RatVector sample_displacement(const Fan& fan, std::uint64_t seed);

using PairCoeffs = std::map<std::pair<Cone, Cone>, Integer>;

// m^beta_{gamma,epsilon} = [N : N_gamma + N_epsilon] when gamma meets
// epsilon + v, over gamma, epsilon containing beta with complementary
// codimension. Only nonzero entries. Throws NonGenericVector.
PairCoeffs fan_displacement_coeffs(const Fan& fan, const Cone& beta, const RatVector& v);

struct DisplacementData {
  RatVector v;
  std::optional<std::uint64_t> seed;
  std::map<Cone, PairCoeffs> m;
};

DisplacementData displacement_data(const Fan& fan, const RatVector& v,
                                   std::optional<std::uint64_t> seed = std::nullopt);

// Product of Grothendieck weights. Inputs are validated (NotAWeight); the
// result is flagged rational only if an input is.
Weight gw_product(const Fan& fan, const Weight& g1, const Weight& g2, const RRMatrix& rr,
                  const DisplacementData& d);
Weight gw_product(const Fan& fan, const Weight& g1, const Weight& g2, const Flag& flag, const RatVector& v);

// Cup product of Minkowski weights, of codim k1 + k2.
MinkowskiWeight mw_product(const Fan& fan, const MinkowskiWeight& f1, const MinkowskiWeight& f2,
                           const DisplacementData& d);

}  // namespace torweight
