#pragma once

#include "torweight/cyclotomic.hpp"
#include "torweight/fan.hpp"
#include "torweight/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace torweight {

struct Flag {
  // f_1, ..., f_k with k >= n - 1; F_i is the span of the first i.
  std::vector<RatVector> vectors;
  std::optional<std::uint64_t> seed;
};

// t^alpha_rho for every cone alpha and ray rho of alpha.
using TCoefficients = std::map<Cone, std::map<int, Rational>>;

// Cofactor solution of F_{n-k+1} meet span(alpha). Maximal cones are scaled
// so that sum t v = f_1; rays get 1; other cones keep the raw minors.
// Throws DegenerateFlag.
TCoefficients t_coefficients(const Fan& fan, const Flag& flag);

// Integer entries uniform in [-10^4, 10^4]; resamples until generic.
// Non-simplicial fans: generic for smooth_refine(fan).
Flag sample_flag(const Fan& fan, std::uint64_t seed);

// G^alpha_beta as angle tuples theta in [0,1)^k over the rays of beta not in
// alpha; the character value at rho is exp(2 pi i theta_rho).
struct GroupData {
  Cone alpha;
  Cone beta;
  std::vector<int> extra;
  std::vector<RatVector> elements;
  // lcm of the denominators
  unsigned long exponent = 1;

  std::vector<std::vector<CycloNumber>> characters(const CycloContext& ctx) const;
};

GroupData group_characters(const Fan& fan, const Cone& alpha, const Cone& beta);

class RRMatrix {
 public:
  RRMatrix() = default;
  explicit RRMatrix(const Fan& fan) : cones_(fan.cones()) {}

  const std::vector<Cone>& cones() const noexcept { return cones_; }

  Rational mu(const Cone& alpha, const Cone& beta) const;
  Rational nu(const Cone& alpha, const Cone& beta) const;
  void set_mu(const Cone& alpha, const Cone& beta, const Rational& v);
  void set_nu(const Cone& alpha, const Cone& beta, const Rational& v);

  // Nonzero entries keyed by (alpha, beta).
  const std::map<std::pair<Cone, Cone>, Rational>& mu_entries() const noexcept { return mu_; }
  const std::map<std::pair<Cone, Cone>, Rational>& nu_entries() const noexcept { return nu_; }
  bool has_nu() const noexcept { return !nu_.empty(); }

 private:
  std::vector<Cone> cones_;
  std::map<std::pair<Cone, Cone>, Rational> mu_;
  std::map<std::pair<Cone, Cone>, Rational> nu_;
};

// mu_alpha(beta) = |G|^{-1} sum_g (prod_rho 1/(1 - a_rho(g) e^{-mult(alpha+rho) t_rho}))_[0]
Rational mu_entry(const Fan& fan, const TCoefficients& t, const Cone& alpha, const Cone& beta,
                  const CycloContext& ctx);

RRMatrix mu_matrix(const Fan& fan, const Flag& flag);

// Fills nu = mu^{-1} by the unitriangular recursion.
void nu_matrix(RRMatrix& m);

// Coefficients of [V(beta)] in the product of D_rho^{a_rho}.
std::map<Cone, Rational> divisor_monomial_expand(const Fan& fan, const Flag& flag,
                                                 const std::map<int, int>& exponents);

}  // namespace torweight
