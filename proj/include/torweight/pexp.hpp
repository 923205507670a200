#pragma once

#include "torweight/fan.hpp"
#include "torweight/linalg.hpp"
#include "torweight/weights.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace torweight {

// sum c e^m with m in M (x) Q. Zero coefficients are never stored.
class ExpSum {
 public:
  ExpSum() = default;
  explicit ExpSum(std::size_t dim) : dim_(dim) {}

  static ExpSum constant(std::size_t dim, const Rational& c);
  static ExpSum monomial(const RatVector& m, const Rational& c = Rational(1));
  // 1 - e^m
  static ExpSum one_minus(const RatVector& m);

  std::size_t dim() const noexcept { return dim_; }
  const std::map<RatVector, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const RatVector& m, const Rational& c);
  // Value at the identity of the torus.
  Rational value_at_zero() const;
  // Exponents collapsed along s -> s*u: lambda = <m, u>.
  std::map<Rational, Rational> along(const IntVector& u) const;

  ExpSum& operator+=(const ExpSum& o);
  ExpSum& operator-=(const ExpSum& o);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  ExpSum scaled(const Rational& c) const;
  friend bool operator==(const ExpSum& a, const ExpSum& b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }
  friend bool operator!=(const ExpSum& a, const ExpSum& b) { return !(a == b); }

 private:
  std::size_t dim_ = 0;
  std::map<RatVector, Rational> terms_;
};

struct ExpRational {
  ExpSum num;
  ExpSum den;
};

// Cross-multiplication test; no simplification is attempted.
bool same_function(const ExpRational& a, const ExpRational& b);

// Values on maximal cones.
struct PExpFunction {
  std::map<Cone, ExpSum> values;
};

// Needs a complete fan and data on exactly the maximal cones. Continuity is
// checked across every codim 1 face. Throws Discontinuous.
PExpFunction validate_pexp(const Fan& fan, const std::map<Cone, ExpSum>& data);

PExpFunction pexp_product(const PExpFunction& a, const PExpFunction& b);
PExpFunction pexp_constant(const Fan& fan, const Rational& c);

// 1 / prod (1 - e^{P^T m_i}) for a unimodular cone in Z^d with the given
// generators, m_i the dual basis and P (d x n) the projection from N.
ExpRational smooth_chart(const std::vector<IntVector>& generators, const IntMatrix& projection);

// Multiplicity of V(alpha) at the fixed point of sigma as a list of summands,
// one per smooth cone of a resolution of the chart. Empty when alpha is not a
// face of sigma.
std::vector<ExpRational> multiplicity_terms(const Fan& fan, const Cone& sigma, const Cone& alpha);

// The same, over a common denominator.
ExpRational equivariant_multiplicity(const Fan& fan, const Cone& sigma, const Cone& alpha);

// Laurent coefficients at s = 0 of sum num/den restricted to s -> s*u,
// keyed by order, from the pole order up to 0. Throws NonGenericDirection if
// a denominator vanishes on the line.
std::map<int, Rational> laurent_along(const std::vector<ExpRational>& terms, const IntVector& u);

// Constant term of the above; internal PoleSurvives if a negative order
// does not cancel.
Rational limit_along(const std::vector<ExpRational>& terms, const IntVector& u);

// Integer direction, entries in [-1000, 1000], generic for every chart of
// the fan.
IntVector sample_direction(const Fan& fan, std::uint64_t seed);
bool is_generic_direction(const Fan& fan, const IntVector& u);

// g(alpha) = lim sum_sigma eps_sigma(V(alpha)) phi_sigma. Throws
// NonGenericDirection, NonIntegralLimit.
Weight forgetful(const Fan& fan, const PExpFunction& phi, const IntVector& u);
Weight forgetful(const Fan& fan, const PExpFunction& phi, std::uint64_t seed);

struct SpanResult {
  bool member = false;
  IntVector coefficients;
  // functional on cones, integral on every generator, not on the target
  std::map<Cone, Rational> certificate;
  Integer modulus;
};

// Z-span membership. Weights must be integral (NotIntegral).
SpanResult span_test(const std::vector<Weight>& generators, const Weight& target);

// e^{scale m_sigma} with <m_sigma, v_rho> = value(rho) on each maximal cone;
// missing rays count as 0. Throws NotPiecewiseLinear.
PExpFunction exp_pl(const Fan& fan, const std::map<int, Rational>& ray_values, const Rational& scale);

}  // namespace torweight
