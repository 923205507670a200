#pragma once

#include "torweight/cyclotomic.hpp"
#include "torweight/rational.hpp"

#include <map>
#include <vector>

namespace torweight {

// t / (1 - e^{-t}) = sum B+_n t^n / n!, so B+_1 = 1/2.
Rational bernoulli_plus(unsigned n);

// Truncated univariate Laurent series sum_{e = low}^{high} c_e t^e.
template <class T>
struct Series {
  int low = 0;
  std::vector<T> coeffs;

  int high() const { return low + static_cast<int>(coeffs.size()) - 1; }
  T coeff(int e) const {
    if (e < low || e > high()) return T(0);
    return coeffs[static_cast<std::size_t>(e - low)];
  }
};

using CycloSeries = Series<CycloNumber>;

// 1 / (1 - a e^{-c t}) through t^order. Throws ZeroScale when c = 0.
CycloSeries factor_series(const CycloNumber& a, const Rational& c, int order);

// Truncated multivariate Laurent series. Exponents are >= -1 per variable
// and total degree is kept <= order.
class LaurentSeries {
 public:
  using Exponent = std::vector<int>;

  LaurentSeries() = default;
  LaurentSeries(std::vector<int> variables, int order);

  // Embeds a univariate series in the variable with the given id.
  static LaurentSeries from_series(int variable, const CycloSeries& s);

  const std::vector<int>& variables() const noexcept { return vars_; }
  const std::map<Exponent, CycloNumber>& terms() const noexcept { return terms_; }
  int order() const noexcept { return order_; }
  // Number of variables carrying a pole.
  int pole_count() const;

  void add_term(const Exponent& e, const CycloNumber& c);

  // Product in disjoint variables; terms of total degree above `keep` dropped.
  friend LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, int keep);

 private:
  std::vector<int> vars_;
  std::map<Exponent, CycloNumber> terms_;
  int order_ = 0;
};

struct DegreeZeroValue {
  std::vector<int> variables;
  // Monomials of total degree 0 (ratios like t/s).
  std::map<LaurentSeries::Exponent, CycloNumber> terms;
  CycloNumber value;
};

// Degree-0 part of the product, then evaluated at the given variable values.
// Throws InsufficientOrder if some factor is truncated too early.
DegreeZeroValue degree_zero_term(const std::vector<LaurentSeries>& factors,
                                 const std::map<int, Rational>& values);

// Same value through the substitution x_v = value_v * z, taking the z^0
// coefficient of a univariate product.
CycloNumber degree_zero_value(const std::vector<CycloSeries>& factors, const RatVector& values);

}  // namespace torweight
