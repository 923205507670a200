#pragma once

#include "torweight/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace torweight {

// Q(zeta_N) = Q[x]/Phi_N. One instance is shared by every number of a
// computation.
class CycloField {
 public:
  explicit CycloField(unsigned long order);

  unsigned long order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return phi_.size() - 1; }
  // Phi_N, coefficients from x^0 upward; monic.
  const std::vector<Integer>& modulus() const noexcept { return phi_; }

  // In-place reduction of a polynomial mod Phi_N down to degree() coefficients.
  void reduce(std::vector<Rational>& poly) const;

 private:
  unsigned long order_;
  std::vector<Integer> phi_;
};

using CycloContext = std::shared_ptr<const CycloField>;

CycloContext make_cyclo_context(unsigned long order);

// Integer coefficients of the n-th cyclotomic polynomial.
std::vector<Integer> cyclotomic_polynomial(unsigned long n);

class CycloNumber {
 public:
  CycloNumber() : coeffs_{Rational(0)} {}
  CycloNumber(const Rational& q) : coeffs_{q} {}  // NOLINT: rational constants convert
  CycloNumber(long q) : coeffs_{Rational(q)} {}   // NOLINT
  CycloNumber(CycloContext ctx, std::vector<Rational> coeffs);

  // Null for a plain rational that has not met a field element yet.
  const CycloContext& context() const noexcept { return ctx_; }
  // degree() coefficients, or a single one without context.
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber operator-() const;

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void adopt(const CycloContext& ctx);

  CycloContext ctx_;
  std::vector<Rational> coeffs_;
};

// Image of exp(2 pi i k / m); throws OrderMismatch unless m | N.
CycloNumber root_of_unity(long k, unsigned long m, const CycloContext& ctx);

// Throws DivisionByZero.
CycloNumber invert(const CycloNumber& x);

// Throws NotRational (internal) if x is not in Q.
Rational rational_part(const CycloNumber& x);

}  // namespace torweight
