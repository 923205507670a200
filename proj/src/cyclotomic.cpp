#include "torweight/cyclotomic.hpp"

#include "torweight/error.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace torweight {

namespace {

using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

bool poly_is_zero(const RatPoly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

// Exact division by a monic integer polynomial.
IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {Integer(0)};
  IntPoly q(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

// Division with remainder over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {RatPoly{0}, a};
  RatPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() > 1 ? b.size() - 1 : 1);
  trim(a);
  trim(q);
  return {q, a};
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  RatPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned long n) {
  static std::mutex lock;
  static std::map<unsigned long, IntPoly> cache;
  {
    std::lock_guard<std::mutex> g(lock);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> g(lock);
  cache.emplace(n, p);
  return p;
}

CycloField::CycloField(unsigned long order) : order_(order) {
  if (order == 0) internal_fail("OrderMismatch", "cyclotomic order must be positive");
  phi_ = cyclotomic_polynomial(order);
}

void CycloField::reduce(std::vector<Rational>& poly) const {
  const std::size_t d = degree();
  for (std::size_t i = poly.size(); i-- > d;) {
    Rational c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) poly[i - d + j] -= c * phi_[j];
  }
  poly.resize(d);
}

CycloContext make_cyclo_context(unsigned long order) {
  return std::make_shared<const CycloField>(order);
}

CycloNumber::CycloNumber(CycloContext ctx, std::vector<Rational> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (!ctx_) {
    if (coeffs_.empty()) coeffs_.push_back(0);
    if (coeffs_.size() != 1) internal_fail("OrderMismatch", "field element without context");
    return;
  }
  ctx_->reduce(coeffs_);
}

void CycloNumber::adopt(const CycloContext& ctx) {
  if (!ctx || ctx_ == ctx) return;
  if (ctx_) {
    if (ctx_->order() != ctx->order())
      internal_fail("OrderMismatch", "mixing cyclotomic fields of different order");
    return;
  }
  Rational c = coeffs_[0];
  ctx_ = ctx;
  coeffs_.assign(ctx->degree(), Rational(0));
  coeffs_[0] = c;
}

bool CycloNumber::is_zero() const { return poly_is_zero(coeffs_); }

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  adopt(o.ctx_);
  if (!o.ctx_) {
    coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  adopt(o.ctx_);
  if (!o.ctx_) {
    coeffs_[0] -= o.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  if (!o.ctx_ || o.is_rational()) {
    const Rational s = o.coeffs_[0];
    adopt(o.ctx_);
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  if (!ctx_ || is_rational()) {
    const Rational s = coeffs_[0];
    ctx_ = o.ctx_;
    coeffs_ = o.coeffs_;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  adopt(o.ctx_);
  auto prod = mul(coeffs_, o.coeffs_);
  ctx_->reduce(prod);
  coeffs_ = std::move(prod);
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) { return (a - b).is_zero(); }

std::string CycloNumber::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + torweight::to_string(coeffs_[i]) + ")";
    if (i > 0) out += "*z^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CycloNumber root_of_unity(long k, unsigned long m, const CycloContext& ctx) {
  if (!ctx) internal_fail("OrderMismatch", "root of unity needs a field context");
  if (m == 0 || ctx->order() % m != 0)
    internal_fail("OrderMismatch", "order " + std::to_string(m) + " does not divide " +
                                       std::to_string(ctx->order()));
  long mm = static_cast<long>(m);
  unsigned long e = static_cast<unsigned long>(((k % mm) + mm) % mm) * (ctx->order() / m);
  RatPoly p(e + 1, Rational(0));
  p[e] = 1;
  if (p.size() < ctx->degree()) p.resize(ctx->degree());
  return CycloNumber(ctx, std::move(p));
}

CycloNumber invert(const CycloNumber& x) {
  if (x.is_zero()) internal_fail("DivisionByZero", "inverse of zero in cyclotomic field");
  if (x.is_rational()) {
    Rational inv = 1 / x.coefficients()[0];
    if (!x.context()) return CycloNumber(inv);
    RatPoly p(x.context()->degree(), Rational(0));
    p[0] = inv;
    return CycloNumber(x.context(), std::move(p));
  }
  const auto& ctx = x.context();
  // extended Euclid: s*a + t*phi = g
  RatPoly phi;
  for (const auto& c : ctx->modulus()) phi.emplace_back(c);
  RatPoly r0 = phi, r1 = x.coefficients();
  trim(r1);
  RatPoly s0{0}, s1{1};
  while (!poly_is_zero(r1)) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  trim(r0);
  if (r0.size() != 1) internal_fail("DivisionByZero", "element shares a factor with the modulus");
  Rational g = r0[0];
  for (auto& c : s0) c /= g;
  if (s0.size() < ctx->degree()) s0.resize(ctx->degree());
  return CycloNumber(ctx, std::move(s0));
}

Rational rational_part(const CycloNumber& x) {
  if (!x.is_rational()) internal_fail("NotRational", "value " + x.to_string() + " is not rational");
  return x.coefficients()[0];
}

}  // namespace torweight
