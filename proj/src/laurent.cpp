#include "torweight/laurent.hpp"

#include "torweight/error.hpp"

#include <algorithm>
#include <mutex>

namespace torweight {

namespace {

Rational factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational power(const Rational& x, int e) {
  Rational r = 1;
  Rational b = e < 0 ? Rational(1 / x) : x;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

}  // namespace

Rational bernoulli_plus(unsigned n) {
  static std::mutex lock;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> g(lock);
  // sum_{k=0}^{m} C(m+1,k) B_k = 0 with B_1 = -1/2; B+ flips the sign of B_1.
  while (cache.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned k = 0; k < m; ++k) {
      Rational bk = k == 1 ? Rational(-cache[1]) : cache[k];
      s += binomial(m + 1, k) * bk;
    }
    Rational bm = -s / (m + 1);
    cache.push_back(m == 1 ? Rational(-bm) : bm);
  }
  return cache[n];
}

CycloSeries factor_series(const CycloNumber& a, const Rational& c, int order) {
  if (c == 0) internal_fail("ZeroScale", "exponential factor with zero scale");
  CycloSeries out;
  if (a == CycloNumber(1)) {
    out.low = -1;
    Rational cp = 1 / c;
    for (int n = 0; n <= order + 1; ++n) {
      out.coeffs.emplace_back(bernoulli_plus(static_cast<unsigned>(n)) * cp / factorial(n));
      cp *= c;
    }
    return out;
  }
  // (1 - a) - a sum_{n>=1} (-c t)^n / n!, inverted as a power series
  std::vector<CycloNumber> d(static_cast<std::size_t>(order) + 1);
  d[0] = CycloNumber(1) - a;
  Rational cn = 1;
  for (int n = 1; n <= order; ++n) {
    cn *= -c;
    d[n] = -(a * CycloNumber(Rational(cn / factorial(n))));
  }
  CycloNumber inv0 = invert(d[0]);
  out.low = 0;
  out.coeffs.resize(d.size());
  out.coeffs[0] = inv0;
  for (std::size_t n = 1; n < d.size(); ++n) {
    CycloNumber s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += d[k] * out.coeffs[n - k];
    out.coeffs[n] = -(s * inv0);
  }
  return out;
}

LaurentSeries::LaurentSeries(std::vector<int> variables, int order)
    : vars_(std::move(variables)), order_(order) {}

LaurentSeries LaurentSeries::from_series(int variable, const CycloSeries& s) {
  LaurentSeries out({variable}, s.high());
  for (int e = s.low; e <= s.high(); ++e) out.add_term({e}, s.coeff(e));
  return out;
}

int LaurentSeries::pole_count() const {
  int count = 0;
  for (std::size_t v = 0; v < vars_.size(); ++v)
    for (const auto& [e, c] : terms_)
      if (e[v] < 0) {
        ++count;
        break;
      }
  return count;
}

void LaurentSeries::add_term(const Exponent& e, const CycloNumber& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, int keep) {
  for (int v : a.vars_)
    if (std::find(b.vars_.begin(), b.vars_.end(), v) != b.vars_.end())
      internal_fail("SharedVariable", "series factors must use distinct variables");
  std::vector<int> vars = a.vars_;
  vars.insert(vars.end(), b.vars_.begin(), b.vars_.end());
  LaurentSeries out(vars, std::min(keep, a.order_ + b.order_));
  auto degree = [](const LaurentSeries::Exponent& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  };
  for (const auto& [ea, ca] : a.terms_) {
    int da = degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + degree(eb) > keep) continue;
      auto e = ea;
      e.insert(e.end(), eb.begin(), eb.end());
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

DegreeZeroValue degree_zero_term(const std::vector<LaurentSeries>& factors,
                                 const std::map<int, Rational>& values) {
  int poles = 0;
  for (const auto& f : factors) poles += f.pole_count();
  for (const auto& f : factors) {
    int need = poles - f.pole_count();
    if (f.order() < need)
      internal_fail("InsufficientOrder", "factor truncated at degree " + std::to_string(f.order()) +
                                             ", need " + std::to_string(need));
  }
  LaurentSeries prod({}, 0);
  prod.add_term({}, CycloNumber(1));
  int remaining = poles;
  for (const auto& f : factors) {
    remaining -= f.pole_count();
    // later factors lower the degree by at most `remaining`
    prod = multiply(prod, f, remaining);
  }
  DegreeZeroValue out;
  out.variables = prod.variables();
  out.value = 0;
  for (const auto& [e, c] : prod.terms()) {
    int d = 0;
    for (int x : e) d += x;
    if (d != 0) continue;
    out.terms.emplace(e, c);
    Rational m = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = values.find(out.variables[i]);
      if (it == values.end() || it->second == 0)
        fail("MissingValue", "no nonzero value for variable " + std::to_string(out.variables[i]));
      m *= power(it->second, e[i]);
    }
    out.value += c * CycloNumber(m);
  }
  return out;
}

CycloNumber degree_zero_value(const std::vector<CycloSeries>& factors, const RatVector& values) {
  int poles = 0;
  for (const auto& f : factors) poles += f.low < 0 ? -f.low : 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    int need = poles - (factors[i].low < 0 ? -factors[i].low : 0);
    if (factors[i].high() < need)
      internal_fail("InsufficientOrder", "factor truncated at degree " +
                                             std::to_string(factors[i].high()) + ", need " +
                                             std::to_string(need));
  }
  // running product as a z-series, exponents [low, keep]
  int low = 0;
  std::vector<CycloNumber> acc{CycloNumber(1)};
  int remaining = poles;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    remaining -= f.low < 0 ? -f.low : 0;
    int new_low = low + f.low;
    int keep = remaining;
    if (keep < new_low) return CycloNumber(0);
    std::vector<CycloNumber> next(static_cast<std::size_t>(keep - new_low + 1));
    Rational scale = power(values[i], f.low);
    std::vector<CycloNumber> scaled;
    for (int e = f.low; e <= std::min(f.high(), keep - low); ++e) {
      scaled.push_back(f.coeff(e) * CycloNumber(scale));
      scale *= values[i];
    }
    for (std::size_t a = 0; a < acc.size(); ++a) {
      if (acc[a].is_zero()) continue;
      int ea = low + static_cast<int>(a);
      for (std::size_t b = 0; b < scaled.size(); ++b) {
        int e = ea + f.low + static_cast<int>(b);
        if (e > keep) break;
        next[static_cast<std::size_t>(e - new_low)] += acc[a] * scaled[b];
      }
    }
    acc = std::move(next);
    low = new_low;
  }
  if (0 < low || 0 > low + static_cast<int>(acc.size()) - 1) return CycloNumber(0);
  return acc[static_cast<std::size_t>(-low)];
}

}  // namespace torweight
