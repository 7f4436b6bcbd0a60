#pragma once

// Laurent polynomials in x and z with x-exponents of either sign, i.e.
// elements of k[x, 1/x, z].  The coordinate ring of a double Danielewski
// surface embeds here, which gives a canonical form for its elements.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddsurf/polynomial.hpp"

namespace ddsurf {

template <Field F>
class LaurentPoly {
 public:
  using Scalar = typename F::Scalar;
  struct Term {
    int x;  // any sign
    int z;  // >= 0
    Scalar coeff;
  };

  explicit LaurentPoly(F field) : field_(std::move(field)) {}

  static LaurentPoly monomial(const F& field, int x, int z, const Scalar& c) {
    LaurentPoly l(field);
    if (z < 0) throw std::invalid_argument("LaurentPoly: negative z exponent");
    if (!field.is_zero(c)) l.terms_.push_back({x, z, c});
    return l;
  }
  static LaurentPoly constant(const F& field, const Scalar& c) { return monomial(field, 0, 0, c); }

  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(int x, int z) const {
    for (const auto& t : terms_)
      if (t.x == x && t.z == z) return t.coeff;
    return field_.zero();
  }

  /// Smallest x-exponent; 0 for the zero element.
  int min_x() const {
    int m = 0;
    for (std::size_t i = 0; i < terms_.size(); ++i) m = i ? std::min(m, terms_[i].x) : terms_[i].x;
    return m;
  }

  LaurentPoly operator-() const {
    LaurentPoly l = *this;
    for (auto& t : l.terms_) t.coeff = field_.neg(t.coeff);
    return l;
  }

  LaurentPoly scaled(const Scalar& c) const {
    LaurentPoly l(field_);
    if (field_.is_zero(c)) return l;
    for (const auto& t : terms_) l.terms_.push_back({t.x, t.z, field_.mul(t.coeff, c)});
    return l;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    check(a, b);
    std::vector<Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(a.field_, std::move(all));
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check(a, b);
    std::vector<Term> all;
    all.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) all.push_back({s.x + t.x, s.z + t.z, a.field_.mul(s.coeff, t.coeff)});
    return from_terms(a.field_, std::move(all));
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto &s = a.terms_[i], &t = b.terms_[i];
      if (s.x != t.x || s.z != t.z || !a.field_.equal(s.coeff, t.coeff)) return false;
    }
    return true;
  }

  static LaurentPoly from_terms(const F& field, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& s, const Term& t) {
      return s.x != t.x ? s.x > t.x : s.z > t.z;
    });
    LaurentPoly l(field);
    for (auto& t : terms) {
      if (!l.terms_.empty() && l.terms_.back().x == t.x && l.terms_.back().z == t.z)
        l.terms_.back().coeff = field.add(l.terms_.back().coeff, t.coeff);
      else
        l.terms_.push_back(std::move(t));
      if (field.is_zero(l.terms_.back().coeff)) l.terms_.pop_back();
    }
    return l;
  }

 private:
  static void check(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.field_ == b.field_)) throw FieldMismatch("Laurent polynomials over different fields");
  }

  F field_;
  std::vector<Term> terms_;  // sorted by (x, z) descending, no zeros
};

template <Field F>
LaurentPoly<F> laurent_add(const LaurentPoly<F>& a, const LaurentPoly<F>& b) { return a + b; }

template <Field F>
LaurentPoly<F> laurent_mul(const LaurentPoly<F>& a, const LaurentPoly<F>& b) { return a * b; }

/// l / x^k: every x-exponent shifts by -k.
template <Field F>
LaurentPoly<F> laurent_div_xpow(const LaurentPoly<F>& l, int k) {
  std::vector<typename LaurentPoly<F>::Term> terms = l.terms();
  for (auto& t : terms) t.x -= k;
  return LaurentPoly<F>::from_terms(l.field(), std::move(terms));
}

/// Embeds a polynomial in X and Z.  Throws std::invalid_argument if any
/// other variable occurs.
template <Field F>
LaurentPoly<F> laurent_from_poly(const Polynomial<F>& p) {
  if (!uses_only(p, {var::X, var::Z}))
    throw std::invalid_argument("laurent_from_poly: polynomial involves variables other than X, Z");
  std::vector<typename LaurentPoly<F>::Term> terms;
  for (const auto& t : p.terms()) terms.push_back({t.monomial[var::X], t.monomial[var::Z], t.coeff});
  return LaurentPoly<F>::from_terms(p.field(), std::move(terms));
}

/// The polynomial in X, Z with the same terms, if no x-exponent is negative.
template <Field F>
std::optional<Polynomial<F>> laurent_to_poly(const LaurentPoly<F>& l) {
  std::vector<typename Polynomial<F>::Term> terms;
  for (const auto& t : l.terms()) {
    if (t.x < 0) return std::nullopt;
    Monomial m;
    m.set(var::X, t.x);
    m.set(var::Z, t.z);
    terms.push_back({m, t.coeff});
  }
  return Polynomial<F>::from_terms(l.field(), std::move(terms));
}

/// The homomorphism k[X,Y,Z,T] -> k[x, 1/x, z] sending variable v to
/// images[v], applied to p.  Variables beyond T must not occur.
template <Field F>
LaurentPoly<F> laurent_evaluate(const Polynomial<F>& p, const std::array<LaurentPoly<F>, 4>& images) {
  const F& k = p.field();
  std::array<std::vector<LaurentPoly<F>>, 4> powers;
  auto power_of = [&](int v, int e) -> const LaurentPoly<F>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(LaurentPoly<F>::constant(k, k.one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  std::vector<typename LaurentPoly<F>::Term> out;
  for (const auto& t : p.terms()) {
    for (int v = 4; v < kMaxVars; ++v)
      if (t.monomial[v]) throw std::invalid_argument("laurent_evaluate: variable outside X, Y, Z, T");
    LaurentPoly<F> acc = LaurentPoly<F>::constant(k, t.coeff);
    for (int v = 0; v < 4 && !acc.is_zero(); ++v)
      if (int e = t.monomial[v]) acc *= power_of(v, e);
    out.insert(out.end(), acc.terms().begin(), acc.terms().end());
  }
  return LaurentPoly<F>::from_terms(k, std::move(out));
}

}  // namespace ddsurf
