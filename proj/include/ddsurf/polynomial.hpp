#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// A Polynomial<F> is a value: terms are kept sorted highest first in the
// lexicographic monomial order, with no zero coefficients, so structural
// equality is mathematical equality.  Ring operations and the helpers below
// are free functions in the style of the rest of the library.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddsurf/field.hpp"
#include "ddsurf/monomial.hpp"

namespace ddsurf {

template <Field F>
class Polynomial {
 public:
  using Scalar = typename F::Scalar;
  struct Term {
    Monomial monomial;
    Scalar coeff;
  };

  explicit Polynomial(F field) : field_(std::move(field)) {}

  static Polynomial constant(const F& field, const Scalar& c) {
    return term(field, Monomial{}, c);
  }
  static Polynomial integer(const F& field, long long c) { return constant(field, field.from_int(c)); }
  static Polynomial variable(const F& field, int v, int power = 1) {
    return term(field, Monomial::power(v, power), field.one());
  }
  static Polynomial term(const F& field, const Monomial& m, const Scalar& c) {
    Polynomial p(field);
    if (!field.is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(const F& field, std::vector<Term> terms) {
    Polynomial p(field);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  Scalar coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.monomial > k; });
    return it != terms_.end() && it->monomial == m ? it->coeff : field_.zero();
  }
  Scalar constant_term() const { return coefficient(Monomial{}); }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  bool involves(int v) const {
    for (const auto& t : terms_)
      if (t.monomial[v] > 0) return true;
    return false;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = combine(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = combine(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = field_.neg(t.coeff);
    return p;
  }

  Polynomial scaled(const Scalar& c) const {
    Polynomial p(field_);
    if (field_.is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.monomial, field_.mul(t.coeff, c)});
    return p;
  }

  /// Multiplication by c * m; the lex order is multiplicative so no re-sort is needed.
  Polynomial times_term(const Monomial& m, const Scalar& c) const {
    Polynomial p(field_);
    if (field_.is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, field_.mul(t.coeff, c)});
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_field(a, b);
    Polynomial p(a.field_);
    if (a.is_zero() || b.is_zero()) return p;
    if (a.size() == 1) return b.times_term(a.terms_[0].monomial, a.terms_[0].coeff);
    if (b.size() == 1) return a.times_term(b.terms_[0].monomial, b.terms_[0].coeff);
    p.terms_.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        p.terms_.push_back({s.monomial * t.monomial, a.field_.mul(s.coeff, t.coeff)});
    p.normalize();
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].monomial != b.terms_[i].monomial ||
          !a.field_.equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

 private:
  static void check_same_field(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_))
      throw FieldMismatch("polynomials over " + a.field_.spec().to_string() + " and " +
                          b.field_.spec().to_string());
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same_field(a, b);
    const F& k = a.field_;
    Polynomial p(k);
    p.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->monomial > j->monomial)) {
        p.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->monomial > i->monomial) {
        p.terms_.push_back({j->monomial, subtract ? k.neg(j->coeff) : j->coeff});
        ++j;
      } else {
        Scalar c = subtract ? k.sub(i->coeff, j->coeff) : k.add(i->coeff, j->coeff);
        if (!k.is_zero(c)) p.terms_.push_back({i->monomial, std::move(c)});
        ++i, ++j;
      }
    }
    return p;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& s, const Term& t) { return s.monomial > t.monomial; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial)
        out.back().coeff = field_.add(out.back().coeff, t.coeff);
      else
        out.push_back(std::move(t));
      if (field_.is_zero(out.back().coeff)) out.pop_back();
    }
    terms_ = std::move(out);
  }

  F field_;
  std::vector<Term> terms_;
};

template <Field F>
Polynomial<F> pow(const Polynomial<F>& p, unsigned n) {
  Polynomial<F> out = Polynomial<F>::integer(p.field(), 1);
  Polynomial<F> base = p;
  while (n) {
    if (n & 1) out *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return out;
}

/// Maximum exponent of v; nullopt stands for -infinity (zero polynomial).
template <Field F>
std::optional<int> degree_in(const Polynomial<F>& p, int v) {
  std::optional<int> d;
  for (const auto& t : p.terms())
    if (!d || t.monomial[v] > *d) d = t.monomial[v];
  return d;
}

/// Minimum exponent of v, i.e. the largest k with v^k | p; nullopt stands
/// for +infinity (zero polynomial).
template <Field F>
std::optional<int> valuation_in(const Polynomial<F>& p, int v) {
  std::optional<int> d;
  for (const auto& t : p.terms())
    if (!d || t.monomial[v] < *d) d = t.monomial[v];
  return d;
}

template <Field F>
std::optional<int> x_adic_valuation(const Polynomial<F>& p) {
  return valuation_in(p, var::X);
}

/// The coefficient of v^k when p is viewed as a polynomial in v.
template <Field F>
Polynomial<F> coefficient_in(const Polynomial<F>& p, int v, int k) {
  std::vector<typename Polynomial<F>::Term> out;
  for (const auto& t : p.terms())
    if (t.monomial[v] == k) {
      Monomial m = t.monomial;
      m.set(v, 0);
      out.push_back({m, t.coeff});
    }
  return Polynomial<F>::from_terms(p.field(), std::move(out));
}

/// True iff every term avoids the variables outside `allowed`.
template <Field F>
bool uses_only(const Polynomial<F>& p, std::initializer_list<int> allowed) {
  for (const auto& t : p.terms())
    for (int v = 0; v < kMaxVars; ++v)
      if (t.monomial[v] > 0 && std::find(allowed.begin(), allowed.end(), v) == allowed.end())
        return false;
  return true;
}

/// Exact quotient by v^k; requires v^k | p.
template <Field F>
Polynomial<F> divide_by_var_power(const Polynomial<F>& p, int v, int k) {
  std::vector<typename Polynomial<F>::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (t.monomial[v] < k) throw std::logic_error("divide_by_var_power: not divisible");
    Monomial m = t.monomial;
    m.set(v, t.monomial[v] - k);
    out.push_back({m, t.coeff});
  }
  return Polynomial<F>::from_terms(p.field(), std::move(out));
}

/// True iff m has positive degree in v and the coefficient of its top power
/// of v is the constant 1.
template <Field F>
bool is_monic_in(const Polynomial<F>& m, int v) {
  auto k = degree_in(m, v);
  if (!k || *k < 1) return false;
  auto lc = coefficient_in(m, v, *k);
  return lc.size() == 1 && lc.terms()[0].monomial.is_one() && m.field().is_one(lc.terms()[0].coeff);
}

template <Field F>
struct Division {
  Polynomial<F> quotient;
  Polynomial<F> remainder;
};

/// p = quotient * m + remainder with deg_v(remainder) < deg_v(m).
/// Throws std::invalid_argument unless m is monic in v.
template <Field F>
Division<F> divide_by_monic(const Polynomial<F>& p, const Polynomial<F>& m, int v) {
  if (!is_monic_in(m, v)) throw std::invalid_argument("divide_by_monic: divisor is not monic in the variable");
  const int k = *degree_in(m, v);
  Polynomial<F> q(p.field()), r = p;
  for (auto d = degree_in(r, v); d && *d >= k; d = degree_in(r, v)) {
    Polynomial<F> lead = coefficient_in(r, v, *d) * Polynomial<F>::variable(p.field(), v, *d - k);
    q += lead;
    r -= lead * m;
  }
  return {std::move(q), std::move(r)};
}

/// Images of variables; unmapped variables are left fixed.
template <Field F>
using Substitution = std::map<int, Polynomial<F>>;

/// The ring homomorphism v -> images[v] applied to p.
template <Field F>
Polynomial<F> substitute(const Polynomial<F>& p, const Substitution<F>& images) {
  const F& k = p.field();
  for (const auto& [v, img] : images)
    if (!(img.field() == k)) throw FieldMismatch("substitution image over a different field");
  // powers[v][e] = images[v]^e, built lazily
  std::array<std::vector<Polynomial<F>>, kMaxVars> powers;
  auto power_of = [&](int v, int e) -> const Polynomial<F>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial<F>::integer(k, 1));
    while (static_cast<int>(cache.size()) <= e) {
      auto it = images.find(v);
      Polynomial<F> base = it == images.end() ? Polynomial<F>::variable(k, v) : it->second;
      cache.push_back(cache.back() * base);
    }
    return cache[e];
  };
  std::vector<typename Polynomial<F>::Term> out;
  for (const auto& t : p.terms()) {
    Polynomial<F> acc = Polynomial<F>::constant(k, t.coeff);
    for (int v = 0; v < kMaxVars && !acc.is_zero(); ++v)
      if (int e = t.monomial[v]) acc *= power_of(v, e);
    out.insert(out.end(), acc.terms().begin(), acc.terms().end());
  }
  return Polynomial<F>::from_terms(k, std::move(out));
}

}  // namespace ddsurf
