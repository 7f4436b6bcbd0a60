#pragma once

// Exact coefficient fields.
//
// Every algebraic type in the library is templated on a field type F that
// owns its arithmetic: F::Scalar is the element representation and all
// operations go through the field object, so a prime modulus chosen at run
// time travels with the polynomials that use it.  Two fields are provided:
//
//   Rationals   - arbitrary precision rationals (GMP), always canonical
//   PrimeField  - Z/pZ for a prime p < 2^31, residues kept in [0, p)
//
// FieldSpec is the run-time description used at the I/O boundary, and
// visit_field() turns it into a concrete field for a generic callable.

#include <concepts>
#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ddsurf {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad expressions, invalid presentations, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operands built over different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

struct FieldSpec {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::uint32_t p = 0;  // nonzero iff kind == prime

  static FieldSpec rationals() { return {}; }
  /// Throws InputError unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  bool is_finite() const { return kind == Kind::prime; }
  /// "Q" or "Fp:<p>", the command line spelling.
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Accepts "Q", "QQ", "Fp:5", "F5", "GF(5)".
FieldSpec parse_field_spec(std::string_view text);

bool is_prime(std::uint64_t n);

class Rationals {
 public:
  using Scalar = mpq_class;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(long long v) const { return Scalar(static_cast<long>(v)); }
  /// Exact a/b; throws InputError on b == 0.
  Scalar from_ratio(const mpz_class& a, const mpz_class& b) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar neg(const Scalar& a) const { return -a; }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, long long e) const;

  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool is_one(const Scalar& a) const { return a == 1; }
  bool equal(const Scalar& a, const Scalar& b) const { return a == b; }
  /// True when the printed form starts with a minus sign.
  bool is_negative(const Scalar& a) const { return sgn(a) < 0; }

  std::string to_string(const Scalar& a) const { return a.get_str(); }

  FieldSpec spec() const { return FieldSpec::rationals(); }
  bool is_finite() const { return false; }
  std::uint64_t characteristic() const { return 0; }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

class PrimeField {
 public:
  using Scalar = std::uint32_t;

  /// Throws InputError unless p is prime and below 2^31.
  explicit PrimeField(std::uint64_t p);

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_int(long long v) const;
  Scalar from_ratio(const mpz_class& a, const mpz_class& b) const;

  Scalar add(Scalar a, Scalar b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, long long e) const;

  bool is_zero(Scalar a) const { return a == 0; }
  bool is_one(Scalar a) const { return a == 1; }
  bool equal(Scalar a, Scalar b) const { return a == b; }
  bool is_negative(Scalar) const { return false; }

  std::string to_string(Scalar a) const { return std::to_string(a); }

  FieldSpec spec() const { return {FieldSpec::Kind::prime, p_}; }
  bool is_finite() const { return true; }
  std::uint64_t characteristic() const { return p_; }
  std::uint32_t modulus() const { return p_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// Concept satisfied by Rationals and PrimeField.
template <class F>
concept Field = requires(const F& f, const typename F::Scalar& a) {
  { f.zero() } -> std::convertible_to<typename F::Scalar>;
  { f.add(a, a) } -> std::convertible_to<typename F::Scalar>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Scalar>;
  { f.inv(a) } -> std::convertible_to<typename F::Scalar>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.spec() } -> std::convertible_to<FieldSpec>;
};

/// Calls fn(Rationals{}) or fn(PrimeField{p}) according to spec.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::prime) return std::forward<Fn>(fn)(PrimeField(spec.p));
  return std::forward<Fn>(fn)(Rationals{});
}

/// Parses an integer or a/b literal into the field.
template <Field F>
typename F::Scalar parse_scalar(const F& field, std::string_view text);

}  // namespace ddsurf
