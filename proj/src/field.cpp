#include "ddsurf/field.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace ddsurf {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

std::uint32_t mod_of(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_modulus(std::string_view digits, std::string_view whole) {
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw InputError("bad field descriptor '" + std::string(whole) + "'");
  return p;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= kMaxModulus || !is_prime(p))
    throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  return {Kind::prime, static_cast<std::uint32_t>(p)};
}

std::string FieldSpec::to_string() const {
  return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
}

FieldSpec parse_field_spec(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "Q" || s == "QQ") return FieldSpec::rationals();
  if (s.starts_with("Fp:")) return FieldSpec::prime(parse_modulus(s.substr(3), text));
  if (s.starts_with("GF(") && s.ends_with(")"))
    return FieldSpec::prime(parse_modulus(s.substr(3, s.size() - 4), text));
  if (s.size() > 1 && s.front() == 'F' && std::isdigit(static_cast<unsigned char>(s[1])))
    return FieldSpec::prime(parse_modulus(s.substr(1), text));
  throw InputError("bad field descriptor '" + std::string(text) + "' (expected Q or Fp:<p>)");
}

Rationals::Scalar Rationals::from_ratio(const mpz_class& a, const mpz_class& b) const {
  if (b == 0) throw InputError("division by zero in literal");
  Scalar q(a, b);
  q.canonicalize();
  return q;
}

Rationals::Scalar Rationals::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  return Scalar(1) / a;
}

Rationals::Scalar Rationals::pow(const Scalar& a, long long e) const {
  Scalar base = e < 0 ? inv(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Scalar out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), n);
  out.canonicalize();
  return out;
}

PrimeField::PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}

PrimeField::Scalar PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  return static_cast<Scalar>(r < 0 ? r + p_ : r);
}

PrimeField::Scalar PrimeField::from_ratio(const mpz_class& a, const mpz_class& b) const {
  Scalar den = mod_of(b, p_);
  if (den == 0) throw InputError("division by zero in literal (denominator vanishes mod " +
                                 std::to_string(p_) + ")");
  return div(mod_of(a, p_), den);
}

PrimeField::Scalar PrimeField::inv(Scalar a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // extended Euclid on (a, p)
  long long t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return static_cast<Scalar>(t < 0 ? t + p_ : t);
}

PrimeField::Scalar PrimeField::pow(Scalar a, long long e) const {
  Scalar base = e < 0 ? inv(a) : a;
  unsigned long long n = static_cast<unsigned long long>(e < 0 ? -e : e);
  Scalar out = 1;
  while (n) {
    if (n & 1) out = mul(out, base);
    base = mul(base, base);
    n >>= 1;
  }
  return out;
}

template <Field F>
typename F::Scalar parse_scalar(const F& field, std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  auto slash = s.find('/');
  std::string num(trim(s.substr(0, slash)));
  std::string den = slash == std::string_view::npos ? "1" : std::string(trim(s.substr(slash + 1)));
  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (!digits_only(num) || !digits_only(den))
    throw InputError("bad scalar literal '" + std::string(text) + "'");
  mpz_class a(num), b(den);
  if (negative) a = -a;
  return field.from_ratio(a, b);
}

template Rationals::Scalar parse_scalar(const Rationals&, std::string_view);
template PrimeField::Scalar parse_scalar(const PrimeField&, std::string_view);

}  // namespace ddsurf
