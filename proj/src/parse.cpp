#include "ddsurf/parse.hpp"

#include <cctype>
#include <charconv>

namespace ddsurf {

namespace {

constexpr int kMaxExponent = 4096;

template <Field F>
class Parser {
 public:
  using Poly = Polynomial<F>;

  Parser(std::string_view text, const F& field, const Variables& vars)
      : text_(text), field_(field), vars_(vars) {}

  Poly run() {
    skip_space();
    if (at_end()) fail("empty expression");
    Poly p = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_space();
      if (accept('*')) acc *= unary();
      else return acc;
    }
  }

  Poly unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    std::size_t at = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be a non-negative integer literal");
    std::string digits = integer();
    if (digits.size() > 6 || std::stoi(digits) > kMaxExponent) fail_at(at, "exponent too large");
    skip_space();
    if (peek('^')) fail("chained exponents need parentheses");
    return pow(base, static_cast<unsigned>(std::stoi(digits)));
  }

  Poly primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (accept('(')) {
      Poly inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      mpz_class num(integer());
      mpz_class den(1);
      skip_space();
      if (accept('/')) {
        skip_space();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected integer denominator");
        den = mpz_class(integer());
      }
      try {
        return Poly::constant(field_, field_.from_ratio(num, den));
      } catch (const InputError& e) {
        fail_at(at, e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string name(text_.substr(pos_, end - pos_));
      int v = vars_.index_of(name);
      if (v < 0) fail_at(at, "unknown variable '" + name + "'");
      pos_ = end;
      return Poly::variable(field_, v);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw InputError("syntax error at column " + std::to_string(at + 1) + " in '" + std::string(text_) +
                     "': " + what);
  }

  std::string_view text_;
  const F& field_;
  const Variables& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

template <Field F>
Polynomial<F> parse_poly(std::string_view text, const F& field, const Variables& vars) {
  return Parser<F>(text, field, vars).run();
}

template <Field F>
std::string to_string(const Polynomial<F>& p, const Variables& vars) {
  if (p.is_zero()) return "0";
  const F& k = p.field();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = k.is_negative(t.coeff);
    auto magnitude = negative ? k.neg(t.coeff) : t.coeff;
    std::string mono;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = t.monomial[v];
      if (!e) continue;
      if (v >= vars.size()) throw std::invalid_argument("to_string: variable outside the universe");
      if (!mono.empty()) mono += '*';
      mono += vars.name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string body;
    if (mono.empty()) body = k.to_string(magnitude);
    else if (k.is_one(magnitude)) body = mono;
    else body = k.to_string(magnitude) + "*" + mono;
    if (first) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

template Polynomial<Rationals> parse_poly(std::string_view, const Rationals&, const Variables&);
template Polynomial<PrimeField> parse_poly(std::string_view, const PrimeField&, const Variables&);
template std::string to_string(const Polynomial<Rationals>&, const Variables&);
template std::string to_string(const Polynomial<PrimeField>&, const Variables&);

}  // namespace ddsurf
