#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ddsurf {

/// Largest variable universe a polynomial can live in.
inline constexpr int kMaxVars = 8;

/// Indices of the standard universe {X, Y, Z, T}.
namespace var {
inline constexpr int X = 0;
inline constexpr int Y = 1;
inline constexpr int Z = 2;
inline constexpr int T = 3;
}  // namespace var

/// Exponent vector.  The default ordering is lexicographic with variable 0
/// most significant; polynomials store their terms highest first under it.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  Monomial(std::initializer_list<int> exps) {
    int i = 0;
    for (int e : exps) e_[i++] = static_cast<Exponent>(e);
  }

  static Monomial power(int v, int e) {
    Monomial m;
    m.e_[v] = static_cast<Exponent>(e);
    return m;
  }

  int operator[](int v) const { return e_[v]; }
  void set(int v, int e) { e_[v] = static_cast<Exponent>(e); }

  int degree() const {
    int d = 0;
    for (auto x : e_) d += x;
    return d;
  }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// Requires other.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e_[i] = static_cast<Exponent>(e_[i] - o.e_[i]);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e_[i] = static_cast<Exponent>(e_[i] + o.e_[i]);
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e_[i] = std::max(a.e_[i], b.e_[i]);
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<Exponent, kMaxVars> e_{};
};

/// Ordered variable names of a polynomial ring.  Index i names variable i.
class Variables {
 public:
  Variables() : names_{"X", "Y", "Z", "T"} {}
  explicit Variables(std::vector<std::string> names);

  static Variables standard() { return {}; }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  /// -1 when absent.
  int index_of(std::string_view name) const;

  friend bool operator==(const Variables&, const Variables&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace ddsurf
