#pragma once

// Buchberger's algorithm with cofactor tracking.
//
// Every element of a computed basis carries a row of cofactors expressing it
// in terms of the caller's original generators, so membership answers come
// with certificates against those generators rather than against the
// reduced basis.  Certificates are re-expanded and checked before they are
// returned.

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "ddsurf/polynomial.hpp"

namespace ddsurf {

class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

struct MonomialOrder {
  enum class Kind { lex, grevlex };

  Kind kind = Kind::grevlex;
  /// Variables from most to least significant.  Variables not listed rank
  /// below the listed ones, in index order.
  std::vector<int> priority = {var::T, var::Y, var::Z, var::X};

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, {var::X, var::Y, var::Z, var::T}}; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

struct GroebnerLimits {
  std::size_t max_basis = 400;  // elements, including redundant ones
  int max_degree = 60;          // total degree of any basis element
};

template <Field F>
struct IdealBasis {
  F field;
  std::vector<Polynomial<F>> generators;
  MonomialOrder order = MonomialOrder::grevlex();
};

template <Field F>
struct MembershipCertificate {
  /// One cofactor per original generator, in generator order.
  std::vector<Polynomial<F>> cofactors;
};

template <Field F>
struct GroebnerBasis {
  F field;
  MonomialOrder order;
  std::vector<Polynomial<F>> generators;  // as supplied
  std::vector<Polynomial<F>> elements;    // reduced, monic, leading terms descending
  /// elements[i] == sum_j transform[i][j] * generators[j]
  std::vector<std::vector<Polynomial<F>>> transform;
};

template <Field F>
struct Reduction {
  Polynomial<F> normal_form;
  /// p == sum_j cofactors[j] * generators[j] + normal_form
  MembershipCertificate<F> certificate;
};

/// Leading monomial of a nonzero polynomial under the order.
template <Field F>
Monomial leading_monomial(const Polynomial<F>& p, const MonomialOrder& order);

/// Reduced Groebner basis of the ideal.  Zero generators are allowed and
/// get zero columns in the transform.  Throws ResourceExhausted when a
/// limit is crossed; never returns a partial basis.
template <Field F>
GroebnerBasis<F> buchberger(const IdealBasis<F>& basis, const GroebnerLimits& limits = {});

template <Field F>
Reduction<F> reduce_full(const Polynomial<F>& p, const GroebnerBasis<F>& gb);

/// reduce_full without cofactor tracking.  Linear in p.
template <Field F>
Polynomial<F> normal_form(const Polynomial<F>& p, const GroebnerBasis<F>& gb);

template <Field F>
std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>& p, const GroebnerBasis<F>& gb);

template <Field F>
std::optional<MembershipCertificate<F>> is_member(const Polynomial<F>& p, const IdealBasis<F>& basis,
                                                  const GroebnerLimits& limits = {});

/// Two-way generator membership.
template <Field F>
bool ideals_equal(const IdealBasis<F>& a, const IdealBasis<F>& b, const GroebnerLimits& limits = {});

/// q with p*q = 1 modulo the ideal, if p is a unit there.  The inverse is
/// the cofactor of p in a certificate for 1 in (p) + basis.
template <Field F>
std::optional<Polynomial<F>> is_unit_modulo(const Polynomial<F>& p, const IdealBasis<F>& basis,
                                            const GroebnerLimits& limits = {});

/// Does sum_j cofactors[j] * generators[j] + remainder equal target?
template <Field F>
bool certificate_reconstructs(const MembershipCertificate<F>& cert,
                              const std::vector<Polynomial<F>>& generators, const Polynomial<F>& target,
                              const Polynomial<F>* remainder = nullptr);

}  // namespace ddsurf
