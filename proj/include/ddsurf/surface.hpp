#pragma once

// Double Danielewski surfaces
//
//   B = k[X,Y,Z,T] / (X^d Y - P(X,Z), X^e T - Q(X,Y,Z))
//
// with P monic in Z of degree r and Q monic in Y of degree s.  B is a domain
// inside k[x, 1/x, z] via y = P/x^d, t = Q(x, y, z)/x^e, so equality in B is
// decided by comparing Laurent images.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddsurf/groebner.hpp"
#include "ddsurf/laurent.hpp"
#include "ddsurf/polynomial.hpp"

namespace ddsurf {

/// A lemma was invoked outside its hypotheses.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

template <Field F>
struct SurfacePresentation {
  F field;
  int d = 1;
  int e = 1;
  Polynomial<F> P;  // in X, Z; monic in Z
  Polynomial<F> Q;  // in X, Y, Z; monic in Y
  int r = 0;        // deg_Z P
  int s = 0;        // deg_Y Q
};

/// Checks the presentation invariants and derives r, s.  Throws InputError.
template <Field F>
SurfacePresentation<F> make_surface(const F& field, int d, int e, Polynomial<F> P, Polynomial<F> Q);

struct ApplicabilityReport {
  bool ml_known = false;
  bool theorem_I_applicable = false;   // r > 1
  bool theorem_II_applicable = false;  // s > 1
  std::vector<std::string> notes;
};

/// Parameters for which the Makar-Limanov invariant is known to be k[x].
inline bool ml_known_formula(int r, int s, int e) {
  return (r >= 2 && s >= 2) || (r >= 2 && s == 1) || (r == 1 && s >= 2 && e >= 2);
}

template <Field F>
ApplicabilityReport validate(const SurfacePresentation<F>& S);

/// Images of X, Y, Z, T in k[x, 1/x, z].
template <Field F>
std::array<LaurentPoly<F>, 4> laurent_images(const SurfacePresentation<F>& S);

template <Field F>
LaurentPoly<F> laurent_nf(const SurfacePresentation<F>& S, const Polynomial<F>& p);

template <Field F>
bool equal_in_B(const SurfacePresentation<F>& S, const Polynomial<F>& p, const Polynomial<F>& q);

/// X^d Y - P and X^e T - Q.
template <Field F>
std::array<Polynomial<F>, 2> defining_relations(const SurfacePresentation<F>& S);

/// Membership in (X^n, X^d Y - P, X^e T - Q) with the Groebner basis
/// computed once, for repeated queries.  Certificates follow that generator
/// order.
template <Field F>
class ModXnIdeal {
 public:
  ModXnIdeal(const SurfacePresentation<F>& S, int n, const GroebnerLimits& limits = {});
  std::optional<MembershipCertificate<F>> member(const Polynomial<F>& p) const;
  const GroebnerBasis<F>& basis() const { return gb_; }

 private:
  GroebnerBasis<F> gb_;
};

template <Field F>
std::optional<MembershipCertificate<F>> in_ideal_mod_xn(const SurfacePresentation<F>& S, const Polynomial<F>& p,
                                                        int n, const GroebnerLimits& limits = {});

// Divisibility lemma: if deg_Z h < r and X^d | h + gP then X^d | g and X^d | h.

struct Lemma1Bounds {
  int x = 2;  // per-variable exponent bounds for both g and w
  int y = 2;
  int z = 2;
};

template <Field F>
struct Lemma1Counterexample {
  Polynomial<F> g;
  Polynomial<F> w;
  Polynomial<F> h;  // X^d w - g P
};

template <Field F>
struct Lemma1Report {
  std::uint64_t pairs_examined = 0;    // (g, w) pairs in one Y-slice
  std::uint64_t hypothesis_holds = 0;  // of those, deg_Z h < r
  std::uint64_t violations = 0;        // counted over all Y-slices
  std::vector<Lemma1Counterexample<F>> counterexamples;  // first few, in enumeration order
};

/// Exhaustive check over a prime field.  h = X^d w - g P is graded by
/// Y-degree and P is free of Y, so a counterexample exists in the bounded
/// space iff one exists among pairs Y^j (g', w') with g', w' in k[X,Z];
/// the k[X,Z] pairs are enumerated once and violations are lifted to every
/// j <= bounds.y.  Throws InputError for rationals and ResourceExhausted
/// past max_pairs.
template <Field F>
Lemma1Report<F> lemma1_oracle(const Polynomial<F>& P, int d, const Lemma1Bounds& bounds,
                              std::size_t max_reported = 16, std::uint64_t max_pairs = std::uint64_t{1} << 30);

/// One explicit pair, over any field.  nullopt when deg_Z h >= r (the
/// lemma says nothing); otherwise whether the conclusion holds.
template <Field F>
std::optional<bool> lemma1_instance(const Polynomial<F>& P, int d, const Polynomial<F>& g, const Polynomial<F>& w);

// Non-vanishing lemma modulo x^n.

enum class Lemma2Part { i, ii };

/// True iff u X^d Y + lowpoly (part i) or u X^e T + lowpoly (part ii) is
/// not in (X^n, X^d Y - P, X^e T - Q).  Hypothesis violations throw
/// PreconditionError with a message naming the failed hypothesis.
template <Field F>
bool lemma2_oracle(const SurfacePresentation<F>& S, Lemma2Part part, const typename F::Scalar& u,
                   const Polynomial<F>& lowpoly, int n, const GroebnerLimits& limits = {});

struct Lemma2SweepBounds {
  int x = 2;  // exponent bounds for lowpoly; Z (part i) and Y (part ii)
  int y = 1;  // are further capped by r - 1 and s - 1
  int z = 2;
};

template <Field F>
struct Lemma2SweepReport {
  std::uint64_t instances = 0;
  std::vector<std::pair<typename F::Scalar, Polynomial<F>>> counterexamples;  // (u, lowpoly)
};

/// Every nonzero u and every lowpoly within bounds, over a prime field.
template <Field F>
Lemma2SweepReport<F> lemma2_sweep(const SurfacePresentation<F>& S, Lemma2Part part, int n,
                                  const Lemma2SweepBounds& bounds, const GroebnerLimits& limits = {},
                                  std::uint64_t max_instances = 1u << 20);

}  // namespace ddsurf
