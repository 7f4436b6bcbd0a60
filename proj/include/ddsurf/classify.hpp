#pragma once

// Isomorphism classification of double Danielewski surfaces.
//
// Witnesses describe maps from the ring of S2 to the ring of S1:
//
//   x2 -> lambda x1,  z2 -> gamma z1 + delta(x1),  y2 -> nu y1 + g(x1, z1),
//   t2 -> lambda^-e (h1 t1 + h3)
//
// with nu = lambda^-d gamma^r and g = lambda^-d f, where
//
//   P2(lambda X, gamma Z + delta) = gamma^r P1 + X^d f                  (P)
//   (Q2(X2, Y2, Z2), gamma^r G, X^e) = (Q1, G, X^e),  G = P1 - X^d Y    (Q)
//
// and (h1, h2, h3) expresses Q2(X2, Y2, Z2) in (Q1, G, X^e).
//
// Completeness of the delta search: (P) depends on delta only modulo X^d,
// and both memberships in (Q) only modulo X^(d+e), because perturbing delta
// by X^(d+e) theta moves Z2 and Y2 (through f) by multiples of X^e.  So
// over a finite field the search over lambda, gamma in k* and deg delta <
// d + e is exhaustive.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ddsurf/groebner.hpp"
#include "ddsurf/ringmap.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

template <Field F>
struct IsoWitness {
  using Scalar = typename F::Scalar;
  Scalar lambda;
  Scalar gamma;
  Polynomial<F> delta;  // in X
  Polynomial<F> f;      // in X, Z with deg_Z f < r
  Scalar nu;            // lambda^-d gamma^r
  Polynomial<F> g;      // lambda^-d f
  /// Q2(X2, Y2, Z2) in (Q1, G, X^e)
  std::optional<MembershipCertificate<F>> h_cert;
  /// Q1 in (Q2(X2, Y2, Z2), G, X^e)
  std::optional<MembershipCertificate<F>> h_cert_rev;
};

enum class Status { isomorphic, not_isomorphic, no_witness_within_bounds, out_of_theorem_scope };

std::string to_string(Status s);

struct LogEntry {
  std::string check;
  bool ok;
  std::string detail;
};

template <Field F>
struct ClassificationVerdict {
  Status status = Status::no_witness_within_bounds;
  std::string reason;
  std::optional<IsoWitness<F>> witness;
  std::optional<RingMap<F>> map;  // S2's ring -> S1's ring
  std::vector<LogEntry> log;
  std::uint64_t candidates_examined = 0;
};

// --- Invariants -------------------------------------------------------------

enum class InvariantOutcome { consistent, not_isomorphic, out_of_scope };

struct InvariantReport {
  InvariantOutcome outcome = InvariantOutcome::consistent;
  std::string reason;
  std::vector<std::string> notes;
};

template <Field F>
InvariantReport invariant_check(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2);

// --- Condition (P) ----------------------------------------------------------

/// X^-d (P2(lambda X, gamma Z + delta) - gamma^r P1) when the division is
/// exact.  Requires r1 = r2 and d1 = d2.
template <Field F>
std::optional<Polynomial<F>> check_P_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                               const typename F::Scalar& lambda, const typename F::Scalar& gamma,
                                               const Polynomial<F>& delta);

template <Field F>
struct PSolution {
  typename F::Scalar lambda;
  typename F::Scalar gamma;
  Polynomial<F> delta;
  Polynomial<F> f;
};

/// Every (lambda, gamma, delta) with deg delta <= delta_degree_bound
/// satisfying (P), in lexicographic order of (lambda, gamma, delta
/// coefficients from the constant term up).  Over a finite field lambda and
/// gamma range over k* unless candidates are given; over the rationals
/// candidates are required and delta's coefficients also range over
/// {0} and the candidates.
template <Field F>
std::vector<PSolution<F>> solve_P_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                            int delta_degree_bound,
                                            const std::optional<std::vector<typename F::Scalar>>& candidates = {});

// --- Condition (Q) ----------------------------------------------------------

/// Fills nu, g and both certificates when (Q) holds for the partial witness.
template <Field F>
std::optional<IsoWitness<F>> check_Q_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                               const PSolution<F>& partial, const GroebnerLimits& limits = {});

/// The images (X2, Y2, Z2) of the witness as polynomials in X, Y, Z.
template <Field F>
std::array<Polynomial<F>, 3> witness_coordinates(const SurfacePresentation<F>& S, const IsoWitness<F>& w);

// --- Construction -------------------------------------------------------------

/// The map S2's ring -> S1's ring with preimages: X1 <= X/lambda,
/// Z1 <= (Z - delta(X1))/gamma, Y1 <= (Y - g(X1, Z1))/nu and
/// T1 <= lambda^e F1 T + F3 where F_i = f_i(X1, Y1, Z1) for the reverse
/// certificate (f1, f2, f3).  Throws InputError on an incomplete witness.
template <Field F>
RingMap<F> build_isomorphism(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                             const IsoWitness<F>& w);

// --- Decision -----------------------------------------------------------------

template <Field F>
struct SearchParams {
  /// Maximum degree of delta; nullopt means d + e - 1, the complete bound.
  std::optional<int> delta_degree_bound;
  /// lambda, gamma candidates; required over the rationals (default {1, -1}).
  std::optional<std::vector<typename F::Scalar>> candidates;
  GroebnerLimits limits;
  std::uint64_t max_candidates = 50'000'000;
};

template <Field F>
ClassificationVerdict<F> decide_isomorphic(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                           const SearchParams<F>& params = {});

/// Checks a user-supplied witness (lambda, gamma, delta); f is computed.
template <Field F>
ClassificationVerdict<F> verify_witness(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                        const typename F::Scalar& lambda, const typename F::Scalar& gamma,
                                        const Polynomial<F>& delta, const GroebnerLimits& limits = {});

// --- Automorphisms ------------------------------------------------------------

enum class CheckStatus { passed, failed, not_evaluated };

struct StructureCheck {
  CheckStatus status = CheckStatus::not_evaluated;
  std::string evidence;
};

template <Field F>
struct AutomorphismReport {
  bool well_defined = false;
  std::optional<bool> surjective;  // from preimages, when supplied
  std::optional<typename F::Scalar> lambda;
  std::optional<typename F::Scalar> gamma;
  std::optional<typename F::Scalar> nu;
  std::optional<Polynomial<F>> delta;
  std::optional<Polynomial<F>> g;
  std::optional<Polynomial<F>> unit_factor;  // f1 of psi(Q) = f1 Q + f2 G + f3 X^e
  std::array<StructureCheck, 6> checks;      // (i) .. (vi)
  bool all_passed() const;
};

/// Structure checks for an endomorphism of S's ring.  The shape checks
/// (i), (ii), (iv) read Laurent images and always run; the ideal checks
/// (iii), (v), (vi) run only for well-defined maps whose shapes pass.
template <Field F>
AutomorphismReport<F> verify_automorphism(const SurfacePresentation<F>& S, const RingMap<F>& m,
                                          const GroebnerLimits& limits = {});

// --- Random isomorphic pairs ----------------------------------------------------

struct RoundTripParams {
  int min_rs = 2, max_rs = 3;
  int min_de = 1, max_de = 3;
  int tail_terms = 3;
  /// delta may exceed the search bound; the search then finds a reduced one.
  int max_delta_degree = 3;
};

template <Field F>
struct RoundTripInstance {
  SurfacePresentation<F> S1;
  SurfacePresentation<F> S2;
  IsoWitness<F> planted;  // without certificates
};

/// A random S1, a random witness, and the S2 it forces: P2 solves (P)
/// exactly and Q2(X2, Y2, Z2) = nu^s Q1 + h2 G + h3 X^e with deg_Y h2 <= s-2
/// and deg_Y h3 < s.
RoundTripInstance<PrimeField> random_isomorphic_pair(const PrimeField& k, std::mt19937_64& rng,
                                                     const RoundTripParams& params = {});

}  // namespace ddsurf
