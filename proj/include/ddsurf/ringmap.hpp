#pragma once

// Finitely presented k-algebras and maps between them.
//
// A RingMap is given by generator images.  It is checked by sending every
// source relation into the target ring, and surjectivity by sending each
// supplied preimage back and comparing with the target generator.  For
// domains of equal dimension the two together prove an isomorphism.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddsurf/groebner.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

template <Field F>
struct RingPresentation {
  F field;
  Variables vars;
  std::vector<Polynomial<F>> relations;
  /// Set when the ring is a double Danielewski surface in the standard
  /// variables; enables the Laurent equality backend.
  std::optional<SurfacePresentation<F>> surface;
};

template <Field F>
RingPresentation<F> make_presentation(const F& field, Variables vars, std::vector<Polynomial<F>> relations);

template <Field F>
RingPresentation<F> surface_ring(const SurfacePresentation<F>& S);

template <Field F>
struct RingMap {
  RingPresentation<F> source;
  RingPresentation<F> target;
  /// source variable index -> polynomial in the target variables
  std::map<int, Polynomial<F>> images;
  /// target variable index -> polynomial in the source variables
  std::optional<std::map<int, Polynomial<F>>> preimages;
};

enum class EqualityBackend { automatic, laurent, groebner };

template <Field F>
struct RingMapCheck {
  bool well_defined = false;        // every source relation maps to zero
  std::optional<bool> surjective;   // nullopt when no preimages were supplied
  bool isomorphism = false;         // well_defined and surjective
  std::vector<std::string> diagnostics;
  std::string summary() const;
};

/// Equality in a presented ring.  The Groebner basis of the relations is
/// computed once per instance.
template <Field F>
class RingEquality {
 public:
  RingEquality(const RingPresentation<F>& ring, EqualityBackend backend = EqualityBackend::automatic,
               const GroebnerLimits& limits = {});
  bool is_zero(const Polynomial<F>& p) const;
  bool equal(const Polynomial<F>& a, const Polynomial<F>& b) const { return is_zero(a - b); }
  EqualityBackend backend() const { return backend_; }

 private:
  const RingPresentation<F>* ring_;
  EqualityBackend backend_;
  std::optional<GroebnerBasis<F>> gb_;
};

template <Field F>
RingMapCheck<F> verify_ring_map(const RingMap<F>& m, EqualityBackend backend = EqualityBackend::automatic,
                                const GroebnerLimits& limits = {});

/// first: A -> B, second: B -> C; returns C-images of A's generators.  The
/// composite has preimages when both factors do.
template <Field F>
RingMap<F> compose(const RingMap<F>& first, const RingMap<F>& second);

/// The image of a source-ring polynomial.
template <Field F>
Polynomial<F> apply(const RingMap<F>& m, const Polynomial<F>& p);

}  // namespace ddsurf
