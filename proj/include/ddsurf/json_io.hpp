#pragma once

// JSON forms of the library's inputs and reports.
//
// Polynomials travel as expression strings, scalars as decimal or a/b
// strings (bare JSON integers are accepted on input).  A field is given by
// a "field" key holding "Q", "Fp:<p>" or "Fp" with a sibling "p", or by a
// nested {"field": "Fp", "p": 5}.  Loaders reject unknown keys.
//
// Output objects use nlohmann::json's sorted keys, so identical inputs
// print byte-identical reports.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddsurf/classify.hpp"
#include "ddsurf/groebner.hpp"
#include "ddsurf/parse.hpp"
#include "ddsurf/ringmap.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf::io {

using json = nlohmann::json;

/// Throws InputError naming the first key of j outside allowed.
void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& what);

/// The field an object declares, or nullopt.
std::optional<FieldSpec> declared_field(const json& j);
/// Adds "field" (and "p") to j.
void put_field(json& j, const FieldSpec& spec);

/// Reads a JSON file; InputError on I/O or syntax errors.
json read_file(const std::string& path);

template <Field F>
typename F::Scalar scalar_from_json(const json& j, const F& field);
template <Field F>
json scalar_to_json(const F& field, const typename F::Scalar& a);
template <Field F>
Polynomial<F> poly_from_json(const json& j, const F& field, const Variables& vars = Variables::standard());
template <Field F>
json poly_to_json(const Polynomial<F>& p, const Variables& vars = Variables::standard());

/// {"field", "d", "e", "P", "Q"}
template <Field F>
SurfacePresentation<F> surface_from_json(const json& j, const F& field);
template <Field F>
json surface_to_json(const SurfacePresentation<F>& S);

/// {"field", "vars", "generators", "order"}; vars default to X, Y, Z, T
/// and order to grevlex.
struct IdealText {
  Variables vars;
  MonomialOrder order;
};
template <Field F>
IdealBasis<F> ideal_from_json(const json& j, const F& field, IdealText* text = nullptr);
MonomialOrder order_from_name(const std::string& name);
std::string order_name(const MonomialOrder& order);

/// A surface object (has "d") or {"field", "vars", "relations"}.
template <Field F>
RingPresentation<F> ring_from_json(const json& j, const F& field);
template <Field F>
json ring_to_json(const RingPresentation<F>& R);

/// {"source", "target", "images", "preimages"}; source and target default
/// to default_ring when absent.
template <Field F>
RingMap<F> map_from_json(const json& j, const F& field, const RingPresentation<F>* default_ring = nullptr);
template <Field F>
json map_to_json(const RingMap<F>& m);

template <Field F>
json certificate_to_json(const MembershipCertificate<F>& c, const Variables& vars = Variables::standard());
template <Field F>
json witness_to_json(const F& field, const IsoWitness<F>& w);
template <Field F>
json verdict_to_json(const F& field, const ClassificationVerdict<F>& v);
template <Field F>
json automorphism_to_json(const F& field, const AutomorphismReport<F>& a);
json ring_map_check_to_json(bool well_defined, const std::optional<bool>& surjective, bool isomorphism,
                            const std::vector<std::string>& diagnostics, const std::string& summary);

}  // namespace ddsurf::io
