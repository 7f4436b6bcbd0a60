#include "ddsurf/ringmap.hpp"

#include "ddsurf/parse.hpp"

namespace ddsurf {

namespace {

template <Field F>
void check_vars(const Polynomial<F>& p, const Variables& vars, const char* what) {
  for (const auto& t : p.terms())
    for (int v = vars.size(); v < kMaxVars; ++v)
      if (t.monomial[v]) throw InputError(std::string(what) + ": polynomial uses a variable outside the ring");
}

}  // namespace

template <Field F>
RingPresentation<F> make_presentation(const F& field, Variables vars, std::vector<Polynomial<F>> relations) {
  for (const auto& r : relations) {
    if (r.is_zero()) throw InputError("ring presentation: zero relation");
    if (!(r.field() == field)) throw FieldMismatch("ring presentation: relation over another field");
    check_vars(r, vars, "ring presentation");
  }
  return {field, std::move(vars), std::move(relations), std::nullopt};
}

template <Field F>
RingPresentation<F> surface_ring(const SurfacePresentation<F>& S) {
  auto rel = defining_relations(S);
  return {S.field, Variables::standard(), {rel[0], rel[1]}, S};
}

template <Field F>
std::string RingMapCheck<F>::summary() const {
  if (!well_defined) return "not well-defined: a relation does not map to zero";
  if (!surjective) return "well-defined and relations-preserving, surjectivity unverified";
  if (!*surjective) return "well-defined, but a preimage certificate fails";
  return "isomorphism: well-defined and surjective between domains of equal dimension";
}

template <Field F>
RingEquality<F>::RingEquality(const RingPresentation<F>& ring, EqualityBackend backend, const GroebnerLimits& limits)
    : ring_(&ring), backend_(backend) {
  if (backend_ == EqualityBackend::automatic)
    backend_ = ring.surface ? EqualityBackend::laurent : EqualityBackend::groebner;
  if (backend_ == EqualityBackend::laurent && !ring.surface)
    throw InputError("Laurent equality needs a double Danielewski presentation");
  if (backend_ == EqualityBackend::groebner)
    gb_ = buchberger(IdealBasis<F>{ring.field, ring.relations, MonomialOrder::grevlex()}, limits);
}

template <Field F>
bool RingEquality<F>::is_zero(const Polynomial<F>& p) const {
  if (backend_ == EqualityBackend::laurent) return laurent_nf(*ring_->surface, p).is_zero();
  return normal_form(p, *gb_).is_zero();
}

template <Field F>
Polynomial<F> apply(const RingMap<F>& m, const Polynomial<F>& p) {
  return substitute(p, m.images);
}

template <Field F>
RingMapCheck<F> verify_ring_map(const RingMap<F>& m, EqualityBackend backend, const GroebnerLimits& limits) {
  RingMapCheck<F> out;
  const Variables& sv = m.source.vars;
  const Variables& tv = m.target.vars;
  for (int v = 0; v < sv.size(); ++v)
    if (!m.images.count(v)) throw InputError("ring map: no image for source variable " + sv.name(v));
  for (const auto& [v, img] : m.images) {
    if (v >= sv.size()) throw InputError("ring map: image for a variable outside the source ring");
    check_vars(img, tv, "ring map image");
  }

  RingEquality<F> target_eq(m.target, backend, limits);
  out.well_defined = true;
  for (const auto& rel : m.source.relations) {
    auto img = apply(m, rel);
    if (!target_eq.is_zero(img)) {
      out.well_defined = false;
      out.diagnostics.push_back("relation " + to_string(rel, sv) + " maps to " + to_string(img, tv) +
                                ", which is nonzero in the target");
    }
  }
  if (m.preimages) {
    bool all = true;
    for (int w = 0; w < tv.size(); ++w) {
      auto it = m.preimages->find(w);
      if (it == m.preimages->end()) {
        all = false;
        out.diagnostics.push_back("no preimage for target generator " + tv.name(w));
        continue;
      }
      check_vars(it->second, sv, "preimage");
      auto back = apply(m, it->second);
      if (!target_eq.equal(back, Polynomial<F>::variable(m.target.field, w))) {
        all = false;
        out.diagnostics.push_back("preimage " + to_string(it->second, sv) + " of " + tv.name(w) + " maps to " +
                                  to_string(back, tv));
      }
    }
    out.surjective = all;
  }
  out.isomorphism = out.well_defined && out.surjective.value_or(false);
  return out;
}

template <Field F>
RingMap<F> compose(const RingMap<F>& first, const RingMap<F>& second) {
  RingMap<F> out{first.source, second.target, {}, std::nullopt};
  for (const auto& [v, img] : first.images) out.images.emplace(v, substitute(img, second.images));
  if (first.preimages && second.preimages) {
    std::map<int, Polynomial<F>> pre;
    for (const auto& [w, p] : *second.preimages) pre.emplace(w, substitute(p, *first.preimages));
    out.preimages = std::move(pre);
  }
  return out;
}

#define DDSURF_INSTANTIATE(F)                                                                             \
  template RingPresentation<F> make_presentation(const F&, Variables, std::vector<Polynomial<F>>);        \
  template RingPresentation<F> surface_ring(const SurfacePresentation<F>&);                               \
  template struct RingMapCheck<F>;                                                                        \
  template class RingEquality<F>;                                                                         \
  template Polynomial<F> apply(const RingMap<F>&, const Polynomial<F>&);                                  \
  template RingMapCheck<F> verify_ring_map(const RingMap<F>&, EqualityBackend, const GroebnerLimits&);    \
  template RingMap<F> compose(const RingMap<F>&, const RingMap<F>&);

DDSURF_INSTANTIATE(Rationals)
DDSURF_INSTANTIATE(PrimeField)

}  // namespace ddsurf
