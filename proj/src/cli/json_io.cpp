#include "ddsurf/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ddsurf::io {

void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InputError(what + ": unknown key '" + key + "'");
}

namespace {

std::string get_string(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing '" + key + "'");
  if (!j.at(key).is_string()) throw InputError(what + ": '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

int get_int(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing '" + key + "'");
  if (!j.at(key).is_number_integer()) throw InputError(what + ": '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

Variables vars_from_json(const json& j, const std::string& what) {
  if (!j.contains("vars")) return Variables::standard();
  if (!j.at("vars").is_array()) throw InputError(what + ": 'vars' must be an array of names");
  std::vector<std::string> names;
  for (const auto& v : j.at("vars")) {
    if (!v.is_string()) throw InputError(what + ": variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  return Variables(std::move(names));
}

template <Field F>
std::vector<Polynomial<F>> polys_from_json(const json& j, const char* key, const F& field, const Variables& vars,
                                           const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError(what + ": '" + key + "' must be an array");
  std::vector<Polynomial<F>> out;
  for (const auto& p : j.at(key)) out.push_back(poly_from_json(p, field, vars));
  return out;
}

template <Field F>
void check_field(const json& j, const F& field, const std::string& what) {
  auto spec = declared_field(j);
  if (spec && !(*spec == field.spec()))
    throw FieldMismatch(what + ": declared field " + spec->to_string() + " differs from " +
                        field.spec().to_string());
}

template <Field F>
std::map<int, Polynomial<F>> assignment_from_json(const json& j, const Variables& keys, const Variables& values,
                                                  const F& field, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected an object of variable -> expression");
  std::map<int, Polynomial<F>> out;
  for (const auto& [name, expr] : j.items()) {
    int v = keys.index_of(name);
    if (v < 0) throw InputError(what + ": unknown variable '" + name + "'");
    out.emplace(v, poly_from_json(expr, field, values));
  }
  return out;
}

template <Field F>
json assignment_to_json(const std::map<int, Polynomial<F>>& m, const Variables& keys, const Variables& values) {
  json out = json::object();
  for (const auto& [v, p] : m) out[keys.name(v)] = to_string(p, values);
  return out;
}

}  // namespace

std::optional<FieldSpec> declared_field(const json& j) {
  if (!j.is_object() || !j.contains("field")) return std::nullopt;
  const json& f = j.at("field");
  if (f.is_object()) {
    require_keys(f, {"field", "p"}, "field descriptor");
    return declared_field(f);
  }
  if (!f.is_string()) throw InputError("field descriptor must be a string or object");
  auto name = f.get<std::string>();
  if (name == "Fp") {
    if (!j.contains("p") || !j.at("p").is_number_integer() || j.at("p").get<long long>() < 0)
      throw InputError("field descriptor 'Fp' needs an integer 'p'");
    return FieldSpec::prime(j.at("p").get<std::uint64_t>());
  }
  return parse_field_spec(name);
}

void put_field(json& j, const FieldSpec& spec) {
  if (spec.is_finite()) {
    j["field"] = "Fp";
    j["p"] = spec.p;
  } else {
    j["field"] = "Q";
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <Field F>
typename F::Scalar scalar_from_json(const json& j, const F& field) {
  if (j.is_number_integer()) return field.from_int(j.get<long long>());
  if (j.is_string()) return parse_scalar(field, j.get<std::string>());
  throw InputError("scalar must be an integer or a string");
}

template <Field F>
json scalar_to_json(const F& field, const typename F::Scalar& a) {
  return field.to_string(a);
}

template <Field F>
Polynomial<F> poly_from_json(const json& j, const F& field, const Variables& vars) {
  if (j.is_number_integer()) return Polynomial<F>::constant(field, field.from_int(j.get<long long>()));
  if (!j.is_string()) throw InputError("polynomial must be an expression string");
  return parse_poly(j.get<std::string>(), field, vars);
}

template <Field F>
json poly_to_json(const Polynomial<F>& p, const Variables& vars) {
  return to_string(p, vars);
}

template <Field F>
SurfacePresentation<F> surface_from_json(const json& j, const F& field) {
  const std::string what = "surface";
  require_keys(j, {"field", "p", "d", "e", "P", "Q"}, what);
  check_field(j, field, what);
  if (!j.contains("P") || !j.contains("Q")) throw InputError(what + ": missing 'P' or 'Q'");
  return make_surface(field, get_int(j, "d", what), get_int(j, "e", what), poly_from_json(j.at("P"), field),
                      poly_from_json(j.at("Q"), field));
}

template <Field F>
json surface_to_json(const SurfacePresentation<F>& S) {
  json j;
  put_field(j, S.field.spec());
  j["d"] = S.d;
  j["e"] = S.e;
  j["P"] = to_string(S.P);
  j["Q"] = to_string(S.Q);
  return j;
}

MonomialOrder order_from_name(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw InputError("unknown monomial order '" + name + "' (expected lex or grevlex)");
}

std::string order_name(const MonomialOrder& order) {
  return order.kind == MonomialOrder::Kind::lex ? "lex" : "grevlex";
}

template <Field F>
IdealBasis<F> ideal_from_json(const json& j, const F& field, IdealText* text) {
  const std::string what = "ideal";
  require_keys(j, {"field", "p", "vars", "generators", "order"}, what);
  check_field(j, field, what);
  Variables vars = vars_from_json(j, what);
  MonomialOrder order = j.contains("order") ? order_from_name(get_string(j, "order", what)) : MonomialOrder::grevlex();
  auto gens = polys_from_json(j, "generators", field, vars, what);
  if (text) *text = {vars, order};
  return {field, std::move(gens), order};
}

template <Field F>
RingPresentation<F> ring_from_json(const json& j, const F& field) {
  if (j.is_object() && j.contains("d")) return surface_ring(surface_from_json(j, field));
  const std::string what = "ring";
  require_keys(j, {"field", "p", "vars", "relations"}, what);
  check_field(j, field, what);
  Variables vars = vars_from_json(j, what);
  return make_presentation(field, vars, polys_from_json(j, "relations", field, vars, what));
}

template <Field F>
json ring_to_json(const RingPresentation<F>& R) {
  if (R.surface) return surface_to_json(*R.surface);
  json j;
  put_field(j, R.field.spec());
  j["vars"] = R.vars.names();
  j["relations"] = json::array();
  for (const auto& r : R.relations) j["relations"].push_back(to_string(r, R.vars));
  return j;
}

template <Field F>
RingMap<F> map_from_json(const json& j, const F& field, const RingPresentation<F>* default_ring) {
  const std::string what = "ring map";
  require_keys(j, {"field", "p", "source", "target", "images", "preimages"}, what);
  check_field(j, field, what);
  auto ring = [&](const char* key) {
    if (j.contains(key)) return ring_from_json(j.at(key), field);
    if (!default_ring) throw InputError(what + ": missing '" + key + "'");
    return *default_ring;
  };
  RingMap<F> m{ring("source"), ring("target"), {}, std::nullopt};
  if (!j.contains("images")) throw InputError(what + ": missing 'images'");
  m.images = assignment_from_json(j.at("images"), m.source.vars, m.target.vars, field, what + " images");
  if (j.contains("preimages"))
    m.preimages = assignment_from_json(j.at("preimages"), m.target.vars, m.source.vars, field, what + " preimages");
  return m;
}

template <Field F>
json map_to_json(const RingMap<F>& m) {
  json j;
  j["source"] = ring_to_json(m.source);
  j["target"] = ring_to_json(m.target);
  j["images"] = assignment_to_json(m.images, m.source.vars, m.target.vars);
  if (m.preimages) j["preimages"] = assignment_to_json(*m.preimages, m.target.vars, m.source.vars);
  return j;
}

template <Field F>
json certificate_to_json(const MembershipCertificate<F>& c, const Variables& vars) {
  json out = json::array();
  for (const auto& h : c.cofactors) out.push_back(to_string(h, vars));
  return out;
}

template <Field F>
json witness_to_json(const F& field, const IsoWitness<F>& w) {
  json j;
  j["lambda"] = scalar_to_json(field, w.lambda);
  j["gamma"] = scalar_to_json(field, w.gamma);
  j["delta"] = to_string(w.delta);
  j["f"] = to_string(w.f);
  j["nu"] = scalar_to_json(field, w.nu);
  j["g"] = to_string(w.g);
  if (w.h_cert) j["h"] = certificate_to_json(*w.h_cert);
  if (w.h_cert_rev) j["h_reverse"] = certificate_to_json(*w.h_cert_rev);
  return j;
}

template <Field F>
json verdict_to_json(const F& field, const ClassificationVerdict<F>& v) {
  json j;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  j["candidates_examined"] = v.candidates_examined;
  j["log"] = json::array();
  for (const auto& e : v.log) j["log"].push_back({{"check", e.check}, {"ok", e.ok}, {"detail", e.detail}});
  if (v.witness) j["witness"] = witness_to_json(field, *v.witness);
  if (v.map) j["map"] = map_to_json(*v.map);
  return j;
}

template <Field F>
json automorphism_to_json(const F& field, const AutomorphismReport<F>& a) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  json j;
  j["well_defined"] = a.well_defined;
  j["surjective"] = a.surjective ? json(*a.surjective) : json(nullptr);
  j["all_passed"] = a.all_passed();
  auto opt_scalar = [&](const auto& s) { return s ? scalar_to_json(field, *s) : json(nullptr); };
  auto opt_poly = [&](const auto& p) { return p ? json(to_string(*p)) : json(nullptr); };
  j["lambda"] = opt_scalar(a.lambda);
  j["gamma"] = opt_scalar(a.gamma);
  j["nu"] = opt_scalar(a.nu);
  j["delta"] = opt_poly(a.delta);
  j["g"] = opt_poly(a.g);
  j["unit_factor"] = opt_poly(a.unit_factor);
  j["checks"] = json::object();
  for (int i = 0; i < 6; ++i) {
    const auto& c = a.checks[i];
    const char* st = c.status == CheckStatus::passed ? "passed" : c.status == CheckStatus::failed ? "failed" : "not_evaluated";
    j["checks"][names[i]] = {{"status", st}, {"evidence", c.evidence}};
  }
  return j;
}

json ring_map_check_to_json(bool well_defined, const std::optional<bool>& surjective, bool isomorphism,
                            const std::vector<std::string>& diagnostics, const std::string& summary) {
  json j;
  j["well_defined"] = well_defined;
  j["surjective"] = surjective ? json(*surjective) : json(nullptr);
  j["isomorphism"] = isomorphism;
  j["diagnostics"] = diagnostics;
  j["summary"] = summary;
  return j;
}

#define DDSURF_INSTANTIATE(F)                                                                            \
  template typename F::Scalar scalar_from_json(const json&, const F&);                                   \
  template json scalar_to_json(const F&, const typename F::Scalar&);                                     \
  template Polynomial<F> poly_from_json(const json&, const F&, const Variables&);                        \
  template json poly_to_json(const Polynomial<F>&, const Variables&);                                    \
  template SurfacePresentation<F> surface_from_json(const json&, const F&);                              \
  template json surface_to_json(const SurfacePresentation<F>&);                                          \
  template IdealBasis<F> ideal_from_json(const json&, const F&, IdealText*);                             \
  template RingPresentation<F> ring_from_json(const json&, const F&);                                    \
  template json ring_to_json(const RingPresentation<F>&);                                                \
  template RingMap<F> map_from_json(const json&, const F&, const RingPresentation<F>*);                  \
  template json map_to_json(const RingMap<F>&);                                                          \
  template json certificate_to_json(const MembershipCertificate<F>&, const Variables&);                  \
  template json witness_to_json(const F&, const IsoWitness<F>&);                                         \
  template json verdict_to_json(const F&, const ClassificationVerdict<F>&);                              \
  template json automorphism_to_json(const F&, const AutomorphismReport<F>&);

DDSURF_INSTANTIATE(Rationals)
DDSURF_INSTANTIATE(PrimeField)

}  // namespace ddsurf::io
