#include "ddsurf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ddsurf/examples.hpp"
#include "ddsurf/json_io.hpp"

namespace ddsurf::cli {

using io::json;

namespace {

struct Options {
  std::string field;  // empty: taken from the input files
  std::string order = "grevlex";
  std::optional<int> delta_bound;
  std::string candidates;
  std::optional<int> max_degree;
  std::optional<std::size_t> max_basis;
  std::uint64_t seed = examples::Options{}.seed;
  std::string json_out;

  // command arguments
  std::vector<std::string> files;
  std::string poly;
  std::optional<int> n;
  std::string witness;
  std::string backend = "auto";
  std::string P;
  std::optional<int> d;
  std::string bounds;
  std::string part;
  std::string u;
  std::string low;
  std::optional<int> instances;
  bool list = false;
};

struct Outcome {
  json report;
  int code = affirmative;
};

GroebnerLimits limits_of(const Options& o) {
  GroebnerLimits l;
  if (o.max_degree) l.max_degree = *o.max_degree;
  if (o.max_basis) l.max_basis = *o.max_basis;
  return l;
}

/// Field from the flag and the files; they must agree.  fallback applies
/// when neither names one.
FieldSpec resolve_field(const Options& o, const std::vector<json>& inputs, FieldSpec fallback = FieldSpec::rationals()) {
  std::optional<FieldSpec> spec;
  if (!o.field.empty()) spec = parse_field_spec(o.field);
  for (const auto& j : inputs) {
    auto f = io::declared_field(j);
    if (!f) continue;
    if (spec && !(*spec == *f))
      throw FieldMismatch("inputs declare fields " + spec->to_string() + " and " + f->to_string());
    spec = f;
  }
  return spec.value_or(fallback);
}

/// Drops the field keys so loaders see the resolved field only through
/// their argument.
json without_field(json j) {
  if (j.is_object()) {
    j.erase("field");
    j.erase("p");
  }
  return j;
}

std::vector<int> parse_int_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": '" + item + "' is not a non-negative integer");
    }
  }
  if (out.size() != count) throw InputError(std::string(what) + ": expected " + std::to_string(count) + " values");
  return out;
}

template <Field F>
std::optional<std::vector<typename F::Scalar>> candidates_of(const Options& o, const F& k) {
  if (o.candidates.empty()) return std::nullopt;
  std::vector<typename F::Scalar> out;
  std::stringstream ss(o.candidates);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto c = parse_scalar(k, item);
    if (k.is_zero(c)) throw InputError("--candidates: zero is not a unit");
    out.push_back(c);
  }
  if (out.empty()) throw InputError("--candidates: empty list");
  return out;
}

template <Field F>
std::string laurent_text(const LaurentPoly<F>& l) {
  if (l.is_zero()) return "0";
  std::string s;
  const F& k = l.field();
  auto terms = l.terms();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return std::tie(a.z, a.x) > std::tie(b.z, b.x); });
  for (const auto& t : terms) {
    std::string c = k.to_string(t.coeff);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    std::string mono;
    if (t.x) mono += "x" + (t.x == 1 ? std::string() : "^" + std::to_string(t.x));
    if (t.z) mono += (mono.empty() ? "" : "*") + std::string("z") + (t.z == 1 ? "" : "^" + std::to_string(t.z));
    if (mono.empty()) s += c;
    else if (c == "1") s += mono;
    else s += c + "*" + mono;
  }
  return s;
}

// --- Commands -----------------------------------------------------------------

template <Field F>
Outcome cmd_validate(const Options&, const F& k, const json& in) {
  auto S = io::surface_from_json(without_field(in), k);
  auto a = validate(S);
  json r = io::surface_to_json(S);
  r = {{"surface", r},
       {"r", S.r},
       {"s", S.s},
       {"ml_known", a.ml_known},
       {"theorem_I_applicable", a.theorem_I_applicable},
       {"theorem_II_applicable", a.theorem_II_applicable},
       {"notes", a.notes}};
  return {r, affirmative};
}

bool is_surface(const json& j) { return j.is_object() && j.contains("d"); }

template <Field F>
Outcome cmd_nf(const Options& o, const F& k, const json& in) {
  if (o.poly.empty()) throw InputError("nf: --poly is required");
  if (is_surface(in)) {
    auto S = io::surface_from_json(without_field(in), k);
    auto p = parse_poly(o.poly, k);
    auto R = surface_ring(S);
    auto gb = buchberger(IdealBasis<F>{k, R.relations, io::order_from_name(o.order)}, limits_of(o));
    json r = {{"poly", to_string(p)},
              {"laurent_image", laurent_text(laurent_nf(S, p))},
              {"normal_form", to_string(normal_form(p, gb))},
              {"order", o.order}};
    return {r, affirmative};
  }
  io::IdealText text;
  auto basis = io::ideal_from_json(without_field(in), k, &text);
  if (o.order != "grevlex" || !in.contains("order")) basis.order = io::order_from_name(o.order);
  auto p = parse_poly(o.poly, k, text.vars);
  auto red = reduce_full(p, buchberger(basis, limits_of(o)));
  return {{{"poly", to_string(p, text.vars)},
           {"normal_form", to_string(red.normal_form, text.vars)},
           {"certificate", io::certificate_to_json(red.certificate, text.vars)},
           {"order", io::order_name(basis.order)}},
          affirmative};
}

/// Generators and variables of an ideal or surface input, with X^n added
/// when n is given.
template <Field F>
std::pair<IdealBasis<F>, Variables> ideal_input(const Options& o, const F& k, const json& in) {
  IdealBasis<F> basis{k, {}, io::order_from_name(o.order)};
  Variables vars;
  if (is_surface(in)) {
    auto S = io::surface_from_json(without_field(in), k);
    auto rel = defining_relations(S);
    basis.generators = {rel[0], rel[1]};
  } else {
    io::IdealText text;
    basis = io::ideal_from_json(without_field(in), k, &text);
    if (!in.contains("order")) basis.order = io::order_from_name(o.order);
    vars = text.vars;
  }
  if (o.n) {
    if (*o.n < 0) throw InputError("--n must be non-negative");
    if (vars.index_of("X") < 0) throw InputError("--n needs a variable named X");
    basis.generators.insert(basis.generators.begin(), Polynomial<F>::variable(k, vars.index_of("X"), *o.n));
  }
  return {basis, vars};
}

template <Field F>
json generators_json(const IdealBasis<F>& b, const Variables& vars) {
  json g = json::array();
  for (const auto& p : b.generators) g.push_back(to_string(p, vars));
  return g;
}

template <Field F>
Outcome cmd_gb(const Options& o, const F& k, const json& in) {
  auto [basis, vars] = ideal_input(o, k, in);
  auto gb = buchberger(basis, limits_of(o));
  json elements = json::array(), transform = json::array();
  for (std::size_t i = 0; i < gb.elements.size(); ++i) {
    elements.push_back(to_string(gb.elements[i], vars));
    transform.push_back(io::certificate_to_json(MembershipCertificate<F>{gb.transform[i]}, vars));
  }
  return {{{"generators", generators_json(basis, vars)},
           {"order", io::order_name(basis.order)},
           {"basis", elements},
           {"transform", transform}},
          affirmative};
}

template <Field F>
Outcome cmd_member(const Options& o, const F& k, const json& in) {
  if (o.poly.empty()) throw InputError("member: --poly is required");
  auto [basis, vars] = ideal_input(o, k, in);
  auto p = parse_poly(o.poly, k, vars);
  auto gb = buchberger(basis, limits_of(o));
  auto red = reduce_full(p, gb);
  json r = {{"poly", to_string(p, vars)}, {"generators", generators_json(basis, vars)}, {"order", io::order_name(basis.order)}};
  if (red.normal_form.is_zero()) {
    r["member"] = true;
    r["certificate"] = io::certificate_to_json(red.certificate, vars);
    return {r, affirmative};
  }
  r["member"] = false;
  r["normal_form"] = to_string(red.normal_form, vars);
  return {r, negative};
}

int verdict_code(Status s) {
  switch (s) {
    case Status::isomorphic: return affirmative;
    case Status::not_isomorphic: return negative;
    default: return inconclusive;
  }
}

template <Field F>
Outcome cmd_iso_check(const Options& o, const F& k, const json& a, const json& b, const json& w) {
  auto S1 = io::surface_from_json(without_field(a), k), S2 = io::surface_from_json(without_field(b), k);
  io::require_keys(w, {"lambda", "gamma", "delta", "f"}, "witness");
  if (!w.contains("lambda") || !w.contains("gamma")) throw InputError("witness: needs lambda and gamma");
  auto lambda = io::scalar_from_json(w.at("lambda"), k), gamma = io::scalar_from_json(w.at("gamma"), k);
  auto delta = w.contains("delta") ? io::poly_from_json(w.at("delta"), k) : Polynomial<F>(k);
  auto v = verify_witness(S1, S2, lambda, gamma, delta, limits_of(o));
  if (w.contains("f") && v.witness && !(io::poly_from_json(w.at("f"), k) == v.witness->f))
    throw InputError("witness: supplied f = " + w.at("f").dump() + " disagrees with the computed " +
                     to_string(v.witness->f));
  return {io::verdict_to_json(k, v), verdict_code(v.status)};
}

template <Field F>
Outcome cmd_iso_search(const Options& o, const F& k, const json& a, const json& b) {
  auto S1 = io::surface_from_json(without_field(a), k), S2 = io::surface_from_json(without_field(b), k);
  SearchParams<F> p;
  p.delta_degree_bound = o.delta_bound;
  p.candidates = candidates_of(o, k);
  p.limits = limits_of(o);
  auto v = decide_isomorphic(S1, S2, p);
  return {io::verdict_to_json(k, v), verdict_code(v.status)};
}

EqualityBackend backend_of(const std::string& s) {
  if (s == "auto") return EqualityBackend::automatic;
  if (s == "laurent") return EqualityBackend::laurent;
  if (s == "groebner") return EqualityBackend::groebner;
  throw InputError("unknown backend '" + s + "' (expected auto, laurent or groebner)");
}

/// Strips declared fields from a map document and its rings.
json map_without_fields(json m) {
  m = without_field(m);
  for (const char* key : {"source", "target"})
    if (m.contains(key)) m[key] = without_field(m[key]);
  return m;
}

std::vector<json> map_field_carriers(const json& m) {
  std::vector<json> out{m};
  for (const char* key : {"source", "target"})
    if (m.is_object() && m.contains(key)) out.push_back(m.at(key));
  return out;
}

template <Field F>
Outcome cmd_map_verify(const Options& o, const F& k, const json& in) {
  auto m = io::map_from_json(map_without_fields(in), k);
  auto c = verify_ring_map(m, backend_of(o.backend), limits_of(o));
  json r = io::ring_map_check_to_json(c.well_defined, c.surjective, c.isomorphism, c.diagnostics, c.summary());
  r["map"] = io::map_to_json(m);
  int code = c.isomorphism ? affirmative : (!c.well_defined || c.surjective == false) ? negative : inconclusive;
  return {r, code};
}

template <Field F>
Outcome cmd_auto_verify(const Options& o, const F& k, const json& s, const json& in) {
  auto S = io::surface_from_json(without_field(s), k);
  auto ring = surface_ring(S);
  auto m = io::map_from_json(map_without_fields(in), k, &ring);
  auto a = verify_automorphism(S, m, limits_of(o));
  bool failed = !a.well_defined || a.surjective == false;
  for (const auto& c : a.checks) failed = failed || c.status == CheckStatus::failed;
  json r = io::automorphism_to_json(k, a);
  r["surface"] = io::surface_to_json(S);
  return {r, a.all_passed() ? affirmative : failed ? negative : inconclusive};
}

template <Field F>
Outcome cmd_lemma1(const Options& o, const F& k) {
  if (o.P.empty() || !o.d) throw InputError("lemma1: --P and --d are required");
  auto P = parse_poly(o.P, k);
  Lemma1Bounds b;
  if (!o.bounds.empty()) {
    auto v = parse_int_list(o.bounds, 3, "--bounds");
    b = {v[0], v[1], v[2]};
  }
  auto rep = lemma1_oracle(P, *o.d, b);
  json ce = json::array();
  for (const auto& c : rep.counterexamples)
    ce.push_back({{"g", to_string(c.g)}, {"w", to_string(c.w)}, {"h", to_string(c.h)}});
  json r = {{"P", to_string(P)},
            {"d", *o.d},
            {"bounds", {b.x, b.y, b.z}},
            {"pairs_examined", rep.pairs_examined},
            {"hypothesis_holds", rep.hypothesis_holds},
            {"violations", rep.violations},
            {"counterexamples", ce}};
  return {r, rep.violations == 0 ? affirmative : negative};
}

template <Field F>
Outcome cmd_lemma2(const Options& o, const F& k, const json& in) {
  auto S = io::surface_from_json(without_field(in), k);
  if (o.part != "i" && o.part != "ii") throw InputError("lemma2: --part must be i or ii");
  if (!o.n) throw InputError("lemma2: --n is required");
  auto part = o.part == "i" ? Lemma2Part::i : Lemma2Part::ii;
  json r = {{"surface", io::surface_to_json(S)}, {"part", o.part}, {"n", *o.n}};
  if (!o.u.empty() || !o.low.empty()) {
    auto u = parse_scalar(k, o.u.empty() ? std::string("1") : o.u);
    auto low = o.low.empty() ? Polynomial<F>(k) : parse_poly(o.low, k);
    bool holds = lemma2_oracle(S, part, u, low, *o.n, limits_of(o));
    r["u"] = io::scalar_to_json(k, u);
    r["lowpoly"] = to_string(low);
    r["non_member"] = holds;
    if (!holds) {
      // The disproof: a certificate for the element in (X^n, X^d Y - P, X^e T - Q).
      auto lead = part == Lemma2Part::i ? Polynomial<F>::variable(k, var::X, S.d) * Polynomial<F>::variable(k, var::Y)
                                        : Polynomial<F>::variable(k, var::X, S.e) * Polynomial<F>::variable(k, var::T);
      if (auto cert = in_ideal_mod_xn(S, lead.scaled(u) + low, *o.n, limits_of(o)))
        r["certificate"] = io::certificate_to_json(*cert);
    }
    return {r, holds ? affirmative : negative};
  }
  Lemma2SweepBounds b;
  if (!o.bounds.empty()) {
    auto v = parse_int_list(o.bounds, 3, "--bounds");
    b = {v[0], v[1], v[2]};
  }
  auto rep = lemma2_sweep(S, part, *o.n, b, limits_of(o));
  json ce = json::array();
  for (const auto& [u, low] : rep.counterexamples)
    ce.push_back({{"u", io::scalar_to_json(k, u)}, {"lowpoly", to_string(low)}});
  r["bounds"] = {b.x, b.y, b.z};
  r["instances"] = rep.instances;
  r["counterexamples"] = ce;
  return {r, rep.counterexamples.empty() ? affirmative : negative};
}

Outcome cmd_examples(const Options& o) {
  if (o.list) return {{{"examples", examples::names()}}, affirmative};
  std::vector<std::string> which = o.files.empty() ? examples::names() : o.files;
  examples::Options eo;
  eo.seed = o.seed;
  if (o.instances) eo.roundtrip_instances = *o.instances;
  json reports = json::array();
  bool any_fail = false, any_pass = false;
  for (const auto& name : which) {
    auto rep = examples::run_example(name, eo);
    any_fail = any_fail || rep.outcome == examples::Outcome::fail;
    any_pass = any_pass || rep.outcome == examples::Outcome::pass;
    reports.push_back(examples::to_json(rep));
  }
  return {{{"examples", reports}}, any_fail ? negative : any_pass ? affirmative : inconclusive};
}

// --- Dispatch -------------------------------------------------------------------

Outcome dispatch(const std::string& command, const Options& o) {
  auto need_files = [&](std::size_t count) {
    if (o.files.size() != count)
      throw InputError(command + ": expected " + std::to_string(count) + " input file(s)");
    std::vector<json> docs;
    for (const auto& f : o.files) docs.push_back(io::read_file(f));
    return docs;
  };
  auto with_field = [&](const std::vector<json>& carriers, FieldSpec fallback, auto&& fn) {
    return visit_field(resolve_field(o, carriers, fallback), fn);
  };
  if (command == "examples") return cmd_examples(o);
  if (command == "lemma1")
    return with_field({}, FieldSpec::prime(2), [&](const auto& k) { return cmd_lemma1(o, k); });
  if (command == "validate" || command == "nf" || command == "gb" || command == "member" || command == "lemma2") {
    auto docs = need_files(1);
    return with_field(docs, FieldSpec::rationals(), [&](const auto& k) {
      if (command == "validate") return cmd_validate(o, k, docs[0]);
      if (command == "nf") return cmd_nf(o, k, docs[0]);
      if (command == "gb") return cmd_gb(o, k, docs[0]);
      if (command == "member") return cmd_member(o, k, docs[0]);
      return cmd_lemma2(o, k, docs[0]);
    });
  }
  if (command == "iso-check") {
    auto docs = need_files(2);
    if (o.witness.empty()) throw InputError("iso-check: --witness is required");
    auto w = io::read_file(o.witness);
    return with_field(docs, FieldSpec::rationals(), [&](const auto& k) { return cmd_iso_check(o, k, docs[0], docs[1], w); });
  }
  if (command == "iso-search") {
    auto docs = need_files(2);
    return with_field(docs, FieldSpec::rationals(), [&](const auto& k) { return cmd_iso_search(o, k, docs[0], docs[1]); });
  }
  if (command == "map-verify") {
    auto docs = need_files(1);
    return with_field(map_field_carriers(docs[0]), FieldSpec::rationals(),
                      [&](const auto& k) { return cmd_map_verify(o, k, docs[0]); });
  }
  if (command == "auto-verify") {
    auto docs = need_files(2);
    auto carriers = map_field_carriers(docs[1]);
    carriers.push_back(docs[0]);
    return with_field(carriers, FieldSpec::rationals(), [&](const auto& k) { return cmd_auto_verify(o, k, docs[0], docs[1]); });
  }
  throw InputError("unknown command '" + command + "'");
}

void emit(const json& report, const Options& o, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  out << text;
  if (!o.json_out.empty()) {
    std::ofstream f(o.json_out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.json_out + "'");
    f << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Isomorphism classification of double Danielewski surfaces", "ddsurf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "Q or Fp:<p>; defaults to the field named by the inputs");
  app.add_option("--order", o.order, "lex or grevlex")->check(CLI::IsMember({"lex", "grevlex"}));
  app.add_option("--delta-bound", o.delta_bound, "maximum degree of delta in the witness search");
  app.add_option("--candidates", o.candidates, "comma-separated lambda/gamma candidates");
  app.add_option("--max-degree", o.max_degree, "Groebner basis degree cap");
  app.add_option("--max-basis", o.max_basis, "Groebner basis size cap");
  app.add_option("--seed", o.seed, "seed for randomized examples");
  app.add_option("--json-out", o.json_out, "also write the report to this path");

  auto files = [&](CLI::App* sub, const char* what) { sub->add_option("files", o.files, what); };
  auto* validate_cmd = app.add_subcommand("validate", "check a surface presentation");
  files(validate_cmd, "surface JSON");
  auto* nf = app.add_subcommand("nf", "normal form in a surface ring or modulo an ideal");
  files(nf, "surface or ideal JSON");
  nf->add_option("--poly", o.poly, "polynomial expression");
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis with transform");
  files(gb, "surface or ideal JSON");
  gb->add_option("--n", o.n, "add X^n to the generators");
  auto* member = app.add_subcommand("member", "ideal membership with certificate");
  files(member, "surface or ideal JSON");
  member->add_option("--poly", o.poly, "polynomial expression");
  member->add_option("--n", o.n, "add X^n to the generators");
  auto* iso_check = app.add_subcommand("iso-check", "verify a witness (lambda, gamma, delta)");
  files(iso_check, "S1 and S2 surface JSON");
  iso_check->add_option("--witness", o.witness, "witness JSON");
  auto* iso_search = app.add_subcommand("iso-search", "decide isomorphism by witness search");
  files(iso_search, "S1 and S2 surface JSON");
  auto* map_verify = app.add_subcommand("map-verify", "check a ring map and its preimages");
  files(map_verify, "ring map JSON");
  map_verify->add_option("--backend", o.backend, "auto, laurent or groebner");
  auto* auto_verify = app.add_subcommand("auto-verify", "structure checks for an endomorphism");
  files(auto_verify, "surface JSON and map JSON");
  auto* lemma1 = app.add_subcommand("lemma1", "exhaustive divisibility lemma check (default field F2)");
  lemma1->add_option("--P", o.P, "P(X, Z)");
  lemma1->add_option("--d", o.d, "exponent d");
  lemma1->add_option("--bounds", o.bounds, "x,y,z exponent bounds");
  auto* lemma2 = app.add_subcommand("lemma2", "non-vanishing lemma modulo X^n");
  files(lemma2, "surface JSON");
  lemma2->add_option("--part", o.part, "i or ii");
  lemma2->add_option("--n", o.n, "modulus exponent");
  lemma2->add_option("--u", o.u, "unit u for a single instance");
  lemma2->add_option("--low", o.low, "lower-order polynomial for a single instance");
  lemma2->add_option("--bounds", o.bounds, "x,y,z exponent bounds for the sweep");
  auto* ex = app.add_subcommand("examples", "run named example cases");
  ex->add_option("names", o.files, "cases to run (default: all)");
  ex->add_flag("--list", o.list, "list case names");
  ex->add_option("--instances", o.instances, "round-trip instances");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return affirmative;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return affirmative;
  } catch (const CLI::ParseError& e) {
    err << "ddsurf: " << e.what() << "\n";
    emit(json{{"error", e.what()}}, Options{}, out);
    return input_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome r = dispatch(command, o);
    r.report["command"] = command;
    r.report["exit_code"] = r.code;
    emit(r.report, o, out);
    return r.code;
  } catch (const ResourceExhausted& e) {
    err << "ddsurf: " << e.what() << "\n";
    emit(json{{"command", command}, {"error", e.what()}, {"exit_code", inconclusive}}, o, out);
    return inconclusive;
  } catch (const Error& e) {  // InputError, FieldMismatch
    err << "ddsurf: " << e.what() << "\n";
    emit(json{{"command", command}, {"error", e.what()}, {"exit_code", input_error}}, Options{}, out);
    return input_error;
  } catch (const json::exception& e) {
    err << "ddsurf: malformed JSON input: " << e.what() << "\n";
    emit(json{{"command", command}, {"error", e.what()}, {"exit_code", input_error}}, Options{}, out);
    return input_error;
  }
}

}  // namespace ddsurf::cli
