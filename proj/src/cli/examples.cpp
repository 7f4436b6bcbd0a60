#include "ddsurf/examples.hpp"

#include <random>

namespace ddsurf::examples {

using io::json;

namespace {

// Ring maps are listed source -> target; "expect" holds the verdict the
// checker must reproduce.  Surfaces are {d, e, P, Q}; other rings give
// vars and relations.

const char* kRemarkI = R"json({
  "field": "Q",
  "rings": {
    "A1": {"d": 1, "e": 3, "P": "Z", "Q": "Y^4"},
    "A2": {"d": 2, "e": 3, "P": "Z", "Q": "Y^4"},
    "A3": {"d": 3, "e": 3, "P": "Z", "Q": "Y^4"},
    "A4": {"d": 4, "e": 3, "P": "Z", "Q": "Y^4"},
    "C":  {"vars": ["X", "Y", "T"], "relations": ["X^3*T - Y^4"]}
  },
  "maps": [
    {"name": "A2 -> C, Z to X^2*Y", "source": "A2", "target": "C",
     "images": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "C -> A2", "source": "C", "target": "A2",
     "images": {"X": "X", "Y": "Y", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "A1 -> A2, Z to X*Y", "source": "A1", "target": "A2",
     "images": {"X": "X", "Y": "Y", "Z": "X*Y", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "A3 -> A2, Z to X*Z", "source": "A3", "target": "A2",
     "images": {"X": "X", "Y": "Y", "Z": "X*Z", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "A4 -> A2, Z to X^2*Z", "source": "A4", "target": "A2",
     "images": {"X": "X", "Y": "Y", "Z": "X^2*Z", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "A4 -> A2, Z to Z (control)", "source": "A4", "target": "A2",
     "images": {"X": "X", "Y": "Y", "Z": "Z", "T": "T"}, "expect": "not_well_defined"}
  ],
  "invariants": [
    {"S1": "A2", "S2": "A3", "expect": "out_of_scope"},
    {"S1": "A2", "S2": "A4", "expect": "out_of_scope"}
  ]
})json";

const char* kRemarkII = R"json({
  "field": "Q",
  "rings": {
    "R":  {"vars": ["X", "Z", "T"], "relations": ["X^3*T - Z^2"]},
    "S1": {"d": 1, "e": 2, "P": "Z^2", "Q": "Y"},
    "S2": {"d": 2, "e": 1, "P": "Z^2", "Q": "Y"}
  },
  "maps": [
    {"name": "S1 -> R", "source": "S1", "target": "R",
     "images": {"X": "X", "Y": "X^2*T", "Z": "Z", "T": "T"},
     "preimages": {"X": "X", "Z": "Z", "T": "T"}, "expect": "isomorphism"},
    {"name": "S2 -> R", "source": "S2", "target": "R",
     "images": {"X": "X", "Y": "X*T", "Z": "Z", "T": "T"},
     "preimages": {"X": "X", "Z": "Z", "T": "T"}, "expect": "isomorphism"},
    {"name": "S1 -> S2", "source": "S1", "target": "S2",
     "images": {"X": "X", "Y": "X*Y", "Z": "Z", "T": "T"},
     "preimages": {"X": "X", "Y": "X*T", "Z": "Z", "T": "T"}, "expect": "isomorphism"}
  ],
  "invariants": [
    {"S1": "S1", "S2": "S2", "expect": "out_of_scope", "note": "3 vs 3 (holds)"}
  ]
})json";

const char* kRemarkIII = R"json({
  "field": "Q",
  "rings": {
    "Sa": {"d": 2, "e": 4, "P": "Z", "Q": "Y^2"},
    "Sb": {"d": 2, "e": 2, "P": "Z^2", "Q": "Y"},
    "C":  {"vars": ["X", "Y", "T"], "relations": ["X^4*T - Y^2"]}
  },
  "maps": [
    {"name": "Sa -> C", "source": "Sa", "target": "C",
     "images": {"X": "X", "Y": "Y", "Z": "X^2*Y", "T": "T"},
     "preimages": {"X": "X", "Y": "Y", "T": "T"}, "expect": "isomorphism"},
    {"name": "Sb -> C", "source": "Sb", "target": "C",
     "images": {"X": "X", "Y": "X^2*T", "Z": "Y", "T": "T"},
     "preimages": {"X": "X", "Y": "Z", "T": "T"}, "expect": "isomorphism"},
    {"name": "Sa -> Sb", "source": "Sa", "target": "Sb",
     "images": {"X": "X", "Y": "Z", "Z": "X^2*Z", "T": "T"},
     "preimages": {"X": "X", "Y": "X^2*T", "Z": "Y", "T": "T"}, "expect": "isomorphism"}
  ],
  "invariants": [
    {"S1": "Sa", "S2": "Sb", "expect": "out_of_scope"}
  ]
})json";

const char* kRemarkV = R"json({
  "field": "Q",
  "rings": {
    "B1": {"d": 2, "e": 4, "P": "Z^2", "Q": "Y^2"},
    "B2": {"d": 2, "e": 4, "P": "Z^2", "Q": "Y^2 - X*Y*Z^2"}
  },
  "maps": [
    {"name": "phi: B1 -> B2", "source": "B1", "target": "B2",
     "images": {"X": "X", "Y": "Y", "Z": "Z", "T": "(1 + X^3)*T + Y*Z^2"},
     "preimages": {"X": "X", "Y": "Y", "Z": "Z", "T": "(1 - X^3)*T"}, "expect": "isomorphism"},
    {"name": "identity on letters B1 -> B2 (control)", "source": "B1", "target": "B2",
     "images": {"X": "X", "Y": "Y", "Z": "Z", "T": "T"}, "expect": "not_well_defined"}
  ],
  "identities": [
    {"ring": "B2", "lhs": "(1 - X^3)*((1 + X^3)*T + Y*Z^2)", "rhs": "T"}
  ],
  "decide": [
    {"S1": "B1", "S2": "B2", "expect": "ISOMORPHIC", "unit": "1 - X^3"}
  ],
  "invariants": [
    {"S1": "B1", "S2": "B2", "expect": "consistent"}
  ]
})json";

std::string outcome_name(InvariantOutcome o) {
  switch (o) {
    case InvariantOutcome::consistent: return "consistent";
    case InvariantOutcome::not_isomorphic: return "not_isomorphic";
    case InvariantOutcome::out_of_scope: return "out_of_scope";
  }
  return "?";
}

std::string map_verdict(const RingMapCheck<Rationals>& c) {
  if (!c.well_defined) return "not_well_defined";
  if (!c.surjective) return "well_defined";
  return *c.surjective ? "isomorphism" : "not_surjective";
}

void add(Report& r, std::string name, json expected, json computed) {
  bool ok = expected == computed;
  r.checks.push_back({std::move(name), std::move(expected), std::move(computed), ok});
}

void finish(Report& r) {
  bool ok = !r.checks.empty();
  for (const auto& c : r.checks) ok = ok && c.ok;
  r.outcome = ok ? Outcome::pass : Outcome::fail;
}

// Runs the "maps", "identities", "invariants" and "decide" sections.
void run_case(const char* text, Report& rep) {
  const json c = json::parse(text);
  const Rationals k;
  std::map<std::string, RingPresentation<Rationals>> rings;
  for (const auto& [name, ring] : c.at("rings").items()) rings.emplace(name, io::ring_from_json(ring, k));
  auto surface = [&](const std::string& name) {
    const auto& R = rings.at(name);
    if (!R.surface) throw std::logic_error("example ring " + name + " is not a surface");
    return *R.surface;
  };

  for (const auto& m : c.value("maps", json::array())) {
    json spec = {{"source", c.at("rings").at(m.at("source").get<std::string>())},
                 {"target", c.at("rings").at(m.at("target").get<std::string>())},
                 {"images", m.at("images")}};
    if (m.contains("preimages")) spec["preimages"] = m.at("preimages");
    auto map = io::map_from_json(spec, k);
    std::vector<EqualityBackend> backends{EqualityBackend::groebner};
    if (map.target.surface) backends.insert(backends.begin(), EqualityBackend::laurent);
    for (auto b : backends) {
      auto check = verify_ring_map(map, b);
      std::string label = m.at("name").get<std::string>() + (b == EqualityBackend::laurent ? " [laurent]" : " [groebner]");
      add(rep, label, m.at("expect"), map_verdict(check));
    }
  }
  for (const auto& id : c.value("identities", json::array())) {
    auto S = surface(id.at("ring"));
    auto lhs = io::poly_from_json(id.at("lhs"), k), rhs = io::poly_from_json(id.at("rhs"), k);
    add(rep, id.at("lhs").get<std::string>() + " = " + id.at("rhs").get<std::string>() + " in " + id.at("ring").get<std::string>(),
        true, equal_in_B(S, lhs, rhs));
  }
  for (const auto& inv : c.value("invariants", json::array())) {
    auto r = invariant_check(surface(inv.at("S1")), surface(inv.at("S2")));
    std::string label = "invariants " + inv.at("S1").get<std::string>() + " vs " + inv.at("S2").get<std::string>();
    add(rep, label, inv.at("expect"), outcome_name(r.outcome));
    if (inv.contains("note")) {
      bool found = false;
      for (const auto& n : r.notes) found = found || n.find(inv.at("note").get<std::string>()) != std::string::npos;
      add(rep, label + " note", inv.at("note"), found ? inv.at("note") : json(r.notes));
    }
  }
  for (const auto& d : c.value("decide", json::array())) {
    auto S1 = surface(d.at("S1")), S2 = surface(d.at("S2"));
    auto v = decide_isomorphic(S1, S2);
    std::string label = "decide " + d.at("S1").get<std::string>() + " vs " + d.at("S2").get<std::string>();
    add(rep, label, d.at("expect"), to_string(v.status));
    if (d.contains("unit") && v.witness && v.witness->h_cert)
      add(rep, label + " unit h1", to_string(io::poly_from_json(d.at("unit"), k)), to_string(v.witness->h_cert->cofactors[0]));
    if (v.map) {
      auto check = verify_ring_map(*v.map, EqualityBackend::groebner);
      add(rep, label + " map [groebner]", "isomorphism", map_verdict(check));
    }
  }
}

Report lemma_sweeps() {
  Report rep{"lemma-sweeps", Outcome::fail, "", {}};
  const PrimeField f2(2);
  std::uint64_t lemma1_pairs = 0;
  for (const char* P : {"Z^2", "Z^2 + Z", "Z^3"})
    for (int d : {1, 2}) {
      auto r = lemma1_oracle(parse_poly(P, f2), d, Lemma1Bounds{});
      lemma1_pairs += r.pairs_examined;
      add(rep, std::string("lemma1 P = ") + P + ", d = " + std::to_string(d) + " violations", 0, r.violations);
    }
  struct Case {
    int d, e;
    const char* P;
    const char* Q;
  };
  std::uint64_t lemma2_instances = 0;
  for (Case c : {Case{1, 1, "Z^2", "Y^2"}, Case{2, 1, "Z^2 + Z", "Y^2 + X*Z"}, Case{1, 2, "Z^3 + X", "Y^2 + Z"}})
    for (auto part : {Lemma2Part::i, Lemma2Part::ii}) {
      auto S = make_surface(f2, c.d, c.e, parse_poly(c.P, f2), parse_poly(c.Q, f2));
      int n = (part == Lemma2Part::i ? c.d : c.e) + 1;
      auto r = lemma2_sweep(S, part, n, Lemma2SweepBounds{});
      lemma2_instances += r.instances;
      add(rep,
          std::string("lemma2 (") + (part == Lemma2Part::i ? "i" : "ii") + ") on (" + std::to_string(c.d) + ", " +
              std::to_string(c.e) + ", " + c.P + ", " + c.Q + "), n = " + std::to_string(n) + " counterexamples",
          0, r.counterexamples.size());
    }
  finish(rep);
  rep.summary = std::to_string(lemma1_pairs) + " lemma 1 slice pairs and " + std::to_string(lemma2_instances) +
                " lemma 2 instances over F2";
  return rep;
}

Report theorem_roundtrip(const Options& o) {
  Report rep{"theorem-roundtrip", Outcome::fail, "", {}};
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < o.roundtrip_instances; ++i) {
    PrimeField k(i % 2 ? 5 : 3);
    auto inst = random_isomorphic_pair(k, rng);
    auto v = decide_isomorphic(inst.S1, inst.S2);
    std::string label = "instance " + std::to_string(i) + " over F" + std::to_string(k.modulus());
    add(rep, label + " verdict", "ISOMORPHIC", to_string(v.status));
    bool reverified = v.map && verify_ring_map(*v.map, EqualityBackend::groebner).isomorphism;
    add(rep, label + " map re-verified", true, reverified);
  }
  finish(rep);
  rep.summary = "seed " + std::to_string(o.seed);
  return rep;
}

Report remark_iv() {
  Report rep{"remark-iv", Outcome::out_of_scope, "", {}};
  const Rationals k;
  auto S = make_surface(k, 2, 3, parse_poly("Z + X", k), parse_poly("Y + Z^2", k));
  auto a = validate(S);
  add(rep, "validate (r, s) = (1, 1)", json::array({1, 1}), json::array({S.r, S.s}));
  rep.summary =
      "r = s = 1: the ring is a polynomial ring in two variables; constructing the coordinates needs the linear "
      "plane theorem, which is not implemented";
  for (const auto& n : a.notes) rep.summary += "; " + n;
  return rep;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::out_of_scope: return "OUT_OF_SCOPE";
  }
  return "?";
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"remark-i", "remark-ii", "remark-iii", "remark-iv",
                                          "remark-v", "lemma-sweeps", "theorem-roundtrip"};
  return n;
}

Report run_example(const std::string& name, const Options& options) {
  auto scripted = [&](const char* text) {
    Report r{name, Outcome::fail, "", {}};
    run_case(text, r);
    finish(r);
    return r;
  };
  if (name == "remark-i") return scripted(kRemarkI);
  if (name == "remark-ii") return scripted(kRemarkII);
  if (name == "remark-iii") return scripted(kRemarkIII);
  if (name == "remark-iv") return remark_iv();
  if (name == "remark-v") return scripted(kRemarkV);
  if (name == "lemma-sweeps") return lemma_sweeps();
  if (name == "theorem-roundtrip") return theorem_roundtrip(options);
  throw InputError("unknown example '" + name + "'");
}

json to_json(const Report& r) {
  json j;
  j["name"] = r.name;
  j["outcome"] = to_string(r.outcome);
  j["summary"] = r.summary;
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"check", c.name}, {"ok", c.ok}};
    if (c.ok) {
      cj["value"] = c.computed;
    } else {
      cj["expected"] = c.expected;
      cj["computed"] = c.computed;
    }
    j["checks"].push_back(cj);
  }
  return j;
}

}  // namespace ddsurf::examples
