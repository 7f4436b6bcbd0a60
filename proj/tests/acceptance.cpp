// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ddsurf/classify.hpp"
#include "ddsurf/examples.hpp"
#include "ddsurf/parse.hpp"
#include "support/linear_oracle.hpp"
#include "support/random_poly.hpp"

using namespace ddsurf;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

template <Field F>
Polynomial<F> X(const F& k, int e = 1) {
  return Polynomial<F>::variable(k, var::X, e);
}

std::string failed_checks(const examples::Report& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.ok) s += " [" + c.name + ": expected " + c.expected.dump() + ", computed " + c.computed.dump() + "]";
  return s;
}

// 1. The explicit map between the two surfaces with its preimage identity.
Outcome remark_v() {
  auto r = examples::run_example("remark-v");
  const Rationals q;
  auto S2 = make_surface(q, 2, 4, parse_poly("Z^2", q), parse_poly("Y^2 - X*Y*Z^2", q));
  bool identity = equal_in_B(S2, parse_poly("(1 - X^3)*((1 + X^3)*T + Y*Z^2)", q), parse_poly("T", q));
  return {r.outcome == examples::Outcome::pass && identity,
          std::to_string(r.checks.size()) + " checks, preimage identity " + (identity ? "holds" : "fails") +
              failed_checks(r)};
}

// 2. Presented-ring chains and the d + e advisory.
Outcome remark_chains() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"remark-i", "remark-ii", "remark-iii"}) {
    auto r = examples::run_example(name);
    ok = ok && r.outcome == examples::Outcome::pass;
    detail += std::string(name) + " " + examples::to_string(r.outcome) + failed_checks(r) + "; ";
  }
  const Rationals q;
  auto S1 = make_surface(q, 1, 2, parse_poly("Z^2", q), parse_poly("Y", q));
  auto S2 = make_surface(q, 2, 1, parse_poly("Z^2", q), parse_poly("Y", q));
  auto inv = invariant_check(S1, S2);
  bool advisory = inv.outcome == InvariantOutcome::out_of_scope && inv.notes.size() == 1 &&
                  inv.notes[0].find("3 vs 3 (holds)") != std::string::npos;
  ok = ok && advisory;
  detail += std::string("d + e advisory ") + (advisory ? "3 = 3" : "missing");
  return {ok, detail};
}

// 3. Exhaustive lemma sweeps over F2.
Outcome lemma_sweeps() {
  const PrimeField f2(2);
  std::uint64_t violations = 0, pairs = 0;
  for (const char* P : {"Z^2", "Z^2 + Z", "Z^3"})
    for (int d : {1, 2}) {
      auto r = lemma1_oracle(parse_poly(P, f2), d, Lemma1Bounds{2, 2, 2});
      violations += r.violations;
      pairs += r.pairs_examined;
    }
  // Lemma 2: each instance builds its own basis through lemma2_oracle.
  int instances = 0, confirmed = 0;
  struct Case {
    int d, e;
    const char* P;
    const char* Q;
  };
  for (Case c : {Case{1, 1, "Z^2", "Y^2"}, Case{2, 1, "Z^2 + Z", "Y^2 + X*Z"}, Case{1, 2, "Z^3 + X", "Y^3 + Z"}}) {
    auto S = make_surface(f2, c.d, c.e, parse_poly(c.P, f2), parse_poly(c.Q, f2));
    for (auto part : {Lemma2Part::i, Lemma2Part::ii}) {
      int n = (part == Lemma2Part::i ? c.d : c.e) + 1;
      std::vector<int> vars = part == Lemma2Part::i ? std::vector<int>{var::X, var::Z}
                                                     : std::vector<int>{var::X, var::Y, var::Z};
      const int cap = part == Lemma2Part::i ? S.r - 1 : S.s - 1;
      for (const auto& m : testing::monomials_up_to(vars, 2)) {
        if (m[part == Lemma2Part::i ? var::Z : var::Y] > cap) continue;
        auto low = Polynomial<PrimeField>::term(f2, m, 1) + X(f2);
        ++instances;
        confirmed += lemma2_oracle(S, part, f2.one(), low, n);
      }
    }
  }
  return {violations == 0 && instances >= 20 && confirmed == instances,
          "lemma 1: " + std::to_string(pairs) + " slice pairs, " + std::to_string(violations) +
              " violations; lemma 2: " + std::to_string(confirmed) + "/" + std::to_string(instances) +
              " non-memberships confirmed"};
}

// 4. Groebner membership against bounded linear algebra.
Outcome gb_oracle() {
  std::mt19937_64 rng(4);
  int queries = 0, agree = 0, members = 0;
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField k(p);
    for (int trial = 0; trial < 120; ++trial) {
      const int nvars = 2 + trial % 2;
      std::vector<int> vars(nvars);
      for (int v = 0; v < nvars; ++v) vars[v] = v;
      IdealBasis<PrimeField> basis{k, {}};
      for (int g = 0; g < 2; ++g) basis.generators.push_back(testing::random_poly_total(k, rng, vars, 3, 3));
      Polynomial<PrimeField> target(k);
      if (trial % 3 == 0) {
        target = testing::random_poly_total(k, rng, vars, 4, 3);
      } else {
        for (const auto& g : basis.generators) target += testing::random_poly_total(k, rng, vars, 1, 2) * g;
      }
      auto cert = is_member(target, basis);
      int bound = 4;
      if (cert)
        for (const auto& c : cert->cofactors) bound = std::max(bound, c.total_degree());
      bool oracle = testing::bounded_cofactor_search(target, basis.generators, vars, bound).has_value();
      bool sound = !cert || certificate_reconstructs(*cert, basis.generators, target);
      ++queries;
      members += cert.has_value();
      agree += (cert.has_value() == oracle) && sound;
    }
  }
  return {queries >= 200 && agree == queries, std::to_string(agree) + "/" + std::to_string(queries) +
                                                  " queries agree (" + std::to_string(members) + " members)"};
}

// 5. Planted isomorphisms are found and the emitted maps re-verify.
Outcome round_trip() {
  std::mt19937_64 rng(5);
  int n = 0, ok = 0;
  for (int i = 0; i < 50; ++i) {
    PrimeField k(i % 2 ? 5 : 3);
    auto inst = random_isomorphic_pair(k, rng);
    auto v = decide_isomorphic(inst.S1, inst.S2);
    ++n;
    if (v.status != Status::isomorphic || !v.map) {
      std::fprintf(stderr, "round trip %d: %s (%s)\n", i, to_string(v.status).c_str(), v.reason.c_str());
      continue;
    }
    ok += verify_ring_map(*v.map, EqualityBackend::groebner).isomorphism;
  }
  return {ok == n && n >= 50, std::to_string(ok) + "/" + std::to_string(n) + " isomorphic and re-verified"};
}

// 6. Pairs differing in one of r, s, d, e.
Outcome necessity() {
  std::mt19937_64 rng(6);
  int n = 0, ok = 0;
  for (int i = 0; i < 24; ++i) {
    PrimeField k(i % 2 ? 5 : 3);
    auto S1 = random_isomorphic_pair(k, rng).S1;
    auto P = S1.P, Q = S1.Q;
    int d = S1.d, e = S1.e;
    // Swap the leading power 2 <-> 3, keeping only tail terms below both.
    auto reshape = [&](const Polynomial<PrimeField>& f, int v, int deg) {
      int other = deg == 2 ? 3 : 2;
      auto out = Polynomial<PrimeField>::variable(k, v, other);
      for (const auto& t : f.terms())
        if (t.monomial[v] < 2) out += Polynomial<PrimeField>::term(k, t.monomial, t.coeff);
      return out;
    };
    switch (i % 4) {
      case 0: P = reshape(P, var::Z, S1.r); break;
      case 1: Q = reshape(Q, var::Y, S1.s); break;
      case 2: d = d == 3 ? 2 : d + 1; break;
      case 3: e = e == 3 ? 2 : e + 1; break;
    }
    auto S2 = make_surface(k, d, e, P, Q);
    int differing = (S1.r != S2.r) + (S1.s != S2.s) + (S1.d != S2.d) + (S1.e != S2.e);
    auto v = decide_isomorphic(S1, S2);
    auto inv = invariant_check(S1, S2);
    ++n;
    ok += differing == 1 && v.status == Status::not_isomorphic && inv.outcome == InvariantOutcome::not_isomorphic;
  }
  return {ok == n && n >= 20, std::to_string(ok) + "/" + std::to_string(n) + " rejected by invariants"};
}

// 7. (P) and both memberships only see delta modulo X^(d+e).
Outcome delta_invariance() {
  std::mt19937_64 rng(7);
  int n = 0, ok = 0, with_memberships = 0;
  for (int i = 0; i < 60; ++i) {
    PrimeField k(i % 2 ? 5 : 3);
    auto inst = random_isomorphic_pair(k, rng);
    const auto &S1 = inst.S1, &S2 = inst.S2;
    // Alternate between delta solving (P) and an arbitrary delta.
    auto sols = solve_P_condition(S1, S2, S1.d + S1.e - 1);
    PSolution<PrimeField> base{1, 1, Polynomial<PrimeField>(k), Polynomial<PrimeField>(k)};
    if (i % 3 != 2 && !sols.empty()) {
      base = sols[std::uniform_int_distribution<std::size_t>(0, sols.size() - 1)(rng)];
    } else {
      base.lambda = 1 + rng() % (k.modulus() - 1);
      base.gamma = 1 + rng() % (k.modulus() - 1);
      base.delta = testing::random_poly(k, rng, {var::X}, S1.d + S1.e - 1, 3);
    }
    auto theta = testing::random_poly(k, rng, {var::X}, 3, 3);
    auto shifted = base.delta + theta * X(k, S1.d + S1.e);

    auto facts = [&](const Polynomial<PrimeField>& delta) {
      std::vector<bool> out;
      auto f = check_P_condition(S1, S2, base.lambda, base.gamma, delta);
      out.push_back(f.has_value());
      if (!f) return out;
      auto ld = k.pow(base.lambda, -S1.d);
      IsoWitness<PrimeField> w{base.lambda, base.gamma, delta, *f, k.mul(ld, k.pow(base.gamma, S1.r)),
                               f->scaled(ld), std::nullopt, std::nullopt};
      auto c = witness_coordinates(S1, w);
      auto q2 = substitute(S2.Q, {{var::X, c[0]}, {var::Y, c[1]}, {var::Z, c[2]}});
      auto G = S1.P - X(k, S1.d) * Polynomial<PrimeField>::variable(k, var::Y);
      out.push_back(is_member(q2, IdealBasis<PrimeField>{k, {S1.Q, G, X(k, S1.e)}}).has_value());
      out.push_back(is_member(S1.Q, IdealBasis<PrimeField>{k, {q2, G, X(k, S1.e)}}).has_value());
      return out;
    };
    auto before = facts(base.delta), after = facts(shifted);
    ++n;
    ok += before == after;
    with_memberships += before.size() == 3;
  }
  return {ok == n && n >= 50 && with_memberships > 0,
          std::to_string(ok) + "/" + std::to_string(n) + " unchanged (" + std::to_string(with_memberships) +
              " with memberships evaluated)"};
}

// 8. Scaling automorphisms, composition, and a shape violation.
Outcome automorphisms() {
  const Rationals q;
  auto S = make_surface(q, 2, 4, parse_poly("Z^2", q), parse_poly("Y^2", q));
  const std::vector<std::pair<mpq_class, mpq_class>> params{{1, 1}, {2, 3}, {-1, 1}, {mpq_class(1, 2), 2}, {3, -1}};
  std::vector<std::pair<RingMap<Rationals>, mpq_class>> maps;
  int passed = 0;
  for (const auto& [l, g] : params) {
    auto w = check_Q_condition(S, S, PSolution<Rationals>{l, g, Polynomial<Rationals>(q), Polynomial<Rationals>(q)});
    if (!w) continue;
    auto m = build_isomorphism(S, S, *w);
    // Direct formula: Y -> nu Y with nu = lambda^-2 gamma^2, T -> lambda^-4 nu^2 T.
    mpq_class nu = g * g / (l * l);
    bool formula = m.images.at(var::Y) == Polynomial<Rationals>::variable(q, var::Y).scaled(nu) &&
                   m.images.at(var::T) == Polynomial<Rationals>::variable(q, var::T).scaled(nu * nu / (l * l * l * l));
    auto rep = verify_automorphism(S, m);
    passed += rep.all_passed() && formula && *rep.lambda == l;
    maps.push_back({m, l});
  }
  int composed = 0, composed_ok = 0;
  for (const auto& [a, la] : maps)
    for (const auto& [b, lb] : maps) {
      auto rep = verify_automorphism(S, compose(a, b));
      ++composed;
      composed_ok += rep.all_passed() && rep.lambda && *rep.lambda == la * lb;
    }
  RingMap<Rationals> shift{surface_ring(S), surface_ring(S),
                           {{var::X, parse_poly("X + 1", q)}, {var::Y, parse_poly("Y", q)},
                            {var::Z, parse_poly("Z", q)}, {var::T, parse_poly("T", q)}},
                           std::nullopt};
  bool shape_fails = verify_automorphism(S, shift).checks[1].status == CheckStatus::failed;
  return {passed == static_cast<int>(params.size()) && composed >= 10 && composed_ok == composed && shape_fails,
          std::to_string(passed) + "/" + std::to_string(params.size()) + " scalings pass, " +
              std::to_string(composed_ok) + "/" + std::to_string(composed) + " composites, X -> X + 1 " +
              (shape_fails ? "fails (ii)" : "not rejected")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "explicit isomorphism with preimage certificate", 5, remark_v},
      {2, "presented-ring isomorphism chains", 10, remark_chains},
      {3, "lemma sweeps over F2", 60, lemma_sweeps},
      {4, "Groebner membership vs linear-algebra oracle", 120, gb_oracle},
      {5, "theorem round trip over F3/F5", 300, round_trip},
      {6, "necessity negatives", 30, necessity},
      {7, "delta-bound invariance", 120, delta_invariance},
      {8, "automorphism suite", 30, automorphisms},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.ok && s < c.limit_s;
    failures += !ok;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s\n", c.id, c.name, ok ? "PASS" : "FAIL", s, c.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
