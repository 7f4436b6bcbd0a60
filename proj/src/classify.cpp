#include "ddsurf/classify.hpp"

#include <algorithm>
#include <functional>

#include "ddsurf/parse.hpp"

namespace ddsurf {

std::string to_string(Status s) {
  switch (s) {
    case Status::isomorphic: return "ISOMORPHIC";
    case Status::not_isomorphic: return "NOT_ISOMORPHIC";
    case Status::no_witness_within_bounds: return "NO_WITNESS_WITHIN_BOUNDS";
    case Status::out_of_theorem_scope: return "OUT_OF_THEOREM_SCOPE";
  }
  return "?";
}

namespace {

template <Field F>
Polynomial<F> mono_var(const F& k, int v, int e = 1) {
  return Polynomial<F>::variable(k, v, e);
}

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

/// Terms of p with X-exponent below n.
template <Field F>
Polynomial<F> truncate_x(const Polynomial<F>& p, int n) {
  std::vector<typename Polynomial<F>::Term> out;
  for (const auto& t : p.terms())
    if (t.monomial[var::X] < n) out.push_back(t);
  return Polynomial<F>::from_terms(p.field(), std::move(out));
}

template <Field F>
std::vector<typename F::Scalar> field_elements(const F& k, bool nonzero) {
  std::vector<typename F::Scalar> out;
  if constexpr (std::is_same_v<F, PrimeField>) {
    for (std::uint32_t i = nonzero ? 1 : 0; i < k.modulus(); ++i) out.push_back(i);
  } else {
    (void)k, (void)nonzero;
  }
  return out;
}

template <Field F>
void require_same_shape(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2, bool need_e) {
  if (!(S1.field == S2.field)) throw FieldMismatch("surfaces over different fields");
  if (S1.r != S2.r || S1.d != S2.d) throw InputError("condition (P) needs r1 = r2 and d1 = d2");
  if (need_e && (S1.e != S2.e || S1.s != S2.s)) throw InputError("condition (Q) needs e1 = e2 and s1 = s2");
}

}  // namespace

// --- Invariants -------------------------------------------------------------

template <Field F>
InvariantReport invariant_check(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2) {
  if (!(S1.field == S2.field)) throw FieldMismatch("surfaces over different fields");
  InvariantReport rep;
  if (S1.r == 1 || S2.r == 1) {
    rep.outcome = InvariantOutcome::out_of_scope;
    rep.reason = "r = 1: the surface is a Danielewski surface after eliminating z, and d is not an invariant";
    return rep;
  }
  if (S1.r != S2.r || S1.s != S2.s) {
    rep.outcome = InvariantOutcome::not_isomorphic;
    rep.reason = "(r, s) differ: " + pair_text(S1.r, S1.s) + " vs " + pair_text(S2.r, S2.s);
    return rep;
  }
  if (S1.s == 1) {
    rep.outcome = InvariantOutcome::out_of_scope;
    rep.reason = "s = 1: only d + e is an invariant, so no verdict is given";
    const int a = S1.d + S1.e, b = S2.d + S2.e;
    rep.notes.push_back("necessary condition d1 + e1 = d2 + e2: " + std::to_string(a) + " vs " + std::to_string(b) +
                        (a == b ? " (holds)" : " (fails)"));
    return rep;
  }
  if (S1.d != S2.d || S1.e != S2.e) {
    rep.outcome = InvariantOutcome::not_isomorphic;
    rep.reason = "(d, e) differ with s > 1: " + pair_text(S1.d, S1.e) + " vs " + pair_text(S2.d, S2.e);
    return rep;
  }
  return rep;
}

// --- Condition (P) ----------------------------------------------------------

template <Field F>
std::optional<Polynomial<F>> check_P_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                               const typename F::Scalar& lambda, const typename F::Scalar& gamma,
                                               const Polynomial<F>& delta) {
  require_same_shape(S1, S2, false);
  const F& k = S1.field;
  if (k.is_zero(lambda) || k.is_zero(gamma)) throw InputError("lambda and gamma must be nonzero");
  if (!uses_only(delta, {var::X})) throw InputError("delta must be a polynomial in X");
  auto lhs = substitute(S2.P, {{var::X, mono_var(k, var::X).scaled(lambda)},
                               {var::Z, mono_var(k, var::Z).scaled(gamma) + delta}});
  auto diff = lhs - S1.P.scaled(k.pow(gamma, S1.r));
  auto v = x_adic_valuation(diff);
  if (v && *v < S1.d) return std::nullopt;
  return divide_by_var_power(diff, var::X, S1.d);
}

namespace {

/// Enumerates (lambda, gamma, delta) satisfying (P) in lexicographic order;
/// visit returns true to stop.  Returns false if stopped early.
template <Field F>
bool for_each_P_solution(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2, int bound,
                         const std::vector<typename F::Scalar>& units, const std::vector<typename F::Scalar>& coeffs,
                         const std::function<bool(const PSolution<F>&)>& visit) {
  using Scalar = typename F::Scalar;
  const F& k = S1.field;
  const int d = S1.d, r = S1.r;
  const int low_top = std::min(d - 1, bound);  // highest degree in the low part
  bool solvable = true;
  if constexpr (std::is_same_v<F, PrimeField>) solvable = r % static_cast<int>(k.modulus()) != 0;

  // lexicographic odometer over coefficient tuples, constant term first
  auto odometer = [&](int lo, int hi, const std::function<bool(const Polynomial<F>&)>& body) {
    const int n = hi - lo + 1;
    if (n <= 0) return body(Polynomial<F>(k));
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<typename Polynomial<F>::Term> t;
      for (int i = 0; i < n; ++i) t.push_back({Monomial::power(var::X, lo + i), coeffs[idx[i]]});
      if (body(Polynomial<F>::from_terms(k, std::move(t)))) return true;
      int i = n - 1;
      for (; i >= 0; --i) {
        if (++idx[i] < coeffs.size()) break;
        idx[i] = 0;
      }
      if (i < 0) return false;
    }
  };

  const auto b = coefficient_in(S1.P, var::Z, r - 1);
  const auto a = coefficient_in(S2.P, var::Z, r - 1);
  for (const Scalar& lambda : units)
    for (const Scalar& gamma : units) {
      auto high_part = [&](const Polynomial<F>& low) {
        if (!check_P_condition(S1, S2, lambda, gamma, low)) return false;
        return odometer(d, bound, [&](const Polynomial<F>& high) {
          Polynomial<F> delta = low + high;
          auto f = check_P_condition(S1, S2, lambda, gamma, delta);
          return visit(PSolution<F>{lambda, gamma, delta, *f});
        });
      };
      bool stop;
      if (solvable) {
        // The Z^(r-1) coefficient of (P) forces r delta = gamma b(X) - a(lambda X) mod X^d.
        auto a_scaled = substitute(a, {{var::X, mono_var(k, var::X).scaled(lambda)}});
        auto low = truncate_x((b.scaled(gamma) - a_scaled).scaled(k.inv(k.from_int(r))), d);
        auto deg = degree_in(low, var::X);
        if (deg && *deg > low_top) continue;
        stop = high_part(low);
      } else {
        stop = odometer(0, low_top, high_part);
      }
      if (stop) return false;
    }
  return true;
}

template <Field F>
std::vector<typename F::Scalar> coefficient_values(const F& k, const std::vector<typename F::Scalar>& candidates) {
  std::vector<typename F::Scalar> out{k.zero()};
  for (const auto& c : candidates)
    if (std::none_of(out.begin(), out.end(), [&](const auto& o) { return k.equal(o, c); })) out.push_back(c);
  return out;
}

}  // namespace

template <Field F>
std::vector<PSolution<F>> solve_P_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                            int delta_degree_bound,
                                            const std::optional<std::vector<typename F::Scalar>>& candidates) {
  require_same_shape(S1, S2, false);
  const F& k = S1.field;
  if (delta_degree_bound < 0) throw InputError("delta degree bound must be non-negative");
  std::vector<typename F::Scalar> units, coeffs;
  if (candidates) {
    for (const auto& c : *candidates)
      if (k.is_zero(c)) throw InputError("lambda/gamma candidates must be nonzero");
    units = *candidates;
    coeffs = k.is_finite() ? field_elements(k, false) : coefficient_values(k, units);
  } else {
    if (!k.is_finite()) throw InputError("search over the rationals needs a candidate set");
    units = field_elements(k, true);
    coeffs = field_elements(k, false);
  }
  std::vector<PSolution<F>> out;
  for_each_P_solution<F>(S1, S2, delta_degree_bound, units, coeffs, [&](const PSolution<F>& s) {
    out.push_back(s);
    return false;
  });
  return out;
}

// --- Condition (Q) ----------------------------------------------------------

template <Field F>
std::array<Polynomial<F>, 3> witness_coordinates(const SurfacePresentation<F>& S, const IsoWitness<F>& w) {
  const F& k = S.field;
  return {mono_var(k, var::X).scaled(w.lambda), mono_var(k, var::Y).scaled(w.nu) + w.g,
          mono_var(k, var::Z).scaled(w.gamma) + w.delta};
}

namespace {

template <Field F>
IsoWitness<F> complete_scalars(const SurfacePresentation<F>& S1, const PSolution<F>& p) {
  const F& k = S1.field;
  auto lambda_d = k.pow(p.lambda, -S1.d);
  return IsoWitness<F>{p.lambda, p.gamma, p.delta, p.f, k.mul(lambda_d, k.pow(p.gamma, S1.r)),
                       p.f.scaled(lambda_d), std::nullopt, std::nullopt};
}

template <Field F>
Polynomial<F> transformed_Q2(const SurfacePresentation<F>& S2, const std::array<Polynomial<F>, 3>& c) {
  return substitute(S2.Q, {{var::X, c[0]}, {var::Y, c[1]}, {var::Z, c[2]}});
}

template <Field F>
Polynomial<F> G_of(const SurfacePresentation<F>& S) {
  return S.P - mono_var(S.field, var::X, S.d) * mono_var(S.field, var::Y);
}

}  // namespace

template <Field F>
std::optional<IsoWitness<F>> check_Q_condition(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                               const PSolution<F>& partial, const GroebnerLimits& limits) {
  require_same_shape(S1, S2, true);
  if (S1.s <= 1) throw InputError("condition (Q) needs s > 1");
  const F& k = S1.field;
  if (auto f = check_P_condition(S1, S2, partial.lambda, partial.gamma, partial.delta); !f || !(*f == partial.f))
    throw InputError("partial witness does not satisfy condition (P) with the given f");
  IsoWitness<F> w = complete_scalars(S1, partial);
  auto coords = witness_coordinates(S1, w);
  auto q2 = transformed_Q2(S2, coords);
  auto G = G_of(S1);
  auto Xe = mono_var(k, var::X, S1.e);

  IdealBasis<F> j1{k, {S1.Q, G, Xe}, MonomialOrder::grevlex()};
  auto fwd = is_member(q2, j1, limits);
  if (!fwd) return std::nullopt;
  IdealBasis<F> j2{k, {q2, G, Xe}, MonomialOrder::grevlex()};
  auto rev = is_member(S1.Q, j2, limits);
  if (!rev) return std::nullopt;
  // The ideal equality itself, with gamma^r G as the middle generator.
  IdealBasis<F> j2_scaled{k, {q2, G.scaled(k.pow(partial.gamma, S1.r)), Xe}, MonomialOrder::grevlex()};
  if (!ideals_equal(j2_scaled, j1, limits))
    throw std::logic_error("internal error: two-way membership without ideal equality");
  w.h_cert = std::move(fwd);
  w.h_cert_rev = std::move(rev);
  return w;
}

// --- Construction -------------------------------------------------------------

template <Field F>
RingMap<F> build_isomorphism(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                             const IsoWitness<F>& w) {
  if (!w.h_cert || !w.h_cert_rev || w.h_cert->cofactors.size() != 3 || w.h_cert_rev->cofactors.size() != 3)
    throw InputError("build_isomorphism: witness lacks certificates");
  const F& k = S1.field;
  const int e = S1.e;
  const auto& h = w.h_cert->cofactors;
  const auto& fr = w.h_cert_rev->cofactors;
  auto coords = witness_coordinates(S1, w);

  RingMap<F> m{surface_ring(S2), surface_ring(S1), {}, std::nullopt};
  m.images.emplace(var::X, coords[0]);
  m.images.emplace(var::Y, coords[1]);
  m.images.emplace(var::Z, coords[2]);
  m.images.emplace(var::T, (h[0] * mono_var(k, var::T) + h[2]).scaled(k.pow(w.lambda, -e)));

  auto x1 = mono_var(k, var::X).scaled(k.inv(w.lambda));
  auto z1 = (mono_var(k, var::Z) - substitute(w.delta, {{var::X, x1}})).scaled(k.inv(w.gamma));
  auto y1 = (mono_var(k, var::Y) - substitute(w.g, {{var::X, x1}, {var::Z, z1}})).scaled(k.inv(w.nu));
  Substitution<F> back{{var::X, x1}, {var::Y, y1}, {var::Z, z1}};
  auto F1 = substitute(fr[0], back), F3 = substitute(fr[2], back);
  std::map<int, Polynomial<F>> pre;
  pre.emplace(var::X, x1);
  pre.emplace(var::Y, y1);
  pre.emplace(var::Z, z1);
  pre.emplace(var::T, (F1 * mono_var(k, var::T)).scaled(k.pow(w.lambda, e)) + F3);
  m.preimages = std::move(pre);
  return m;
}

// --- Decision -----------------------------------------------------------------

namespace {

template <Field F>
std::string witness_text(const F& k, const IsoWitness<F>& w) {
  return "lambda=" + k.to_string(w.lambda) + " gamma=" + k.to_string(w.gamma) + " delta=" + to_string(w.delta) +
         " f=" + to_string(w.f);
}

template <Field F>
bool finish_with_map(ClassificationVerdict<F>& v, const SurfacePresentation<F>& S1,
                     const SurfacePresentation<F>& S2, IsoWitness<F> w, const GroebnerLimits& limits) {
  const F& k = S1.field;
  auto m = build_isomorphism(S1, S2, w);
  auto check = verify_ring_map(m, EqualityBackend::laurent, limits);
  v.log.push_back({"ring map", check.isomorphism, check.summary()});
  if (!check.isomorphism) return false;
  v.log.push_back({"witness", true, witness_text(k, w)});
  v.status = Status::isomorphic;
  v.reason = "conditions (I) and (II) hold; explicit map verified";
  v.witness = std::move(w);
  v.map = std::move(m);
  return true;
}

template <Field F>
bool scope_and_invariants(ClassificationVerdict<F>& v, const SurfacePresentation<F>& S1,
                          const SurfacePresentation<F>& S2) {
  auto inv = invariant_check(S1, S2);
  v.log.push_back({"invariants", inv.outcome == InvariantOutcome::consistent,
                   "(r, s, d, e) = (" + std::to_string(S1.r) + ", " + std::to_string(S1.s) + ", " +
                       std::to_string(S1.d) + ", " + std::to_string(S1.e) + ") vs (" + std::to_string(S2.r) + ", " +
                       std::to_string(S2.s) + ", " + std::to_string(S2.d) + ", " + std::to_string(S2.e) + ")"});
  for (const auto& n : inv.notes) v.log.push_back({"note", true, n});
  if (inv.outcome == InvariantOutcome::out_of_scope) {
    v.status = Status::out_of_theorem_scope;
    v.reason = inv.reason;
    return false;
  }
  if (inv.outcome == InvariantOutcome::not_isomorphic) {
    v.status = Status::not_isomorphic;
    v.reason = inv.reason;
    return false;
  }
  return true;
}

}  // namespace

template <Field F>
ClassificationVerdict<F> decide_isomorphic(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                           const SearchParams<F>& params) {
  ClassificationVerdict<F> v;
  validate(S1);
  validate(S2);
  if (!scope_and_invariants(v, S1, S2)) return v;
  const F& k = S1.field;
  const int d = S1.d, e = S1.e;
  const int complete_bound = d + e - 1;
  const int bound = params.delta_degree_bound.value_or(complete_bound);
  if (bound < 0) throw InputError("delta degree bound must be non-negative");

  std::vector<typename F::Scalar> units, coeffs;
  if (params.candidates) {
    for (const auto& c : *params.candidates)
      if (k.is_zero(c)) throw InputError("lambda/gamma candidates must be nonzero");
    units = *params.candidates;
  }
  if (k.is_finite()) {
    if (!params.candidates) units = field_elements(k, true);
    coeffs = field_elements(k, false);
  } else {
    if (!params.candidates) units = {k.one(), k.neg(k.one())};
    coeffs = coefficient_values(k, units);
  }
  const bool complete = k.is_finite() && !params.candidates && bound >= complete_bound;

  std::optional<GroebnerBasis<F>> j1;
  try {
    j1 = buchberger(IdealBasis<F>{k, {S1.Q, G_of(S1), mono_var(k, var::X, e)}, MonomialOrder::grevlex()},
                    params.limits);
  } catch (const ResourceExhausted& ex) {
    v.status = Status::no_witness_within_bounds;
    v.reason = std::string("resource limit: ") + ex.what();
    return v;
  }

  bool exhausted_resources = false;
  std::string resource_note;
  bool found = false;
  try {
    for_each_P_solution<F>(S1, S2, bound, units, coeffs, [&](const PSolution<F>& p) {
      if (++v.candidates_examined > params.max_candidates) {
        exhausted_resources = true;
        resource_note = "candidate budget exhausted";
        return true;
      }
      IsoWitness<F> w = complete_scalars(S1, p);
      auto q2 = transformed_Q2(S2, witness_coordinates(S1, w));
      if (!normal_form(q2, *j1).is_zero()) return false;
      auto full = check_Q_condition(S1, S2, p, params.limits);
      if (!full) return false;
      if (!finish_with_map(v, S1, S2, std::move(*full), params.limits))
        throw std::logic_error("internal error: constructed map failed verification");
      found = true;
      return true;
    });
  } catch (const ResourceExhausted& ex) {
    exhausted_resources = true;
    resource_note = ex.what();
  }
  v.log.push_back({"search", found,
                   std::to_string(v.candidates_examined) + " (lambda, gamma, delta) candidates satisfying (P), deg delta <= " +
                       std::to_string(bound)});
  if (found) return v;
  if (exhausted_resources) {
    v.status = Status::no_witness_within_bounds;
    v.reason = "resource limit: " + resource_note;
  } else if (complete) {
    v.status = Status::not_isomorphic;
    v.reason = "no lambda, gamma in k* and delta with deg delta < d + e satisfy (P) and (Q); the search is complete";
  } else {
    v.status = Status::no_witness_within_bounds;
    v.reason = k.is_finite() ? "search restricted by candidates or a lowered delta bound"
                             : "semi-decisive search over the rationals: no witness among the candidates";
  }
  return v;
}

template <Field F>
ClassificationVerdict<F> verify_witness(const SurfacePresentation<F>& S1, const SurfacePresentation<F>& S2,
                                        const typename F::Scalar& lambda, const typename F::Scalar& gamma,
                                        const Polynomial<F>& delta, const GroebnerLimits& limits) {
  ClassificationVerdict<F> v;
  validate(S1);
  validate(S2);
  if (!scope_and_invariants(v, S1, S2)) return v;
  auto f = check_P_condition(S1, S2, lambda, gamma, delta);
  v.log.push_back({"condition P", f.has_value(), f ? "f = " + to_string(*f) : "X^d does not divide the difference"});
  v.candidates_examined = 1;
  if (!f) {
    v.reason = "supplied witness fails condition (P)";
    return v;
  }
  std::optional<IsoWitness<F>> w;
  try {
    w = check_Q_condition(S1, S2, PSolution<F>{lambda, gamma, delta, *f}, limits);
  } catch (const ResourceExhausted& ex) {
    v.reason = std::string("resource limit: ") + ex.what();
    return v;
  }
  v.log.push_back({"condition Q", w.has_value(), w ? "two-way membership certified" : "ideals differ"});
  if (!w) {
    v.reason = "supplied witness fails condition (Q)";
    return v;
  }
  if (!finish_with_map(v, S1, S2, std::move(*w), limits))
    throw std::logic_error("internal error: constructed map failed verification");
  return v;
}

// --- Automorphisms ------------------------------------------------------------

template <Field F>
bool AutomorphismReport<F>::all_passed() const {
  return well_defined && std::all_of(checks.begin(), checks.end(),
                                     [](const StructureCheck& c) { return c.status == CheckStatus::passed; });
}

namespace {

template <Field F>
std::string laurent_text(const LaurentPoly<F>& l) {
  if (l.is_zero()) return "0";
  std::string s;
  for (const auto& t : l.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + l.field().to_string(t.coeff) + ")*x^" + std::to_string(t.x) + "*z^" + std::to_string(t.z);
  }
  return s;
}

}  // namespace

template <Field F>
AutomorphismReport<F> verify_automorphism(const SurfacePresentation<F>& S, const RingMap<F>& m,
                                          const GroebnerLimits& limits) {
  if (S.r < 2 || S.s < 2) throw PreconditionError("automorphism checks need r >= 2 and s >= 2");
  const F& k = S.field;
  AutomorphismReport<F> rep;
  auto ring = surface_ring(S);
  RingMap<F> mm{ring, ring, m.images, m.preimages};
  auto check = verify_ring_map(mm, EqualityBackend::laurent, limits);
  rep.well_defined = check.well_defined;
  rep.surjective = check.surjective;
  auto& [c1, c2, c3, c4, c5, c6] = rep.checks;

  auto image = [&](int v) {
    auto it = m.images.find(v);
    return it == m.images.end() ? mono_var(k, v) : it->second;
  };
  auto lx = laurent_nf(S, image(var::X));
  auto ly = laurent_nf(S, image(var::Y));
  auto lz = laurent_nf(S, image(var::Z));

  // (ii) psi(x) = lambda x
  if (lx.terms().size() == 1 && lx.terms()[0].x == 1 && lx.terms()[0].z == 0) {
    rep.lambda = lx.terms()[0].coeff;
    c2 = {CheckStatus::passed, "psi(x) = " + k.to_string(*rep.lambda) + " x"};
  } else {
    c2 = {CheckStatus::failed, "psi(x) = " + laurent_text(lx) + " is not of the form lambda x"};
  }

  // (i) psi(z) = gamma z + delta(x)
  std::vector<typename Polynomial<F>::Term> dterms;
  bool z_shape = true;
  for (const auto& t : lz.terms()) {
    if (t.z == 1 && t.x == 0) rep.gamma = t.coeff;
    else if (t.z == 0 && t.x >= 0) dterms.push_back({Monomial::power(var::X, t.x), t.coeff});
    else z_shape = false;
  }
  z_shape = z_shape && rep.gamma.has_value();
  if (z_shape) rep.delta = Polynomial<F>::from_terms(k, std::move(dterms));
  else rep.gamma.reset();
  if (z_shape && rep.lambda) {
    std::string ev = "psi(z) = " + k.to_string(*rep.gamma) + " z + (" + to_string(*rep.delta) + ")";
    bool reverse_ok = true;
    if (m.preimages) {
      // k[x, z] is also reached: preimages of X and Z lie in k[x, z].
      for (int v : {var::X, var::Z}) {
        auto it = m.preimages->find(v);
        if (it == m.preimages->end() || !laurent_to_poly(laurent_nf(S, it->second))) reverse_ok = false;
      }
      ev += reverse_ok ? "; preimages of x, z lie in k[x, z]" : "; a preimage of x or z leaves k[x, z]";
    }
    c1 = {reverse_ok ? CheckStatus::passed : CheckStatus::failed, ev};
  } else {
    c1 = {CheckStatus::failed, "psi(z) = " + laurent_text(lz) + " is not of the form gamma z + delta(x)"};
  }

  // (iv) psi(y) = nu y + g(x, z)
  if (rep.lambda && rep.gamma) {
    rep.nu = k.mul(k.pow(*rep.lambda, -S.d), k.pow(*rep.gamma, S.r));
    auto rest = ly - laurent_nf(S, mono_var(k, var::Y)).scaled(*rep.nu);
    if (auto g = laurent_to_poly(rest)) {
      rep.g = *g;
      c4 = {CheckStatus::passed, "psi(y) = " + k.to_string(*rep.nu) + " y + (" + to_string(*g) + ")"};
    } else {
      c4 = {CheckStatus::failed, "psi(y) - nu y = " + laurent_text(rest) + " is not in k[x, z]"};
    }
  } else {
    c4 = {CheckStatus::failed, "psi(y) shape needs the forms of psi(x) and psi(z)"};
  }

  if (!rep.well_defined || c4.status != CheckStatus::passed || c1.status == CheckStatus::failed) {
    std::string why = rep.well_defined ? "shape checks failed" : "map is not well-defined";
    for (auto* c : {&c3, &c5, &c6}) *c = {CheckStatus::not_evaluated, why};
    return rep;
  }

  const auto X = mono_var(k, var::X), Y = mono_var(k, var::Y), Z = mono_var(k, var::Z);
  const auto X2 = X.scaled(*rep.lambda), Z2 = Z.scaled(*rep.gamma) + *rep.delta, Y2 = Y.scaled(*rep.nu) + *rep.g;
  Substitution<F> psi{{var::X, X2}, {var::Y, Y2}, {var::Z, Z2}};

  // (iii) (x^d, P) is preserved in k[x, z]
  IdealBasis<F> pd{k, {mono_var(k, var::X, S.d), S.P}, MonomialOrder::grevlex()};
  IdealBasis<F> pd_img{k, {substitute(mono_var(k, var::X, S.d), psi), substitute(S.P, psi)}, MonomialOrder::grevlex()};
  bool iii = ideals_equal(pd, pd_img, limits);
  c3 = {iii ? CheckStatus::passed : CheckStatus::failed,
        iii ? "(X^d, P) = (psi(X)^d, psi(P)) in k[X, Z]" : "(X^d, P) is not mapped onto itself"};

  // (v) (x^e, Q) C is preserved; C = k[X, Y, Z]/(G)
  const auto G = G_of(S);
  const auto Xe = mono_var(k, var::X, S.e);
  const auto psiQ = substitute(S.Q, psi);
  IdealBasis<F> qe{k, {Xe, S.Q, G}, MonomialOrder::grevlex()};
  IdealBasis<F> qe_img{k, {substitute(Xe, psi), psiQ, substitute(G, psi)}, MonomialOrder::grevlex()};
  bool v = ideals_equal(qe, qe_img, limits);
  c5 = {v ? CheckStatus::passed : CheckStatus::failed,
        v ? "(X^e, Q, G) = (psi(X)^e, psi(Q), psi(G)) in k[X, Y, Z]" : "(X^e, Q) C is not mapped onto itself"};

  // (vi) psi(Q) = f1 Q + f2 G + f3 X^e with f1 a unit modulo (X^d Y - P, X^e)
  auto cert = is_member(psiQ, IdealBasis<F>{k, {S.Q, G, Xe}, MonomialOrder::grevlex()}, limits);
  if (!cert) {
    c6 = {CheckStatus::failed, "psi(Q) is not in (Q, G, X^e)"};
    return rep;
  }
  rep.unit_factor = cert->cofactors[0];
  auto inv = is_unit_modulo(*rep.unit_factor, IdealBasis<F>{k, {-G, Xe}, MonomialOrder::grevlex()}, limits);
  if (inv)
    c6 = {CheckStatus::passed, "f1 = " + to_string(*rep.unit_factor) + " with inverse " + to_string(*inv) +
                                   " modulo (X^d Y - P, X^e)"};
  else
    c6 = {CheckStatus::failed, "f1 = " + to_string(*rep.unit_factor) + " is not a unit modulo (X^d Y - P, X^e)"};
  return rep;
}

// --- Random isomorphic pairs ----------------------------------------------------

RoundTripInstance<PrimeField> random_isomorphic_pair(const PrimeField& k, std::mt19937_64& rng,
                                                     const RoundTripParams& params) {
  using Poly = Polynomial<PrimeField>;
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto unit = [&] { return static_cast<std::uint32_t>(1 + rng() % (k.modulus() - 1)); };
  auto any = [&] { return static_cast<std::uint32_t>(rng() % k.modulus()); };
  // up to n terms X^a Y^b Z^c with exponents in the given ranges
  auto tail = [&](int n, int xmax, int ymax, int zmax) {
    std::vector<Poly::Term> t;
    for (int i = 0; i < n; ++i) t.push_back({Monomial{pick(0, xmax), pick(0, ymax), pick(0, zmax)}, any()});
    return Poly::from_terms(k, std::move(t));
  };

  const int r = pick(params.min_rs, params.max_rs), s = pick(params.min_rs, params.max_rs);
  const int d = pick(params.min_de, params.max_de), e = pick(params.min_de, params.max_de);
  auto X = mono_var(k, var::X), Y = mono_var(k, var::Y), Z = mono_var(k, var::Z);
  auto P1 = mono_var(k, var::Z, r) + tail(params.tail_terms, 2, 0, r - 1);
  auto Q1 = mono_var(k, var::Y, s) + tail(params.tail_terms, 2, s - 1, 2);
  auto S1 = make_surface(k, d, e, P1, Q1);

  const std::uint32_t lambda = unit(), gamma = unit();
  auto delta = tail(2, params.max_delta_degree, 0, 0);
  auto f0 = tail(params.tail_terms, 2, 0, r - 1);
  const auto lambda_d = k.pow(lambda, -d);
  const auto nu = k.mul(lambda_d, k.pow(gamma, r));
  auto g = f0.scaled(lambda_d);

  auto x_inv = X.scaled(k.inv(lambda));
  auto z_inv = (Z - substitute(delta, {{var::X, x_inv}})).scaled(k.inv(gamma));
  auto y_inv = (Y - substitute(g, {{var::X, x_inv}, {var::Z, z_inv}})).scaled(k.inv(nu));
  Substitution<PrimeField> inverse{{var::X, x_inv}, {var::Y, y_inv}, {var::Z, z_inv}};

  auto P2 = substitute(P1.scaled(k.pow(gamma, r)) + mono_var(k, var::X, d) * f0, inverse);
  auto h2 = s >= 2 ? tail(2, 1, s - 2, 1) : Poly(k);
  auto h3 = tail(2, 1, s - 1, 1);
  auto q2_img = Q1.scaled(k.pow(nu, s)) + h2 * G_of(S1) + h3 * mono_var(k, var::X, e);
  auto Q2 = substitute(q2_img, inverse);
  auto S2 = make_surface(k, d, e, P2, Q2);

  IsoWitness<PrimeField> planted{lambda, gamma, delta, f0, nu, g, std::nullopt, std::nullopt};
  return {std::move(S1), std::move(S2), std::move(planted)};
}

#define DDSURF_INSTANTIATE(F)                                                                                    \
  template InvariantReport invariant_check(const SurfacePresentation<F>&, const SurfacePresentation<F>&);       \
  template std::optional<Polynomial<F>> check_P_condition(const SurfacePresentation<F>&,                        \
                                                          const SurfacePresentation<F>&, const F::Scalar&,      \
                                                          const F::Scalar&, const Polynomial<F>&);              \
  template std::vector<PSolution<F>> solve_P_condition(const SurfacePresentation<F>&,                           \
                                                       const SurfacePresentation<F>&, int,                      \
                                                       const std::optional<std::vector<F::Scalar>>&);           \
  template std::optional<IsoWitness<F>> check_Q_condition(const SurfacePresentation<F>&,                        \
                                                          const SurfacePresentation<F>&, const PSolution<F>&,   \
                                                          const GroebnerLimits&);                               \
  template std::array<Polynomial<F>, 3> witness_coordinates(const SurfacePresentation<F>&,                      \
                                                            const IsoWitness<F>&);                              \
  template RingMap<F> build_isomorphism(const SurfacePresentation<F>&, const SurfacePresentation<F>&,           \
                                        const IsoWitness<F>&);                                                  \
  template ClassificationVerdict<F> decide_isomorphic(const SurfacePresentation<F>&,                            \
                                                      const SurfacePresentation<F>&, const SearchParams<F>&);   \
  template ClassificationVerdict<F> verify_witness(const SurfacePresentation<F>&, const SurfacePresentation<F>&, \
                                                   const F::Scalar&, const F::Scalar&, const Polynomial<F>&,    \
                                                   const GroebnerLimits&);                                      \
  template struct AutomorphismReport<F>;                                                                        \
  template AutomorphismReport<F> verify_automorphism(const SurfacePresentation<F>&, const RingMap<F>&,          \
                                                     const GroebnerLimits&);

DDSURF_INSTANTIATE(Rationals)
DDSURF_INSTANTIATE(PrimeField)

}  // namespace ddsurf
