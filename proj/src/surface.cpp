#include "ddsurf/surface.hpp"

#include <algorithm>

namespace ddsurf {

template <Field F>
SurfacePresentation<F> make_surface(const F& field, int d, int e, Polynomial<F> P, Polynomial<F> Q) {
  if (d < 1 || e < 1) throw InputError("surface: d and e must be positive");
  if (!(P.field() == field) || !(Q.field() == field)) throw FieldMismatch("surface: P or Q over another field");
  if (!uses_only(P, {var::X, var::Z})) throw InputError("surface: P must involve only X and Z");
  if (!uses_only(Q, {var::X, var::Y, var::Z})) throw InputError("surface: Q must involve only X, Y and Z");
  if (!is_monic_in(P, var::Z)) throw InputError("surface: P must be monic in Z of positive degree");
  if (!is_monic_in(Q, var::Y)) throw InputError("surface: Q must be monic in Y of positive degree");
  SurfacePresentation<F> S{field, d, e, std::move(P), std::move(Q), 0, 0};
  S.r = *degree_in(S.P, var::Z);
  S.s = *degree_in(S.Q, var::Y);
  return S;
}

template <Field F>
ApplicabilityReport validate(const SurfacePresentation<F>& S) {
  // Re-derives r, s so that hand-assembled presentations are checked too.
  auto checked = make_surface(S.field, S.d, S.e, S.P, S.Q);
  if (checked.r != S.r || checked.s != S.s) throw InputError("surface: stored r, s disagree with P, Q");
  ApplicabilityReport rep;
  rep.ml_known = ml_known_formula(S.r, S.s, S.e);
  rep.theorem_I_applicable = S.r > 1;
  rep.theorem_II_applicable = S.s > 1;
  if (S.r == 1 && S.s == 1) {
    rep.notes.push_back("r = s = 1: B is isomorphic to a polynomial ring in two variables");
  } else if (S.r == 1) {
    rep.notes.push_back(
        "r = 1: z is eliminated through X^d Y - P, so B is a Danielewski surface in x, y, t and d is not an "
        "invariant");
  } else if (S.s == 1) {
    rep.notes.push_back(
        "s = 1: y is eliminated through X^e T - Q, so B is a Danielewski surface in x, z, t and only d + e is "
        "an invariant");
  }
  if (!rep.ml_known) rep.notes.push_back("Makar-Limanov invariant not known to be k[x] for these parameters");
  return rep;
}

template <Field F>
std::array<LaurentPoly<F>, 4> laurent_images(const SurfacePresentation<F>& S) {
  const F& k = S.field;
  auto x = LaurentPoly<F>::monomial(k, 1, 0, k.one());
  auto z = LaurentPoly<F>::monomial(k, 0, 1, k.one());
  auto y = laurent_div_xpow(laurent_from_poly(S.P), S.d);
  auto t = laurent_div_xpow(laurent_evaluate(S.Q, {x, y, z, LaurentPoly<F>(k)}), S.e);
  return {x, y, z, t};
}

template <Field F>
LaurentPoly<F> laurent_nf(const SurfacePresentation<F>& S, const Polynomial<F>& p) {
  return laurent_evaluate(p, laurent_images(S));
}

template <Field F>
bool equal_in_B(const SurfacePresentation<F>& S, const Polynomial<F>& p, const Polynomial<F>& q) {
  return laurent_nf(S, p - q).is_zero();
}

template <Field F>
std::array<Polynomial<F>, 2> defining_relations(const SurfacePresentation<F>& S) {
  const F& k = S.field;
  auto Y = Polynomial<F>::variable(k, var::Y), T = Polynomial<F>::variable(k, var::T);
  return {Polynomial<F>::variable(k, var::X, S.d) * Y - S.P, Polynomial<F>::variable(k, var::X, S.e) * T - S.Q};
}

namespace {

template <Field F>
IdealBasis<F> mod_xn_basis(const SurfacePresentation<F>& S, int n) {
  if (n < 1) throw InputError("membership modulo X^n needs n >= 1");
  auto rel = defining_relations(S);
  return {S.field, {Polynomial<F>::variable(S.field, var::X, n), rel[0], rel[1]}, MonomialOrder::grevlex()};
}

}  // namespace

template <Field F>
ModXnIdeal<F>::ModXnIdeal(const SurfacePresentation<F>& S, int n, const GroebnerLimits& limits)
    : gb_(buchberger(mod_xn_basis(S, n), limits)) {}

template <Field F>
std::optional<MembershipCertificate<F>> ModXnIdeal<F>::member(const Polynomial<F>& p) const {
  return is_member(p, gb_);
}

template <Field F>
std::optional<MembershipCertificate<F>> in_ideal_mod_xn(const SurfacePresentation<F>& S, const Polynomial<F>& p,
                                                        int n, const GroebnerLimits& limits) {
  return ModXnIdeal<F>(S, n, limits).member(p);
}

// ---------------------------------------------------------------------------
// Divisibility lemma

template <Field F>
std::optional<bool> lemma1_instance(const Polynomial<F>& P, int d, const Polynomial<F>& g, const Polynomial<F>& w) {
  if (!is_monic_in(P, var::Z) || !uses_only(P, {var::X, var::Z}))
    throw InputError("lemma1: P must be a polynomial in X, Z monic in Z");
  if (d < 1) throw InputError("lemma1: d must be positive");
  const int r = *degree_in(P, var::Z);
  Polynomial<F> h = Polynomial<F>::variable(P.field(), var::X, d) * w - g * P;
  auto hz = degree_in(h, var::Z);
  if (hz && *hz >= r) return std::nullopt;
  auto divisible = [d](const Polynomial<F>& q) {
    auto v = x_adic_valuation(q);
    return !v || *v >= d;
  };
  return divisible(g) && divisible(h);
}

template <Field F>
Lemma1Report<F> lemma1_oracle(const Polynomial<F>& P, int d, const Lemma1Bounds& bounds, std::size_t max_reported,
                              std::uint64_t max_pairs) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    (void)P, (void)d, (void)bounds, (void)max_reported, (void)max_pairs;
    throw InputError("lemma1 enumeration needs a finite field; check explicit instances instead");
  } else {
    if (!is_monic_in(P, var::Z) || !uses_only(P, {var::X, var::Z}))
      throw InputError("lemma1: P must be a polynomial in X, Z monic in Z");
    if (d < 1) throw InputError("lemma1: d must be positive");
    if (bounds.x < 0 || bounds.y < 0 || bounds.z < 0) throw InputError("lemma1: negative degree bound");
    const PrimeField& k = P.field();
    const std::uint32_t p = k.modulus();
    const int r = *degree_in(P, var::Z);
    const int px = *degree_in(P, var::X);
    const int nb = (bounds.x + 1) * (bounds.z + 1);

    std::uint64_t total = 1;
    for (int i = 0; i < 2 * nb; ++i) {
      if (total > max_pairs / p) throw ResourceExhausted("lemma1: enumeration exceeds the pair budget");
      total *= p;
    }

    // Dense h over a box holding every X^d w - g P within bounds.
    const int hx = std::max(bounds.x + px, bounds.x + d) + 1;
    const int hz = bounds.z + r + 1;
    auto cell = [hz](int a, int c) { return a * hz + c; };
    struct Entry {
      int cell;
      std::uint32_t coeff;
    };
    // image[i] is the change in h when digit i rises by one
    std::vector<std::vector<Entry>> image(2 * nb);
    std::vector<Monomial> digit_monomial(2 * nb);
    for (int a = 0; a <= bounds.x; ++a)
      for (int c = 0; c <= bounds.z; ++c) {
        int i = a * (bounds.z + 1) + c;
        Monomial m{a, 0, c};
        digit_monomial[i] = digit_monomial[nb + i] = m;
        for (const auto& t : P.terms())
          image[i].push_back({cell(a + t.monomial[var::X], c + t.monomial[var::Z]), k.neg(t.coeff)});
        image[nb + i].push_back({cell(a + d, c), k.one()});
      }

    std::vector<std::uint32_t> h(static_cast<std::size_t>(hx) * hz, 0), digit(2 * nb, 0);
    int high_z = 0;   // nonzero h cells with Z-exponent >= r
    int low_x_h = 0;  // nonzero h cells with X-exponent < d
    int low_x_g = 0;  // nonzero g digits with X-exponent < d

    Lemma1Report<F> rep;
    auto lift = [&](int j) {
      std::vector<typename Polynomial<F>::Term> g, w, ht;
      for (int i = 0; i < nb; ++i) {
        Monomial m = digit_monomial[i];
        m.set(var::Y, j);
        if (digit[i]) g.push_back({m, digit[i]});
        if (digit[nb + i]) w.push_back({m, digit[nb + i]});
      }
      for (int a = 0; a < hx; ++a)
        for (int c = 0; c < hz; ++c)
          if (auto v = h[cell(a, c)]) ht.push_back({Monomial{a, j, c}, v});
      rep.counterexamples.push_back({Polynomial<F>::from_terms(k, std::move(g)),
                                     Polynomial<F>::from_terms(k, std::move(w)),
                                     Polynomial<F>::from_terms(k, std::move(ht))});
    };

    for (;;) {
      ++rep.pairs_examined;
      if (high_z == 0) {
        ++rep.hypothesis_holds;
        if (low_x_g || low_x_h)
          for (int j = 0; j <= bounds.y; ++j) {
            ++rep.violations;
            if (rep.counterexamples.size() < max_reported) lift(j);
          }
      }
      int i = 0;
      for (; i < 2 * nb; ++i) {
        bool was_zero = digit[i] == 0;
        digit[i] = digit[i] + 1 == p ? 0 : digit[i] + 1;
        if (i < nb && digit_monomial[i][var::X] < d) low_x_g += (was_zero ? 1 : 0) - (digit[i] == 0 ? 1 : 0);
        for (const auto& en : image[i]) {
          std::uint32_t old = h[en.cell];
          std::uint32_t now = static_cast<std::uint32_t>((std::uint64_t{old} + en.coeff) % p);
          h[en.cell] = now;
          int delta = (old == 0 ? 1 : 0) - (now == 0 ? 1 : 0);
          if (delta) {
            if (en.cell % hz >= r) high_z += delta;
            if (en.cell / hz < d) low_x_h += delta;
          }
        }
        if (digit[i] != 0) break;
      }
      if (i == 2 * nb) break;
    }
    return rep;
  }
}

// ---------------------------------------------------------------------------
// Non-vanishing lemma

namespace {

template <Field F>
void check_lemma2(const SurfacePresentation<F>& S, Lemma2Part part, const Polynomial<F>& lowpoly, int n) {
  if (S.s <= 1) throw PreconditionError("lemma2: needs s > 1");
  if (part == Lemma2Part::i) {
    if (!uses_only(lowpoly, {var::X, var::Z})) throw PreconditionError("lemma2 (i): lowpoly must be in X, Z");
    auto dz = degree_in(lowpoly, var::Z);
    if (dz && *dz >= S.r) throw PreconditionError("lemma2 (i): needs deg_Z lowpoly < r");
    if (n <= S.d) throw PreconditionError("lemma2 (i): needs n > d");
  } else {
    if (!uses_only(lowpoly, {var::X, var::Y, var::Z}))
      throw PreconditionError("lemma2 (ii): lowpoly must be in X, Y, Z");
    auto dy = degree_in(lowpoly, var::Y);
    if (dy && *dy >= S.s) throw PreconditionError("lemma2 (ii): needs deg_Y lowpoly < s");
    if (n <= S.e) throw PreconditionError("lemma2 (ii): needs n > e");
  }
}

template <Field F>
Polynomial<F> lemma2_lead(const SurfacePresentation<F>& S, Lemma2Part part) {
  const F& k = S.field;
  return part == Lemma2Part::i
             ? Polynomial<F>::variable(k, var::X, S.d) * Polynomial<F>::variable(k, var::Y)
             : Polynomial<F>::variable(k, var::X, S.e) * Polynomial<F>::variable(k, var::T);
}

}  // namespace

template <Field F>
bool lemma2_oracle(const SurfacePresentation<F>& S, Lemma2Part part, const typename F::Scalar& u,
                   const Polynomial<F>& lowpoly, int n, const GroebnerLimits& limits) {
  if (S.field.is_zero(u)) throw PreconditionError("lemma2: u must be nonzero");
  check_lemma2(S, part, lowpoly, n);
  return !in_ideal_mod_xn(S, lemma2_lead(S, part).scaled(u) + lowpoly, n, limits);
}

template <Field F>
Lemma2SweepReport<F> lemma2_sweep(const SurfacePresentation<F>& S, Lemma2Part part, int n,
                                  const Lemma2SweepBounds& bounds, const GroebnerLimits& limits,
                                  std::uint64_t max_instances) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    (void)S, (void)part, (void)n, (void)bounds, (void)limits, (void)max_instances;
    throw InputError("lemma2 sweep needs a finite field");
  } else {
    const PrimeField& k = S.field;
    const std::uint32_t p = k.modulus();
    check_lemma2(S, part, Polynomial<F>(k), n);
    std::vector<Monomial> monos;
    const int ymax = part == Lemma2Part::i ? 0 : std::min(bounds.y, S.s - 1);
    const int zmax = part == Lemma2Part::i ? std::min(bounds.z, S.r - 1) : bounds.z;
    for (int a = 0; a <= bounds.x; ++a)
      for (int b = 0; b <= ymax; ++b)
        for (int c = 0; c <= zmax; ++c) monos.push_back(Monomial{a, b, c});

    std::uint64_t total = p - 1;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (total > max_instances / p) throw ResourceExhausted("lemma2 sweep exceeds the instance budget");
      total *= p;
    }

    // Normal forms are linear, so each instance's normal form is a sum of
    // precomputed monomial normal forms; hits are re-checked with certificates.
    ModXnIdeal<F> ideal(S, n, limits);
    const Polynomial<F> lead = lemma2_lead(S, part);
    const Polynomial<F> lead_nf = normal_form(lead, ideal.basis());
    std::vector<Polynomial<F>> mono_nf;
    for (const auto& m : monos) mono_nf.push_back(normal_form(Polynomial<F>::term(k, m, k.one()), ideal.basis()));

    Lemma2SweepReport<F> rep;
    std::vector<std::uint32_t> digit(monos.size(), 0);
    Polynomial<F> low_nf(k);
    for (;;) {
      for (std::uint32_t u = 1; u < p; ++u) {
        ++rep.instances;
        if (!(lead_nf.scaled(u) + low_nf).is_zero()) continue;
        std::vector<typename Polynomial<F>::Term> terms;
        for (std::size_t i = 0; i < monos.size(); ++i)
          if (digit[i]) terms.push_back({monos[i], digit[i]});
        auto low = Polynomial<F>::from_terms(k, std::move(terms));
        if (ideal.member(lead.scaled(u) + low)) rep.counterexamples.push_back({u, low});
      }
      std::size_t i = 0;
      for (; i < monos.size(); ++i) {
        digit[i] = digit[i] + 1 == p ? 0 : digit[i] + 1;
        low_nf += mono_nf[i];
        if (digit[i]) break;
      }
      if (i == monos.size()) break;
    }
    return rep;
  }
}

#define DDSURF_INSTANTIATE(F)                                                                                   \
  template SurfacePresentation<F> make_surface(const F&, int, int, Polynomial<F>, Polynomial<F>);              \
  template ApplicabilityReport validate(const SurfacePresentation<F>&);                                        \
  template std::array<LaurentPoly<F>, 4> laurent_images(const SurfacePresentation<F>&);                        \
  template LaurentPoly<F> laurent_nf(const SurfacePresentation<F>&, const Polynomial<F>&);                     \
  template bool equal_in_B(const SurfacePresentation<F>&, const Polynomial<F>&, const Polynomial<F>&);         \
  template std::array<Polynomial<F>, 2> defining_relations(const SurfacePresentation<F>&);                     \
  template class ModXnIdeal<F>;                                                                                \
  template std::optional<MembershipCertificate<F>> in_ideal_mod_xn(const SurfacePresentation<F>&,              \
                                                                   const Polynomial<F>&, int,                  \
                                                                   const GroebnerLimits&);                     \
  template std::optional<bool> lemma1_instance(const Polynomial<F>&, int, const Polynomial<F>&,                \
                                               const Polynomial<F>&);                                          \
  template Lemma1Report<F> lemma1_oracle(const Polynomial<F>&, int, const Lemma1Bounds&, std::size_t,          \
                                         std::uint64_t);                                                       \
  template bool lemma2_oracle(const SurfacePresentation<F>&, Lemma2Part, const F::Scalar&,                     \
                              const Polynomial<F>&, int, const GroebnerLimits&);                               \
  template Lemma2SweepReport<F> lemma2_sweep(const SurfacePresentation<F>&, Lemma2Part, int,                   \
                                             const Lemma2SweepBounds&, const GroebnerLimits&, std::uint64_t);

DDSURF_INSTANTIATE(Rationals)
DDSURF_INSTANTIATE(PrimeField)

}  // namespace ddsurf
