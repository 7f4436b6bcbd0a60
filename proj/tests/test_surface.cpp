#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ddsurf/parse.hpp"
#include "ddsurf/surface.hpp"
#include "support/linear_oracle.hpp"
#include "support/random_poly.hpp"

using namespace ddsurf;
using ddsurf::testing::bounded_cofactor_search;
using ddsurf::testing::random_poly;

namespace {

const Rationals QQ;

Polynomial<Rationals> q(const char* s) { return parse_poly(s, QQ); }

template <Field F>
SurfacePresentation<F> surf(const F& k, int d, int e, const char* P, const char* Q) {
  return make_surface(k, d, e, parse_poly(P, k), parse_poly(Q, k));
}

}  // namespace

TEST(Surface, ValidateExamples) {
  auto b1 = surf(QQ, 2, 4, "Z^2", "Y^2");
  EXPECT_EQ(b1.r, 2);
  EXPECT_EQ(b1.s, 2);
  auto rep = validate(b1);
  EXPECT_TRUE(rep.ml_known);
  EXPECT_TRUE(rep.theorem_I_applicable);
  EXPECT_TRUE(rep.theorem_II_applicable);
  EXPECT_TRUE(rep.notes.empty());

  auto lin = validate(surf(QQ, 2, 1, "Z", "Y^4"));
  EXPECT_FALSE(lin.theorem_I_applicable);
  EXPECT_TRUE(lin.theorem_II_applicable);
  EXPECT_FALSE(lin.ml_known);
  EXPECT_EQ(lin.notes.size(), 2u);

  EXPECT_TRUE(validate(surf(QQ, 2, 2, "Z", "Y^4")).ml_known);
  auto s1 = validate(surf(QQ, 1, 2, "Z^2", "Y"));
  EXPECT_TRUE(s1.ml_known);
  EXPECT_FALSE(s1.theorem_II_applicable);
  EXPECT_EQ(s1.notes.size(), 1u);
}

TEST(Surface, InvalidPresentations) {
  EXPECT_THROW(surf(QQ, 2, 4, "X*Z + 1", "Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 4, "2*Z^2", "Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 4, "Z^2", "X*Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 4, "Z^2 + Y", "Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 4, "Z^2", "Y^2 + T"), InputError);
  EXPECT_THROW(surf(QQ, 0, 4, "Z^2", "Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 0, "Z^2", "Y^2"), InputError);
  EXPECT_THROW(surf(QQ, 2, 1, "X", "Y"), InputError);
}

TEST(Surface, MlKnownMatchesFormulaOnGrid) {
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s)
      for (int e = 1; e <= 3; ++e) {
        std::string P = "Z^" + std::to_string(r), Q = "Y^" + std::to_string(s);
        auto rep = validate(surf(QQ, 1, e, P.c_str(), Q.c_str()));
        bool expected = (r >= 2 && s >= 2) || (r >= 2 && s == 1) || (r == 1 && s >= 2 && e >= 2);
        EXPECT_EQ(rep.ml_known, expected) << r << s << e;
        EXPECT_EQ(rep.theorem_I_applicable, r > 1);
        EXPECT_EQ(rep.theorem_II_applicable, s > 1);
      }
}

TEST(Surface, LaurentImages) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  EXPECT_EQ(laurent_nf(S, q("Y")), LaurentPoly<Rationals>::monomial(QQ, -2, 2, 1));
  auto t = laurent_nf(S, q("T"));
  EXPECT_EQ(t, LaurentPoly<Rationals>::monomial(QQ, -8, 4, 1));
  EXPECT_EQ(laurent_div_xpow(laurent_nf(S, q("Y")) * laurent_nf(S, q("Y")), 4), t);
  for (const auto& rel : defining_relations(S)) EXPECT_TRUE(laurent_nf(S, rel).is_zero());
}

TEST(Surface, EqualityInB) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  EXPECT_TRUE(equal_in_B(S, q("X^2*Y"), q("Z^2")));
  auto S2 = surf(QQ, 2, 4, "Z^2", "Y^2 - X*Y*Z^2");
  EXPECT_TRUE(equal_in_B(S2, q("X^4*T"), q("Y^2 - X*Y*Z^2")));
  EXPECT_FALSE(equal_in_B(S2, q("X^4*T"), q("Y^2")));
}

TEST(Surface, MembershipModXn) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  auto c = in_ideal_mod_xn(S, q("X^2*Y"), 2);
  ASSERT_TRUE(c);
  std::vector<Polynomial<Rationals>> gens{q("X^2"), q("X^2*Y - Z^2"), q("X^4*T - Y^2")};
  EXPECT_TRUE(certificate_reconstructs(*c, gens, q("X^2*Y")));
  EXPECT_FALSE(in_ideal_mod_xn(S, q("X^2*Y"), 4));
  EXPECT_FALSE(in_ideal_mod_xn(S, q("X^4*T + Y"), 5));
  EXPECT_THROW(in_ideal_mod_xn(S, q("X"), 0), InputError);
}

TEST(Lemma1, Examples) {
  PrimeField f2(2);
  auto rep = lemma1_oracle(parse_poly("Z^2", f2), 1, Lemma1Bounds{1, 1, 1});
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.pairs_examined, 1u << 8);

  auto lin = lemma1_oracle(parse_poly("Z", f2), 2, Lemma1Bounds{});
  EXPECT_EQ(lin.violations, 0u);
  EXPECT_EQ(lin.pairs_examined, 1u << 18);

  // g = X, w = Z: h = XZ - XZ^2 is divisible by X but has Z-degree r.
  EXPECT_EQ(lemma1_instance(q("Z^2"), 1, q("X"), q("Z")), std::nullopt);
  auto h = q("X*Z") - q("X") * q("Z^2");
  EXPECT_EQ(x_adic_valuation(h), 1);

  EXPECT_EQ(lemma1_instance(q("Z^2 + X"), 2, q("X^2*Y"), q("Y*Z^2 + X*Y")), std::optional<bool>(true));
  EXPECT_EQ(lemma1_instance(q("Z^2 + X"), 1, q("X*Y"), q("Y*Z^2 + X*Y + Z")), std::optional<bool>(true));
  EXPECT_THROW(lemma1_oracle(q("Z^2"), 1, Lemma1Bounds{}), InputError);
  EXPECT_THROW(lemma1_oracle(parse_poly("X*Z^2", f2), 1, Lemma1Bounds{}), InputError);
  EXPECT_THROW(lemma1_oracle(parse_poly("Z^2", PrimeField(3)), 1, Lemma1Bounds{3, 0, 3}), ResourceExhausted);
}

TEST(Lemma1, SweepOverF2) {
  PrimeField f2(2);
  for (const char* P : {"Z", "Z + X", "Z^2", "Z^2 + X*Z + 1", "Z^2 + X^2", "Z^3 + X*Z"})
    for (int d = 1; d <= 3; ++d) {
      auto rep = lemma1_oracle(parse_poly(P, f2), d, Lemma1Bounds{});
      EXPECT_EQ(rep.violations, 0u) << P << " d=" << d;
      EXPECT_GT(rep.hypothesis_holds, 1u);
    }
}

// Independent enumeration of the full (g, w) space in k[X,Y,Z], with no
// slicing and plain polynomial arithmetic.
TEST(Lemma1, SliceReductionMatchesFullEnumeration) {
  PrimeField f2(2);
  const Lemma1Bounds b{1, 1, 1};
  std::vector<Monomial> monos;
  for (int a = 0; a <= b.x; ++a)
    for (int j = 0; j <= b.y; ++j)
      for (int c = 0; c <= b.z; ++c) monos.push_back(Monomial{a, j, c});
  for (const char* Ptext : {"Z^2 + X*Z + X", "Z + X^2"}) {
    auto P = parse_poly(Ptext, f2);
    const int d = 1, r = *degree_in(P, var::Z);
    auto from_mask = [&](unsigned mask) {
      std::vector<Polynomial<PrimeField>::Term> t;
      for (std::size_t i = 0; i < monos.size(); ++i)
        if (mask >> i & 1) t.push_back({monos[i], 1});
      return Polynomial<PrimeField>::from_terms(f2, std::move(t));
    };
    std::uint64_t holds = 0, bad = 0;
    const unsigned n = 1u << monos.size();
    auto Xd = Polynomial<PrimeField>::variable(f2, var::X, d);
    for (unsigned gm = 0; gm < n; ++gm) {
      auto g = from_mask(gm);
      auto gP = g * P;
      for (unsigned wm = 0; wm < n; ++wm) {
        auto h = Xd * from_mask(wm) - gP;
        auto hz = degree_in(h, var::Z);
        if (hz && *hz >= r) continue;
        ++holds;
        auto vg = x_adic_valuation(g), vh = x_adic_valuation(h);
        if ((vg && *vg < d) || (vh && *vh < d)) ++bad;
      }
    }
    auto rep = lemma1_oracle(P, d, b);
    EXPECT_EQ(bad, 0u);
    EXPECT_EQ(rep.violations, 0u);
    std::uint64_t lifted = 1;
    for (int j = 0; j <= b.y; ++j) lifted *= rep.hypothesis_holds;
    EXPECT_EQ(holds, lifted) << Ptext;
  }
}

TEST(Lemma2, Examples) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  EXPECT_TRUE(lemma2_oracle(S, Lemma2Part::i, QQ.one(), q("0"), 4));
  EXPECT_TRUE(lemma2_oracle(S, Lemma2Part::ii, QQ.one(), q("Y"), 5));
  EXPECT_TRUE(lemma2_oracle(surf(QQ, 2, 1, "Z^2", "Y^4"), Lemma2Part::i, QQ.one(), q("Z"), 3));
}

TEST(Lemma2, PreconditionsAreDistinct) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  auto msg = [&](auto&& fn) {
    try {
      fn();
    } catch (const PreconditionError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  auto one = QQ.one();
  std::set<std::string> seen{
      msg([&] { lemma2_oracle(S, Lemma2Part::i, one, q("Z^2"), 4); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::i, one, q("Y"), 4); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::i, one, q("Z"), 2); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::ii, one, q("Y^2"), 5); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::ii, one, q("T"), 5); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::ii, one, q("Y"), 4); }),
      msg([&] { lemma2_oracle(surf(QQ, 2, 4, "Z^2", "Y"), Lemma2Part::i, one, q("0"), 4); }),
      msg([&] { lemma2_oracle(S, Lemma2Part::i, QQ.zero(), q("0"), 4); }),
  };
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_FALSE(seen.count("no error"));
}

TEST(Lemma2, ExhaustiveSweepsOverF2) {
  PrimeField f2(2);
  struct Case {
    int d, e;
    const char *P, *Q;
  };
  for (Case c : {Case{1, 1, "Z^2", "Y^2"}, Case{2, 1, "Z^2 + X", "Y^2 + Z"}, Case{1, 2, "Z^3 + X*Z", "Y^2 + X*Y"},
                 Case{2, 2, "Z^2 + Z", "Y^3 + Z^2"}}) {
    auto S = surf(f2, c.d, c.e, c.P, c.Q);
    for (int extra = 1; extra <= 2; ++extra) {
      auto ri = lemma2_sweep(S, Lemma2Part::i, c.d + extra, Lemma2SweepBounds{});
      EXPECT_TRUE(ri.counterexamples.empty()) << c.P << " " << c.Q;
      EXPECT_GT(ri.instances, 0u);
      auto rii = lemma2_sweep(S, Lemma2Part::ii, c.e + extra, Lemma2SweepBounds{});
      EXPECT_TRUE(rii.counterexamples.empty()) << c.P << " " << c.Q;
    }
  }
}

// The lemma genuinely needs n > d: at n = d the element X^d Y + lowpoly
// can vanish, e.g. lowpoly = 0.
TEST(Lemma2, BoundaryIsSharp) {
  auto S = surf(QQ, 2, 4, "Z^2", "Y^2");
  EXPECT_TRUE(in_ideal_mod_xn(S, q("X^2*Y"), 2));
  EXPECT_TRUE(in_ideal_mod_xn(S, q("X^4*T"), 4));
}

// Properties

template <typename F>
class SurfaceProperty : public ::testing::Test {};
using Fields = ::testing::Types<Rationals, PrimeField>;
TYPED_TEST_SUITE(SurfaceProperty, Fields);

template <Field F>
F make_field() {
  if constexpr (std::is_same_v<F, Rationals>) return Rationals{};
  else return PrimeField(3);
}

template <Field F>
SurfacePresentation<F> random_surface(const F& k, std::mt19937_64& rng) {
  int r = 1 + rng() % 3, s = 1 + rng() % 3;
  auto P = Polynomial<F>::variable(k, var::Z, r) +
           ddsurf::testing::random_poly(k, rng, {var::X, var::Z}, r - 1, 3) * Polynomial<F>::integer(k, 1);
  // Keep deg_Z of the tail below r.
  P = Polynomial<F>::variable(k, var::Z, r) + divide_by_monic(P, Polynomial<F>::variable(k, var::Z, r), var::Z).remainder;
  auto Qtail = random_poly(k, rng, {var::X, var::Y, var::Z}, 2, 3);
  auto Q = Polynomial<F>::variable(k, var::Y, s) +
           divide_by_monic(Qtail, Polynomial<F>::variable(k, var::Y, s), var::Y).remainder;
  return make_surface(k, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3), P, Q);
}

TYPED_TEST(SurfaceProperty, LaurentNfIsHomomorphism) {
  const TypeParam k = make_field<TypeParam>();
  std::mt19937_64 rng(3);
  const std::vector<int> vars{var::X, var::Y, var::Z, var::T};
  for (int trial = 0; trial < 40; ++trial) {
    auto S = random_surface(k, rng);
    for (const auto& rel : defining_relations(S)) EXPECT_TRUE(laurent_nf(S, rel).is_zero());
    auto a = random_poly(k, rng, vars, 2, 4), b = random_poly(k, rng, vars, 2, 4);
    EXPECT_EQ(laurent_nf(S, a + b), laurent_nf(S, a) + laurent_nf(S, b));
    EXPECT_EQ(laurent_nf(S, a * b), laurent_nf(S, a) * laurent_nf(S, b));
    auto rel = defining_relations(S);
    EXPECT_TRUE(equal_in_B(S, a, a + b * rel[0] - a * rel[1]));
  }
}

// Equality in B against bounded-degree ideal membership over F2 and F3.
// The oracle searches cofactors of total degree <= 2 in X, Y, Z, T; a found
// certificate proves equality, and a Laurent disagreement must never come
// with one.
TEST(SurfaceOracle, EqualityAgreesWithIdealMembership) {
  std::mt19937_64 rng(17);
  const std::vector<int> vars{var::X, var::Y, var::Z, var::T};
  int equal_cases = 0, unequal_cases = 0;
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField k(p);
    for (int trial = 0; trial < 40; ++trial) {
      auto S = random_surface(k, rng);
      auto rel = defining_relations(S);
      std::vector<Polynomial<PrimeField>> gens{rel[0], rel[1]};
      auto a = random_poly(k, rng, vars, 2, 3);
      Polynomial<PrimeField> b = a;
      if (trial % 2 == 0)
        b += ddsurf::testing::random_poly_total(k, rng, vars, 2, 2) * rel[0] +
             ddsurf::testing::random_poly_total(k, rng, vars, 2, 2) * rel[1];
      else
        b += random_poly(k, rng, vars, 2, 2);
      bool eq = equal_in_B(S, a, b);
      std::optional<std::vector<Polynomial<PrimeField>>> cert;
      for (int deg = 2; deg <= 4 && !cert; ++deg) cert = bounded_cofactor_search(b - a, gens, vars, deg);
      if (cert) {
        EXPECT_TRUE(eq);
        ++equal_cases;
      } else {
        // No certificate up to degree 4; a Laurent agreement here would need
        // higher-degree cofactors, which these inputs never do.
        EXPECT_FALSE(eq) << to_string(b - a);
        ++unequal_cases;
      }
    }
  }
  EXPECT_GT(equal_cases, 20);
  EXPECT_GT(unequal_cases, 10);
}
