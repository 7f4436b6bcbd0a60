#include <gtest/gtest.h>

#include <random>

#include "ddsurf/groebner.hpp"
#include "ddsurf/parse.hpp"
#include "support/linear_oracle.hpp"
#include "support/random_poly.hpp"

using namespace ddsurf;
using ddsurf::testing::bounded_cofactor_search;
using ddsurf::testing::random_poly_total;

namespace {

const Rationals QQ;

Polynomial<Rationals> q(const char* s) { return parse_poly(s, QQ); }

template <Field F>
IdealBasis<F> ideal(const F& k, std::initializer_list<const char*> gens,
                    MonomialOrder order = MonomialOrder::grevlex()) {
  IdealBasis<F> b{k, {}, order};
  for (const char* g : gens) b.generators.push_back(parse_poly(g, k));
  return b;
}

template <Field F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g, const MonomialOrder& order) {
  Monomial lf = leading_monomial(f, order), lg = leading_monomial(g, order);
  Monomial l = lcm(lf, lg);
  const F& k = f.field();
  return f.times_term(l / lf, k.inv(f.coefficient(lf))) - g.times_term(l / lg, k.inv(g.coefficient(lg)));
}

template <Field F>
void expect_valid_basis(const GroebnerBasis<F>& gb) {
  for (std::size_t i = 0; i < gb.elements.size(); ++i) {
    Polynomial<F> sum(gb.field);
    for (std::size_t j = 0; j < gb.generators.size(); ++j) sum += gb.transform[i][j] * gb.generators[j];
    EXPECT_EQ(sum, gb.elements[i]) << "transform row " << i;
    for (std::size_t j = i + 1; j < gb.elements.size(); ++j)
      EXPECT_TRUE(reduce_full(s_polynomial(gb.elements[i], gb.elements[j], gb.order), gb).normal_form.is_zero());
  }
}

}  // namespace

TEST(Groebner, SingleVariable) {
  auto gb = buchberger(ideal(QQ, {"X"}));
  ASSERT_EQ(gb.elements.size(), 1u);
  EXPECT_EQ(gb.elements[0], q("X"));
}

TEST(Groebner, LexBasisContainsZSquared) {
  auto gb = buchberger(ideal(QQ, {"X^2*Y - Z^2", "X"}, MonomialOrder::lex()));
  expect_valid_basis(gb);
  EXPECT_NE(std::find(gb.elements.begin(), gb.elements.end(), q("Z^2")), gb.elements.end());
}

TEST(Groebner, ReduceSingleGenerator) {
  auto gb = buchberger(ideal(QQ, {"X^2*Y - Z^2"}));
  auto r = reduce_full(q("X^2*Y"), gb);
  EXPECT_EQ(r.normal_form, q("Z^2"));
  ASSERT_EQ(r.certificate.cofactors.size(), 1u);
  EXPECT_EQ(r.certificate.cofactors[0], q("1"));
}

TEST(Groebner, ReduceZero) {
  auto gb = buchberger(ideal(QQ, {"Y^2", "Z^2 - X^2*Y", "X^4"}));
  auto r = reduce_full(Polynomial<Rationals>(QQ), gb);
  EXPECT_TRUE(r.normal_form.is_zero());
  ASSERT_EQ(r.certificate.cofactors.size(), 3u);
  for (const auto& c : r.certificate.cofactors) EXPECT_TRUE(c.is_zero());
}

TEST(Groebner, ForwardCertificateAgainstOriginalGenerators) {
  auto basis = ideal(QQ, {"Y^2", "Z^2 - X^2*Y", "X^4"});
  auto gb = buchberger(basis);
  expect_valid_basis(gb);
  auto target = q("Y^2 - X*Y*Z^2");
  auto r = reduce_full(target, gb);
  EXPECT_TRUE(r.normal_form.is_zero());
  EXPECT_TRUE(certificate_reconstructs(r.certificate, basis.generators, target));
  // Hand identity, checked by expansion.
  MembershipCertificate<Rationals> hand{{q("1 - X^3"), q("-X*Y"), q("0")}};
  EXPECT_TRUE(certificate_reconstructs(hand, basis.generators, target));
  EXPECT_EQ(r.certificate.cofactors[0], q("1 - X^3"));
  EXPECT_EQ(r.certificate.cofactors[1], q("-X*Y"));
}

TEST(Groebner, MembershipExamples) {
  auto a = ideal(QQ, {"X", "X^2*Y - Z^2"});
  auto c = is_member(q("Z^2"), a);
  ASSERT_TRUE(c);
  EXPECT_TRUE(certificate_reconstructs(*c, a.generators, q("Z^2")));
  EXPECT_EQ(c->cofactors[0], q("X*Y"));
  EXPECT_EQ(c->cofactors[1], q("-1"));

  EXPECT_FALSE(is_member(q("X^2*Y"), ideal(QQ, {"X^4", "X^2*Y - Z^2", "X^4*T - Y^2"})));

  auto one = is_member(q("1"), ideal(QQ, {"1"}));
  ASSERT_TRUE(one);
  EXPECT_EQ(one->cofactors[0], q("1"));
}

TEST(Groebner, IdealEquality) {
  EXPECT_TRUE(ideals_equal(ideal(QQ, {"X", "Z^2"}), ideal(QQ, {"Z^2 - X^2*Y", "X"})));
  EXPECT_FALSE(ideals_equal(ideal(QQ, {"X"}), ideal(QQ, {"X^2"})));
  EXPECT_FALSE(ideals_equal(ideal(QQ, {"X^2"}), ideal(QQ, {"X"})));
  auto b = ideal(QQ, {"Y^2", "Z^2 - X^2*Y", "X^4"});
  EXPECT_TRUE(ideals_equal(b, b));
}

TEST(Groebner, UnitModulo) {
  auto x4 = ideal(QQ, {"X^4"});
  auto inv = is_unit_modulo(q("1 - X^3"), x4);
  ASSERT_TRUE(inv);
  auto gb = buchberger(x4);
  EXPECT_EQ(reduce_full(*inv, gb).normal_form, q("1 + X^3"));
  EXPECT_EQ(reduce_full(q("1 - X^3") * *inv - q("1"), gb).normal_form, q("0"));

  EXPECT_FALSE(is_unit_modulo(q("X"), x4));

  auto five = is_unit_modulo(q("5"), ideal(QQ, {"X*Y - Z"}));
  ASSERT_TRUE(five);
  EXPECT_EQ(*five, q("1/5"));
}

TEST(Groebner, ZeroGeneratorsGetZeroColumns) {
  auto basis = ideal(QQ, {"0", "X*Y - 1", "0"});
  auto gb = buchberger(basis);
  expect_valid_basis(gb);
  for (const auto& row : gb.transform) {
    EXPECT_TRUE(row[0].is_zero());
    EXPECT_TRUE(row[2].is_zero());
  }
}

TEST(Groebner, ResourceCapIsExplicit) {
  GroebnerLimits tight{3, 60};
  EXPECT_THROW(buchberger(ideal(QQ, {"X^3 - Y*Z", "Y^3 - X*Z", "Z^3 - X*Y", "X*Y*Z - T"}), tight),
               ResourceExhausted);
  GroebnerLimits shallow{400, 2};
  EXPECT_THROW(buchberger(ideal(QQ, {"X^3 - Y", "Y^2 - Z"}), shallow), ResourceExhausted);
}

// Caps apply after the generators are reduced against each other: X^70 in
// a generator disappears modulo X^2 before it can reach an S-polynomial.
TEST(Groebner, CapsApplyToReducedGenerators) {
  GroebnerLimits shallow{400, 10};
  auto gb = buchberger(ideal(QQ, {"Y^2 + X^70*Z - X", "X^2", "Z^2 - X*Y"}), shallow);
  auto cert = is_member(q("X^69*Y^3"), gb);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(certificate_reconstructs(*cert, gb.generators, q("X^69*Y^3")));
  EXPECT_FALSE(is_member(q("Y^2"), gb));
}

TEST(Groebner, OrdersAreMultiplicative) {
  std::mt19937_64 rng(11);
  for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex()})
    for (int i = 0; i < 300; ++i) {
      Monomial a, b, c;
      for (int v = 0; v < 4; ++v) {
        a.set(v, rng() % 4);
        b.set(v, rng() % 4);
        c.set(v, rng() % 4);
      }
      EXPECT_EQ(order.compare(a, b), order.compare(a * c, b * c));
      if (!(a == Monomial{})) EXPECT_TRUE(order.greater(a, Monomial{}));
    }
}

// Properties over random bases.

template <typename F>
class GroebnerProperty : public ::testing::Test {};
using Fields = ::testing::Types<Rationals, PrimeField>;
TYPED_TEST_SUITE(GroebnerProperty, Fields);

template <Field F>
F make_field() {
  if constexpr (std::is_same_v<F, Rationals>) return Rationals{};
  else return PrimeField(3);
}

TYPED_TEST(GroebnerProperty, SoundnessAndIdempotence) {
  const TypeParam k = make_field<TypeParam>();
  std::mt19937_64 rng(5);
  const std::vector<int> vars{var::X, var::Y, var::Z};
  for (int trial = 0; trial < 40; ++trial) {
    IdealBasis<TypeParam> basis{k, {}, trial % 2 ? MonomialOrder::lex() : MonomialOrder::grevlex()};
    for (int g = 0; g < 3; ++g) basis.generators.push_back(random_poly_total(k, rng, vars, 3, 3));
    GroebnerBasis<TypeParam> gb = [&] {
      try {
        return buchberger(basis);
      } catch (const ResourceExhausted&) {
        return GroebnerBasis<TypeParam>{k, basis.order, {}, {}, {}};
      }
    }();
    if (gb.generators.empty()) continue;
    expect_valid_basis(gb);

    auto again = buchberger(IdealBasis<TypeParam>{k, gb.elements, basis.order});
    EXPECT_EQ(again.elements, gb.elements);

    for (int i = 0; i < 5; ++i) {
      Polynomial<TypeParam> target(k);
      for (const auto& g : basis.generators) target += random_poly_total(k, rng, vars, 2, 2) * g;
      if (i % 2) target += random_poly_total(k, rng, vars, 3, 2);
      auto r = reduce_full(target, gb);
      EXPECT_TRUE(certificate_reconstructs(r.certificate, basis.generators, target, &r.normal_form));
      for (const auto& t : r.normal_form.terms())
        for (const auto& e : gb.elements) EXPECT_FALSE(leading_monomial(e, gb.order).divides(t.monomial));
      if (i % 2 == 0) EXPECT_TRUE(r.normal_form.is_zero());
    }
    EXPECT_TRUE(ideals_equal(basis, basis));
  }
}

TYPED_TEST(GroebnerProperty, IdealEqualitySymmetric) {
  const TypeParam k = make_field<TypeParam>();
  std::mt19937_64 rng(8);
  const std::vector<int> vars{var::X, var::Y};
  for (int trial = 0; trial < 30; ++trial) {
    IdealBasis<TypeParam> a{k, {}}, b{k, {}};
    for (int g = 0; g < 2; ++g) a.generators.push_back(random_poly_total(k, rng, vars, 3, 3));
    if (trial % 2) {
      // Same ideal, different generators.
      b.generators = {a.generators[0] + a.generators[1], a.generators[1]};
    } else {
      b.generators = {random_poly_total(k, rng, vars, 3, 3), a.generators[1]};
    }
    EXPECT_EQ(ideals_equal(a, b), ideals_equal(b, a));
    if (trial % 2) EXPECT_TRUE(ideals_equal(a, b));
  }
}

TEST(GroebnerOracle, AgreesWithLinearAlgebraSearch) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField k(p);
    for (int trial = 0; trial < 60; ++trial) {
      const int nvars = 2 + trial % 2;
      std::vector<int> vars(nvars);
      for (int v = 0; v < nvars; ++v) vars[v] = v;
      IdealBasis<PrimeField> basis{k, {}};
      for (int g = 0; g < 2; ++g) basis.generators.push_back(random_poly_total(k, rng, vars, 3, 3));
      Polynomial<PrimeField> target(k);
      if (trial % 3 == 0) target = random_poly_total(k, rng, vars, 4, 3);
      else
        for (const auto& g : basis.generators) target += random_poly_total(k, rng, vars, 1, 2) * g;
      auto cert = is_member(target, basis);
      if (cert) {
        EXPECT_TRUE(certificate_reconstructs(*cert, basis.generators, target));
        int deg = 0;
        for (const auto& c : cert->cofactors) deg = std::max(deg, c.total_degree());
        EXPECT_TRUE(bounded_cofactor_search(target, basis.generators, vars, deg)) << to_string(target);
      } else {
        EXPECT_FALSE(bounded_cofactor_search(target, basis.generators, vars, 4)) << to_string(target);
      }
      ++checked;
    }
  }
  EXPECT_EQ(checked, 120);
}
