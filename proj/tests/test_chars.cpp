#include <gtest/gtest.h>

#include <random>
#include <set>

#include "crosschar/chars.hpp"
#include "crosschar/rng.hpp"
#include "support/oracles.hpp"

using namespace crosschar;

namespace {

/// Character value by walking generator powers instead of reading the log table.
std::uint32_t naive_eval(const Character& chi, std::uint32_t x) {
  if (x == 0) return 0;
  const FieldSpec& d = *chi.domain;
  const FieldSpec& k = *chi.target.field;
  std::uint32_t g = 1, val = 1;
  const std::uint32_t step = k.pow(chi.target.zeta, static_cast<std::int64_t>(chi.a));
  while (g != x) {
    g = d.mul(g, d.generator());
    val = k.mul(val, step);
  }
  return val;
}

TEST(CoeffField, Examples) {
  const CoeffField a = make_coeff_field(13, 4);
  EXPECT_EQ(a.degree(), 1U);
  EXPECT_EQ(a.field->order(), 13U);
  EXPECT_EQ(a.field->mul(a.zeta, a.zeta), 12U);
  // zeta = g^{(13-1)/4} with g = 2, the least primitive root mod 13
  EXPECT_EQ(a.zeta, 8U);

  const CoeffField b = make_coeff_field(7, 4);
  EXPECT_EQ(b.degree(), 2U);
  EXPECT_THROW(make_coeff_field(3, 6), PreconditionError);
  EXPECT_THROW(make_coeff_field(4, 3), PreconditionError);

  for (std::uint64_t r : {3, 5, 7, 11, 13})
    for (std::uint64_t n = 1; n <= 40; ++n) {
      if (n % r == 0) continue;
      unsigned ord = 1;
      for (std::uint64_t x = r % n; x != 1 % n; x = x * r % n) ++ord;
      if (checked_pow(r, ord, field_bound()) == 0) {
        EXPECT_THROW(make_coeff_field(r, n), PreconditionError) << r << " " << n;
        continue;
      }
      const CoeffField c = make_coeff_field(r, n);
      ASSERT_EQ(c.field->units() % n, 0U);
      ASSERT_EQ(oracle::NaiveField::like(c.field).element_order(c.zeta), n);
      // k is minimal
      for (unsigned k = 1; k < c.degree(); ++k) ASSERT_NE((checked_pow(r, k, 1ULL << 40) - 1) % n, 0U);
    }
}

TEST(Character, EvalExamples) {
  const Field f5 = construct_field(5, 1);
  const CoeffField cf = make_coeff_field(13, 4);
  const Character chi = make_character(f5, cf, 1);
  EXPECT_EQ(chi(FieldElement(f5, 2)).code(), cf.zeta);
  EXPECT_EQ(chi(FieldElement::zero(f5)).code(), 0U);
  const Character tr = make_character(f5, cf, 0);
  EXPECT_TRUE(tr.is_trivial());
  for (std::uint32_t x = 1; x < 5; ++x) EXPECT_EQ(tr(FieldElement(f5, x)).code(), 1U);
  EXPECT_THROW(chi(FieldElement(construct_field(7, 1), 1)), PreconditionError);
  EXPECT_EQ(chi.order(), 4U);
  EXPECT_EQ(make_character(f5, cf, 2).order(), 2U);
}

TEST(Character, MultiplicativeExhaustive) {
  for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49})
    for (std::uint64_t r : {3, 5, 7}) {
      const Field f = field_of_order(q);
      if (f->p() == r) continue;
      // (27, 7) needs GF(7^12), past the field bound
      if (q == 27 && r == 7) continue;
      const CoeffField cf = coeff_field_for(f, r);
      for (const auto& chi : all_characters(f, cf)) {
        const FieldSpec& k = *cf.field;
        ASSERT_EQ(chi.eval_code(1), 1U);
        ASSERT_EQ(chi.is_trivial(), chi.a == 0);
        for (std::uint32_t x = 1; x < f->order(); ++x) {
          ASSERT_EQ(chi.eval_code(x), naive_eval(chi, x));
          for (std::uint32_t y = 1; y < f->order(); ++y)
            ASSERT_EQ(chi.eval_code(f->mul(x, y)), k.mul(chi.eval_code(x), chi.eval_code(y)));
        }
      }
    }
}

TEST(Orthogonality, Examples) {
  const Field f5 = construct_field(5, 1);
  const CoeffField cf = make_coeff_field(13, 4);
  const auto chars = all_characters(f5, cf);
  EXPECT_EQ(orthogonality_sum(chars[1], chars[1]).code(), 4U);
  EXPECT_EQ(orthogonality_sum(chars[1], chars[2]).code(), 0U);
  // sum of a nontrivial character over the units
  EXPECT_EQ(orthogonality_sum(chars[3], chars[0]).code(), 0U);
  EXPECT_THROW(orthogonality_sum(chars[1], make_character(construct_field(7, 1), make_coeff_field(13, 6), 1)),
               PreconditionError);
}

TEST(TranslateSum, Examples) {
  const Field f = construct_field(5, 1);
  const CoeffField cf = make_coeff_field(13, 4);
  const Character lam = make_character(f, cf, 1);
  const FieldElement one = cf.from_int(1);
  const FieldElement u(f, 3);
  EXPECT_EQ(translate_sum(lam, {{one, u}}, -u).code(), 0U);
  EXPECT_EQ(translate_sum(lam, {{one, u}}, FieldElement::zero(f)), lam(u));
  EXPECT_THROW(translate_sum(lam, {{one, u}, {one, u}}, u), PreconditionError);
  EXPECT_THROW(translate_sum(lam, {{one, FieldElement::zero(f)}}, u), PreconditionError);
  EXPECT_THROW(translate_sum(lam, {{cf.from_int(0), u}}, u), PreconditionError);

  // F_7 into F_13, order-6 lambda, pairs (1,1), (1,2) at x = 3: lambda(4) + lambda(5)
  const Field f7 = construct_field(7, 1);
  const CoeffField c13 = make_coeff_field(13, 6);
  const Character l6 = make_character(f7, c13, 1);
  const FieldElement o = c13.from_int(1);
  const auto s = translate_sum(l6, {{o, FieldElement(f7, 1)}, {o, FieldElement(f7, 2)}}, FieldElement(f7, 3));
  EXPECT_EQ(s.code(), c13.field->add(naive_eval(l6, 4), naive_eval(l6, 5)));
}

TEST(ExtendCharacter, RestrictsToOriginal) {
  for (auto [p, m, l, r] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned, std::uint64_t>>{
           {3, 1, 2, 5}, {3, 1, 2, 7}, {3, 1, 4, 5}, {2, 2, 4, 3}, {5, 1, 2, 3}, {5, 1, 2, 13}, {7, 1, 2, 3},
           {2, 1, 6, 7}, {13, 1, 2, 7}, {3, 2, 4, 7}}) {
    const Field f = construct_field(p, m);
    const CoeffField cf = coeff_field_for(f, r);
    for (const auto& chi : all_characters(f, cf)) {
      const Character ext = extend_character(chi, l);
      const Embedding dom(chi.domain, ext.domain);
      const Embedding coef = coefficient_embedding(chi, ext);
      for (std::uint32_t x = 1; x < f->order(); ++x)
        ASSERT_EQ(ext.eval_code(dom(x)), coef(chi.eval_code(x))) << p << "^" << m << "->" << l << " a=" << chi.a;
      ASSERT_EQ(ext.is_trivial(), chi.is_trivial());
      // smallest nonnegative admissible exponent
      for (std::uint64_t a = 0; a < ext.a; ++a) {
        const Character other = make_character(ext.domain, ext.target, a);
        bool agrees = true;
        for (std::uint32_t x = 1; x < f->order() && agrees; ++x)
          agrees = other.eval_code(dom(x)) == coef(chi.eval_code(x));
        ASSERT_FALSE(agrees);
      }
    }
  }
  // degree 2 does not divide 3
  const Field f9 = construct_field(3, 2);
  EXPECT_THROW(extend_character(make_character(f9, coeff_field_for(f9, 5), 1), 3), PreconditionError);
}

TEST(TranslateMatrix, Examples) {
  const Field f = construct_field(5, 1);
  const CoeffField cf = make_coeff_field(13, 4);
  const Character psi = make_character(f, cf, 1);
  const auto t = translate_matrix_rank(psi, {FieldElement(f, 1), FieldElement(f, 2)});
  EXPECT_EQ(t.rank, 2U);
  EXPECT_EQ(t.matrix.rows, 5U);
  oracle::Mat m;
  for (std::size_t x = 0; x < 5; ++x) m.push_back({t.matrix.at(x, 0), t.matrix.at(x, 1)});
  EXPECT_EQ(oracle::rank(*cf.field, m), 2U);
  EXPECT_EQ(translate_matrix_rank(psi, {FieldElement(f, 4)}).rank, 1U);
  EXPECT_THROW(translate_matrix_rank(psi, {FieldElement(f, 1), FieldElement(f, 1)}), PreconditionError);
  // trivial psi is accepted; its translates (indicator of x != -u) still have full rank here
  EXPECT_NO_THROW(translate_matrix_rank(make_character(f, cf, 0), {FieldElement(f, 1), FieldElement(f, 2)}));
}

TEST(TranslateMatrix, FullRankForNontrivialPsi) {
  for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13})
    for (std::uint64_t r : {3, 5, 7, 11, 13}) {
      const Field f = field_of_order(q);
      if (f->p() == r) continue;
      const CoeffField cf = coeff_field_for(f, r);
      Rng rng(q * 100 + r);
      for (const auto& psi : all_characters(f, cf)) {
        if (psi.is_trivial()) continue;
        for (int trial = 0; trial < 10; ++trial) {
          const std::size_t n = 1 + rng.below(std::min<std::uint64_t>(5, q - 1));
          std::set<std::uint32_t> pick;
          while (pick.size() < n) pick.insert(static_cast<std::uint32_t>(1 + rng.below(q - 1)));
          std::vector<FieldElement> u;
          oracle::Mat rows(q);
          for (auto c : pick) u.emplace_back(f, c);
          const auto t = translate_matrix_rank(psi, u);
          for (std::uint32_t x = 0; x < q; ++x)
            for (auto c : pick) rows[x].push_back(naive_eval(psi, f->add(x, c)));
          ASSERT_EQ(oracle::rank(*cf.field, rows), n);
          ASSERT_EQ(t.rank, n);
        }
      }
    }
}

TEST(Counterexample, Family) {
  const auto fam = counterexample_family(3, 1);
  EXPECT_EQ(fam.field->order(), 9U);
  EXPECT_EQ(fam.u.size(), 3U);
  const FieldSpec& f = *fam.field;
  EXPECT_EQ(fam.u[0], 1U);
  EXPECT_EQ(fam.u[1], f.generator());
  EXPECT_EQ(fam.u[2], f.sub(f.neg(1), f.generator()));
  for (std::uint64_t p : {3, 5, 7}) {
    const auto c = counterexample_family(p, 1);
    std::set<std::uint32_t> distinct(c.u.begin(), c.u.end());
    EXPECT_EQ(distinct.size(), p);
    EXPECT_EQ(distinct.count(0), 0U);
    std::uint32_t s = 0;
    for (auto ui : c.u) s = c.field->add(s, c.field->pow(ui, static_cast<std::int64_t>(p)));
    EXPECT_EQ(s, 0U);
    for (std::uint32_t x = 0; x < c.field->order(); ++x) ASSERT_EQ(c.column_sum(x), 0U);
    EXPECT_LT(rank(c.value_matrix()), c.q);
    EXPECT_TRUE(nonvanishing_census(c.field, [&](std::uint32_t x) { return c.column_sum(x); }).empty());
  }
  EXPECT_THROW(counterexample_family(2, 1), PreconditionError);
  EXPECT_EQ(counterexample_family(2, 2).u.size(), 4U);
}

TEST(Eq31, Examples) {
  const Field f5 = construct_field(5, 1);
  const CoeffField cf = make_coeff_field(13, 4);
  const Character lam = make_character(f5, cf, 1);
  const FieldElement a = cf.from_int(7);
  const auto single = eq31_check(lam, {{a, FieldElement(f5, 2)}}, 0);
  EXPECT_EQ(single.lhs, single.rhs);
  EXPECT_EQ(single.lhs, cf.from_int(4) * a);

  const auto two = eq31_check(lam, {{cf.from_int(3), FieldElement(f5, 1)}, {cf.from_int(5), FieldElement(f5, 4)}}, 1);
  EXPECT_EQ(two.lhs, two.rhs);

  const Field f7 = construct_field(7, 1);
  const CoeffField c13 = make_coeff_field(13, 6);
  const Character l7 = make_character(f7, c13, 5);
  const auto three = eq31_check(
      l7, {{c13.from_int(1), FieldElement(f7, 1)}, {c13.from_int(2), FieldElement(f7, 3)}, {c13.from_int(9), FieldElement(f7, 6)}},
      2);
  EXPECT_EQ(three.lhs, three.rhs);
  EXPECT_THROW(eq31_check(make_character(f5, cf, 0), {{a, FieldElement(f5, 2)}}, 0), PreconditionError);
  EXPECT_THROW(eq31_check(lam, {{a, FieldElement(f5, 2)}}, 1), PreconditionError);
}

TEST(Census, Examples) {
  const Field f3 = construct_field(3, 1);
  const CoeffField cf = coeff_field_for(f3, 5);
  const Character lam = make_character(f3, cf, 1);
  const FieldElement u(f3, 1);
  for (unsigned l : {1U, 2U, 4U}) {
    const auto z = nonvanishing_census(lam, {{cf.from_int(1), u}}, l);
    const Field big = construct_field(3, l);
    EXPECT_EQ(z.size(), big->units());
    const std::uint32_t minus_u = big->neg(Embedding(f3, big)(u.code()));
    EXPECT_EQ(std::count(z.begin(), z.end(), minus_u), 0);
  }
}

TEST(GeometricSum, VanishesOnTheSubfield) {
  const Field f3 = construct_field(3, 1);
  const CoeffField cf = coeff_field_for(f3, 5);
  const Character ext = extend_character(make_character(f3, cf, 1), 2);
  const Embedding e(f3, ext.domain);
  for (std::uint32_t x = 0; x < 3; ++x)
    EXPECT_TRUE(partial_geometric_sum(ext, 1, FieldElement(ext.domain, e(x))).is_zero());
  EXPECT_THROW(partial_geometric_sum(ext, 1, FieldElement(f3, 1)), PreconditionError);
}

TEST(SetX, Examples) {
  const auto a = set_X(3, 5, 8);
  EXPECT_EQ(a.d, 4U);
  EXPECT_EQ(a.members, (std::vector<std::uint64_t>{1, 2, 3, 5, 6, 7}));
  EXPECT_TRUE(a.matches_prediction);
  EXPECT_TRUE(a.witness_ok);
  const auto b = set_X(2, 3, 20);
  EXPECT_EQ(b.d, 2U);
  for (auto m : b.members) EXPECT_EQ(m % 2, 1U);
  EXPECT_EQ(b.members.size(), 10U);
  EXPECT_THROW(set_X(11, 5, 10), PreconditionError);
  EXPECT_THROW(set_X(5, 5, 10), PreconditionError);
}

}  // namespace
