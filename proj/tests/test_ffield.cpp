#include <gtest/gtest.h>

#include <random>

#include "crosschar/ffield.hpp"
#include "support/oracles.hpp"

using namespace crosschar;

namespace {

const std::vector<std::pair<std::uint64_t, unsigned>> kFields{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {5, 1},
                                                              {5, 2}, {7, 1}, {7, 2}, {11, 1}, {13, 1}, {13, 2}, {2, 8}};

TEST(Field, SmallExamples) {
  const Field f3 = construct_field(3, 1);
  EXPECT_EQ(f3->modulus(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(f3->generator(), 2U);

  const Field f9 = construct_field(3, 2);
  EXPECT_EQ(f9->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));

  const Field f5 = construct_field(5, 1);
  EXPECT_EQ(f5->generator(), 2U);
  EXPECT_EQ(f5->inv(2), 3U);
  EXPECT_EQ(dlog(FieldElement(f5, 4)), 2U);
  EXPECT_EQ(dlog(FieldElement::one(f5)), 0U);
  EXPECT_EQ(dlog(FieldElement::generator(f5)), 1U);

  // t * t = -1 in F_3[t]/(t^2 + 1); t has code 3
  EXPECT_EQ(f9->mul(3, 3), 2U);
}

TEST(Field, ModulusIsSmallestIrreducible) {
  for (auto [p, m] : kFields) {
    const Field f = construct_field(p, m);
    oracle::Poly mod(f->modulus().begin(), f->modulus().end());
    ASSERT_TRUE(oracle::irreducible(mod, p)) << p << "^" << m;
    // no monic polynomial with a smaller coefficient code is irreducible
    const oracle::NaiveField nf{p, m, mod};
    for (std::uint64_t c = 0; c < nf.code(oracle::Poly(mod.begin(), mod.end() - 1)); ++c) {
      oracle::Poly g = nf.poly(c);
      g.resize(m, 0);
      g.push_back(1);
      EXPECT_FALSE(oracle::irreducible(g, p)) << p << "^" << m << " code " << c;
    }
  }
}

// c is compatible when g_d^k -> c^{stride k} is additive for every proper subfield GF(p^d)
bool compatible_with_subfields(const Field& f, std::uint32_t c) {
  const auto nf = oracle::NaiveField::like(f);
  for (unsigned d = 1; d < f->degree(); ++d) {
    if (f->degree() % d != 0) continue;
    const Field sub = construct_field(f->p(), d);
    const auto ns = oracle::NaiveField::like(sub);
    const std::uint64_t stride = f->units() / sub->units();
    std::vector<std::uint64_t> image(sub->order(), 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < sub->units(); ++k, x = ns.mul(x, sub->generator())) image[x] = nf.pow(c, stride * k);
    for (std::uint64_t a = 0; a < sub->order(); ++a)
      for (std::uint64_t b = 0; b < sub->order(); ++b)
        if (image[ns.add(a, b)] != nf.add(image[a], image[b])) return false;
  }
  return true;
}

TEST(Field, GeneratorHasFullOrder) {
  for (auto [p, m] : kFields) {
    const Field f = construct_field(p, m);
    const auto nf = oracle::NaiveField::like(f);
    EXPECT_EQ(nf.element_order(f->generator()), f->units()) << p << "^" << m;
    EXPECT_EQ(f->pow(f->generator(), f->units()), 1U);
    // every smaller full-order element fails to be compatible with some subfield generator
    for (std::uint32_t c = 1; c < f->generator(); ++c)
      if (nf.element_order(c) == f->units()) EXPECT_FALSE(compatible_with_subfields(f, c)) << p << "^" << m << " " << c;
    EXPECT_TRUE(compatible_with_subfields(f, f->generator()));
  }
}

TEST(Field, ArithmeticMatchesSchoolbook) {
  for (auto [p, m] : kFields) {
    const Field f = construct_field(p, m);
    const auto nf = oracle::NaiveField::like(f);
    const std::uint32_t q = f->order();
    if (q <= 49) {
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          ASSERT_EQ(f->add(a, b), nf.add(a, b));
          ASSERT_EQ(f->mul(a, b), nf.mul(a, b));
        }
    }
    std::mt19937_64 rng(p * 1000 + m);
    for (int i = 0; i < 1000; ++i) {
      const std::uint32_t a = rng() % q, b = rng() % q, c = rng() % q;
      ASSERT_EQ(f->add(a, b), nf.add(a, b));
      ASSERT_EQ(f->mul(a, b), nf.mul(a, b));
      ASSERT_EQ(f->neg(a), nf.neg(a));
      ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
      ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      ASSERT_EQ(f->mul(a, b), f->mul(b, a));
      ASSERT_EQ(f->add(a, b), f->add(b, a));
      if (a != 0) {
        ASSERT_EQ(f->mul(a, f->inv(a)), 1U);
        if (q <= 256) ASSERT_EQ(f->inv(a), nf.inv(a));
      }
    }
  }
}

TEST(Field, PowAndLog) {
  for (auto [p, m] : kFields) {
    const Field f = construct_field(p, m);
    for (std::uint32_t x = 1; x < f->order(); ++x) {
      ASSERT_EQ(f->exp(f->log(x)), x);
      ASSERT_EQ(f->pow(x, -1), f->inv(x));
      ASSERT_EQ(f->pow(x, 0), 1U);
    }
    EXPECT_EQ(f->pow(0, 0), 1U);
    EXPECT_EQ(f->pow(0, 3), 0U);
    EXPECT_THROW(f->pow(0, -1), PreconditionError);
    EXPECT_THROW(f->inv(0), PreconditionError);
    EXPECT_THROW(f->log(0), PreconditionError);
  }
}

TEST(Field, FrobeniusFixesExactlyThePrimeField) {
  for (auto [p, m] : kFields) {
    const Field f = construct_field(p, m);
    std::vector<bool> hit(f->order(), false);
    std::size_t fixed = 0;
    for (std::uint32_t x = 0; x < f->order(); ++x) {
      const std::uint32_t y = f->pow(x, p);
      hit[y] = true;
      if (y == x) {
        ++fixed;
        EXPECT_LT(x, p) << "fixed point outside the prime field";
      }
    }
    EXPECT_EQ(fixed, p);
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
}

TEST(Field, ElementsRejectMixing) {
  const Field a = construct_field(5, 1), b = construct_field(7, 1);
  EXPECT_THROW(FieldElement(a, 1) + FieldElement(b, 1), PreconditionError);
  EXPECT_THROW(FieldElement(a, 5), PreconditionError);
  EXPECT_THROW(FieldElement(a, 0).inv(), PreconditionError);
  EXPECT_EQ((FieldElement(a, 2) / FieldElement(a, 3)).code(), 4U);
}

TEST(Field, Preconditions) {
  EXPECT_THROW(construct_field(4, 1), PreconditionError);
  EXPECT_THROW(construct_field(2, 40), PreconditionError);
  EXPECT_THROW(construct_field(3, 0), PreconditionError);
  EXPECT_THROW(field_of_order(6), PreconditionError);
  EXPECT_EQ(field_of_order(25)->degree(), 2U);
}

TEST(Field, SpecLineRoundTrip) {
  const Field f = construct_field(3, 2);
  EXPECT_EQ(f->spec_line(), "3 2 1 0 1");
  const Field g = parse_field_spec("3 2 2 2 1");  // t^2 + 2t + 2, also irreducible over F_3
  EXPECT_EQ(g->modulus(), (std::vector<std::uint32_t>{2, 2, 1}));
  EXPECT_THROW(parse_field_spec("3 2 0 0 1"), PreconditionError);  // t^2 is reducible
  EXPECT_THROW(parse_field_spec("3 2 1"), PreconditionError);
}

TEST(Embed, GeneratorRuleAndHomomorphism) {
  const Field f3 = construct_field(3, 1), f9 = construct_field(3, 2);
  EXPECT_EQ(embed(FieldElement(f3, 2), f9).code(), f9->exp(4));
  EXPECT_EQ(embed(FieldElement::one(f3), f9).code(), 1U);
  EXPECT_THROW(embed(FieldElement(construct_field(2, 2), 1), construct_field(2, 3)), PreconditionError);

  for (auto [p, m, l] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {2, 1, 4}, {2, 2, 4}, {2, 2, 6}, {3, 1, 2}, {3, 2, 4}, {5, 1, 2}, {7, 1, 2}, {13, 1, 2}}) {
    const Field small = construct_field(p, m), big = construct_field(p, l);
    const Embedding e(small, big);
    std::mt19937_64 rng(l);
    for (int i = 0; i < 100; ++i) {
      const std::uint32_t x = rng() % small->order(), y = rng() % small->order();
      ASSERT_EQ(e(small->mul(x, y)), big->mul(e(x), e(y)));
      ASSERT_EQ(e(small->add(x, y)), big->add(e(x), e(y)));
    }
    std::vector<bool> seen(big->order(), false);
    for (std::uint32_t x = 0; x < small->order(); ++x) {
      ASSERT_FALSE(seen[e(x)]) << "embedding not injective";
      seen[e(x)] = true;
      std::uint32_t back = 0;
      ASSERT_TRUE(e.restrict(e(x), back));
      ASSERT_EQ(back, x);
    }
  }
}

TEST(Embed, Transitive) {
  for (auto [p, m, l, l2] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned, unsigned>>{
           {2, 1, 2, 4}, {2, 2, 4, 8}, {3, 1, 2, 4}, {2, 1, 3, 6}, {5, 1, 2, 4}}) {
    const Field a = construct_field(p, m), b = construct_field(p, l), c = construct_field(p, l2);
    const Embedding ab(a, b), bc(b, c), ac(a, c);
    for (std::uint32_t x = 0; x < a->order(); ++x) ASSERT_EQ(bc(ab(x)), ac(x));
  }
}

TEST(SqrtExt, Examples) {
  const Field f5 = construct_field(5, 1);
  const FieldElement r = sqrt_ext(FieldElement(f5, 4));
  const Field f25 = r.owner();
  EXPECT_EQ(f25->order(), 25U);
  EXPECT_EQ(r, embed(FieldElement(f5, 2), f25));
  EXPECT_EQ(sqrt_ext(FieldElement::one(f5)).code(), 1U);
  EXPECT_THROW(sqrt_ext(FieldElement::zero(f5)), PreconditionError);

  for (std::uint64_t q : {3, 4, 5, 7, 8, 9, 13}) {
    const Field f = field_of_order(q);
    for (std::uint32_t c = 1; c < f->order(); ++c) {
      const FieldElement y = sqrt_ext(FieldElement(f, c));
      ASSERT_EQ(y * y, embed(FieldElement(f, c), y.owner())) << "q=" << q << " c=" << c;
      // the other root -y never has a smaller discrete log
      if (y.owner()->p() != 2) ASSERT_LE(dlog(y), dlog(-y));
    }
  }
}

TEST(NumberTheory, RpartDecompose) {
  EXPECT_EQ(rpart_decompose(6, 3), (std::pair<std::uint64_t, std::uint64_t>{3, 2}));
  EXPECT_EQ(rpart_decompose(12, 3), (std::pair<std::uint64_t, std::uint64_t>{3, 4}));
  EXPECT_EQ(rpart_decompose(4, 3), (std::pair<std::uint64_t, std::uint64_t>{1, 4}));
  for (std::uint64_t r : {2, 3, 5, 7})
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      const auto [m, l] = rpart_decompose(n, r);
      ASSERT_EQ(m * l, n);
      ASSERT_NE(l % r, 0U);
      std::uint64_t t = m;
      while (t % r == 0) t /= r;
      ASSERT_EQ(t, 1U);
    }
}

TEST(NumberTheory, Basics) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(multiplicative_order(7 % 4, 4), 2U);
  EXPECT_EQ(multiplicative_order(13 % 4, 4), 1U);
  EXPECT_EQ(powmod(3, 4, 5), 1U);
  EXPECT_EQ(checked_pow(2, 21, 1U << 20), 0U);
  std::int64_t x = 0;
  ASSERT_TRUE(solve_linear_congruence(4, 4, 8, x));
  EXPECT_EQ(x, 1);
  EXPECT_FALSE(solve_linear_congruence(4, 2, 8, x));
}

}  // namespace
