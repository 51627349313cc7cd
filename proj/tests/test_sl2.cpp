#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "crosschar/probes.hpp"
#include "crosschar/sl2.hpp"
#include "support/oracles.hpp"

using namespace crosschar;

namespace {

const std::vector<std::uint64_t> kLevels{2, 3, 4, 5, 7, 8, 9};

TEST(SL2, GeneratorExamples) {
  const Field f = field_of_order(7);
  EXPECT_EQ(mk_s(f) * mk_s(f), mk_h(f, f->neg(1)));
  for (std::uint32_t x = 0; x < 7; ++x)
    for (std::uint32_t y = 0; y < 7; ++y) EXPECT_EQ(mk_eps(f, x) * mk_eps(f, y), mk_eps(f, f->add(x, y)));
  for (std::uint32_t c = 1; c < 7; ++c)
    for (std::uint32_t d = 1; d < 7; ++d) EXPECT_EQ(mk_h(f, c) * mk_h(f, d), mk_h(f, f->mul(c, d)));
  EXPECT_THROW(mk_h(f, 0), PreconditionError);
  EXPECT_THROW(make_element(f, 1, 1, 1, 1), PreconditionError);
  EXPECT_THROW(mk_s(f) * mk_s(field_of_order(5)), PreconditionError);
}

TEST(SL2, SimpleRoot) {
  const Field f = field_of_order(7);
  EXPECT_EQ(simple_root_alpha(mk_h(f, 1)).code(), 1U);
  EXPECT_EQ(simple_root_alpha(mk_h(f, 6)).code(), 1U);
  EXPECT_EQ(f->generator(), 3U);
  EXPECT_EQ(simple_root_alpha(mk_h(f, 3)).code(), 2U);
  EXPECT_THROW(simple_root_alpha(mk_s(f)), PreconditionError);
}

TEST(SL2, PaperIdentitiesAllLevels) {
  for (std::uint64_t q : {3, 4, 5, 7, 8, 9, 11, 13}) {
    const Field f = field_of_order(q);
    const GroupElement s = mk_s(f);
    for (std::uint32_t x = 1; x < q; ++x) {
      for (std::uint32_t c = 1; c < q; ++c)
        ASSERT_EQ(mk_h(f, c) * mk_eps(f, x) * invert(mk_h(f, c)), mk_eps(f, f->mul(f->mul(c, c), x)));
      const std::uint32_t m = f->neg(f->inv(x));
      ASSERT_EQ(s * mk_eps(f, x) * s, mk_eps(f, m) * s * mk_h(f, f->neg(x)) * mk_eps(f, m)) << "q=" << q;
    }
  }
}

TEST(SL2, MultiplyMatchesOracleAndIsAssociative) {
  for (std::uint64_t q : kLevels) {
    const Field f = field_of_order(q);
    Rng rng(q);
    for (int i = 0; i < 10000; ++i) {
      const GroupElement a = random_group_element(f, rng), b = random_group_element(f, rng),
                         c = random_group_element(f, rng);
      ASSERT_EQ(a.det(), 1U);
      ASSERT_EQ(a * b, oracle::mul(a, b));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * invert(a), identity(f));
    }
  }
}

TEST(Bruhat, ExamplesAndRoundTrip) {
  const Field f = field_of_order(5);
  EXPECT_EQ(bruhat(identity(f)), BruhatForm(BorelForm{0, 1}));
  EXPECT_EQ(bruhat(mk_s(f)), BruhatForm(BigCellForm{0, 1, 0}));
  for (std::uint64_t q : kLevels) {
    const Field g = field_of_order(q);
    const GroupTable t = enumerate_group(g);
    std::size_t borel = 0;
    for (const auto& e : t.elements()) {
      const BruhatForm form = bruhat(e);
      ASSERT_EQ(assemble(g, form), e);
      borel += std::holds_alternative<BorelForm>(form);
      ASSERT_EQ(std::holds_alternative<BorelForm>(form), e.c == 0);
    }
    EXPECT_EQ(borel, q * (q - 1));
    // every big-cell parameter triple is hit once
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t c = 1; c < q; ++c)
        for (std::uint32_t y = 0; y < q; ++y) {
          const GroupElement e = mk_eps(g, x) * mk_s(g) * mk_h(g, c) * mk_eps(g, y);
          ASSERT_EQ(bruhat(e), BruhatForm(BigCellForm{x, c, y}));
          seen.insert({e.a, e.b, e.c * q + e.d});
        }
    EXPECT_EQ(seen.size(), q * q * (q - 1));
  }
}

TEST(GroupTable, Orders) {
  EXPECT_EQ(enumerate_group(field_of_order(3)).size(), 24U);
  const GroupTable g5 = enumerate_group(field_of_order(5));
  EXPECT_EQ(g5.size(), 120U);
  EXPECT_EQ(g5.subgroup(Subgroup::N).size(), 8U);
  EXPECT_EQ(enumerate_group(field_of_order(9)).size(), 720U);
  EXPECT_THROW(enumerate_group(field_of_order(128)), PreconditionError);
  for (std::uint64_t q : kLevels) {
    const GroupTable t = enumerate_group(field_of_order(q));
    EXPECT_EQ(t.size(), q * (q * q - 1));
    EXPECT_EQ(t.subgroup(Subgroup::T).size(), q - 1);
    EXPECT_EQ(t.subgroup(Subgroup::U).size(), q);
    EXPECT_EQ(t.subgroup(Subgroup::B).size(), q * (q - 1));
    EXPECT_EQ(t.subgroup(Subgroup::N).size(), 2 * (q - 1));
    for (std::uint32_t i = 0; i < t.size(); ++i) ASSERT_EQ(t.index_of(t[i]), i);
  }
}

TEST(GroupTable, CosetTables) {
  for (std::uint64_t q : {3, 4, 5, 7, 9}) {
    const GroupTable t = enumerate_group(field_of_order(q));
    for (auto [h, count] : std::vector<std::pair<Subgroup, std::size_t>>{
             {Subgroup::T, q * (q + 1)}, {Subgroup::B, q + 1}, {Subgroup::N, q * (q + 1) / 2}}) {
      const CosetTable c = t.coset_table(h);
      ASSERT_EQ(c.size(), count) << subgroup_name(h) << " q=" << q;
      const std::size_t hsize = t.subgroup(h).size();
      for (std::size_t k = 0; k < c.size(); ++k) {
        ASSERT_EQ(c.members[k].size(), hsize);
        ASSERT_EQ(*std::min_element(c.members[k].begin(), c.members[k].end()), c.reps[k]);
      }
      for (std::uint32_t g = 0; g < t.size(); ++g) {
        ASSERT_EQ(t[c.reps[c.coset_of[g]]] * t[c.part[g]], t[g]);
        ASSERT_TRUE(in_subgroup(t[c.part[g]], h));
        if (h == Subgroup::N) ASSERT_EQ(c.w_part_is_s[g], !in_torus(t[c.part[g]]));
      }
    }
    // eps(x) T and eps(x) s T lie in one N-coset
    const CosetTable n = t.coset_table(Subgroup::N);
    const Field& f = t.field();
    for (std::uint32_t x = 0; x < q; ++x)
      ASSERT_EQ(n.coset_of[t.index_of(mk_eps(f, x))], n.coset_of[t.index_of(mk_eps(f, x) * mk_s(f))]);
  }
  const GroupTable t3 = enumerate_group(field_of_order(3));
  EXPECT_THROW(t3.coset_table(Subgroup::U), PreconditionError);
  std::ostringstream os;
  dump_coset_table(os, t3.coset_table(Subgroup::B));
  const std::string dump = os.str();
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), 4);
}

}  // namespace
