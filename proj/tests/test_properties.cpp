#include <gtest/gtest.h>

#include <map>

#include "crosschar/crosschar.hpp"
#include "support/oracles.hpp"

using namespace crosschar;

namespace {

// whether the coefficient field for a level-q^2 domain fits the field bound
bool lifted_fits(std::uint64_t q, std::uint64_t r) {
  const std::uint64_t n = rprime_part(q * q - 1, r);
  unsigned ord = 1;
  for (std::uint64_t x = r % n; x != 1 % n; x = x * r % n) ++ord;
  return checked_pow(r, ord, field_bound()) != 0;
}

using BlockMultiset = std::map<std::pair<std::uint32_t, std::size_t>, std::size_t>;

BlockMultiset multiset_of(const JordanReport& rep) {
  BlockMultiset out;
  for (const auto& b : rep.blocks) out[{b.eigenvalue, b.size}] += b.multiplicity;
  return out;
}

TEST(Property, OrthogonalityAllPairs) {
  for (std::uint64_t q : {4, 5, 7, 9, 13, 25})
    for (std::uint64_t r : {3, 5, 7, 11, 13}) {
      const Field f = field_of_order(q);
      if (f->p() == r) continue;
      const CoeffField cf = coeff_field_for(f, r);
      const auto chars = all_characters(f, cf);
      const FieldSpec& k = *cf.field;
      for (const auto& phi : chars)
        for (const auto& psi : chars) {
          const std::uint32_t want = phi == psi ? k.from_int(static_cast<std::int64_t>(q - 1)) : 0;
          ASSERT_EQ(orthogonality_sum(phi, psi).code(), want) << q << " " << r << " " << phi.a << " " << psi.a;
        }
    }
}

TEST(Property, Eq31RandomInstances) {
  for (std::uint64_t q : {5, 7, 9, 13})
    for (std::uint64_t r : {3, 5, 7, 11, 13}) {
      const Field f = field_of_order(q);
      if (f->p() == r) continue;
      const CoeffField cf = coeff_field_for(f, r);
      if (cf.order == 1) continue;
      Rng rng(q, {r});
      for (int t = 0; t < 20; ++t) {
        const Character lam = make_character(f, cf, 1 + rng.below(cf.order - 1));
        const std::size_t n = 1 + rng.below(std::min<std::uint64_t>(4, q - 1));
        std::vector<TranslatePair> pairs;
        for (auto u : detail::random_shifts(*f, n, rng))
          pairs.push_back({FieldElement(cf.field, static_cast<std::uint32_t>(1 + rng.below(cf.field->units()))),
                           FieldElement(f, u)});
        for (std::size_t k = 0; k < n; ++k) {
          const auto s = eq31_check(lam, pairs, k);
          ASSERT_EQ(s.lhs, s.rhs);
        }
      }
    }
}

TEST(Property, CensusIsMonotoneAlongTowers) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 5}, {3, 5}, {3, 13}, {5, 13}}) {
    const Field f = construct_field(p, 1);
    const CoeffField cf = coeff_field_for(f, r);
    Rng rng(p * r);
    const Character lam = make_character(f, cf, cf.order > 1 ? 1 : 0);
    std::vector<TranslatePair> pairs;
    for (auto u : detail::random_shifts(*f, std::min<std::size_t>(2, p - 1), rng))
      pairs.push_back({cf.from_int(1), FieldElement(f, u)});
    std::size_t prev = 0;
    for (unsigned l : {1U, 2U, 4U}) {
      const auto z = nonvanishing_census(lam, pairs, l);
      ASSERT_GE(z.size(), prev);
      ASSERT_FALSE(z.empty());
      prev = z.size();
    }
  }
}

TEST(Property, JordanMatchesPredictedMultiset) {
  for (std::uint64_t q : {3, 4, 5, 7, 8, 9, 11, 13})
    for (std::uint64_t r : {3, 5, 7, 11, 13}) {
      if (r == field_of_order(q)->p() || !lifted_fits(q, r)) continue;
      const LiftedTorus lt = lifted_torus(q, r, std::nullopt);
      const VOperator op = torus_operator_on_V(lt);
      ASSERT_TRUE(op.stable);
      const JordanReport rep = jordan_form(op.A);
      ASSERT_TRUE(rep.verified);
      ASSERT_EQ(op.A * rep.P, rep.P * rep.J);
      const FieldSpec& k = *op.A.field;
      const auto [m, l] = rpart_decompose(q - 1, r);
      BlockMultiset want;
      want[{1, 1}] += 2;
      for (auto lambda : roots_of_unity(k, l)) want[{lambda, m}] += 1;
      EXPECT_EQ(multiset_of(rep), want) << "q=" << q << " r=" << r;
      EXPECT_EQ(rep.diagonalizable(), m == 1) << "q=" << q << " r=" << r;
      // minimal polynomial t^{q-1} - 1
      FPoly mp(q, 0);
      mp[0] = k.neg(1);
      mp[q - 1] = 1;
      EXPECT_EQ(rep.minpoly, mp) << "q=" << q << " r=" << r;
    }
}

TEST(Property, JordanThetaShift) {
  for (auto [q, r, a] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{
           {7, 3, 1}, {5, 13, 1}, {5, 7, 1}, {9, 5, 1}, {13, 3, 1}, {7, 5, 2}}) {
    const LiftedTorus lt = lifted_torus(q, r, a);
    const VOperator op = torus_operator_on_V(lt);
    ASSERT_TRUE(op.stable);
    const JordanReport rep = jordan_form(op.A);
    ASSERT_TRUE(rep.verified);
    const FieldSpec& k = *op.A.field;
    const std::uint32_t kappa = op.kappa, kinv = k.inv(op.kappa);
    EXPECT_NE(kappa, kinv) << "q=" << q << " r=" << r << " a=" << a;
    const auto [m, l] = rpart_decompose(q - 1, r);
    BlockMultiset want;
    want[{kappa, 1}] += 1;
    want[{kinv, 1}] += 1;
    for (auto lambda : roots_of_unity(k, l)) want[{k.mul(kappa, lambda), m}] += 1;
    EXPECT_EQ(multiset_of(rep), want) << "q=" << q << " r=" << r << " a=" << a;
  }
}

TEST(Property, DecompositionGrid) {
  for (std::uint64_t q : {3, 5, 7})
    for (std::uint64_t r : {5, 7, 11, 13})
      if (r != field_of_order(q)->p()) EXPECT_TRUE(decomposition_check(q, r).passed()) << q << " " << r;
}

TEST(Property, PhiMapsSurjective) {
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 5}, {4, 3}, {5, 7}, {7, 5}}) {
    const Field f = field_of_order(q);
    const CoeffField cf = coeff_field_for(f, r);
    for (const auto& theta : all_characters(f, cf)) {
      const PhiMaps pm = phi_maps(theta);
      EXPECT_EQ(rank(pm.phi_e), q + 1);
      EXPECT_EQ(rank(pm.phi_s), q + 1);
    }
  }
}

TEST(Property, SimpleVerdictsOnChopPieces) {
  // every factor chop reports is simple according to the exhaustive oracle
  for (auto [q, r, order] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{
           {3, 2, 1}, {4, 3, 1}, {4, 5, 3}, {5, 2, 1}, {5, 3, 4}, {5, 7, 2}, {7, 2, 3}}) {
    const ModulePtr m = principal_series(q, r, order, 1, true);
    const Rep rep = m->rep();
    const auto verdict = is_simple(rep);
    ASSERT_NE(verdict.verdict, Verdict::Undecided);
    if (verdict.verdict == Verdict::NotSimple) {
      const EchelonBasis& w = *verdict.witness;
      for (const Rep& part : {subrep(rep, w), quotient_rep(rep, w)}) {
        const std::size_t dim = oracle::spin_dim(part, {Vec(part.dim, 1)});
        EXPECT_LE(dim, part.dim);
        if (part.dim <= 4) EXPECT_EQ(is_simple(part).verdict == Verdict::Simple, oracle::brute_simple(part));
      }
    }
  }
}

}  // namespace
