#pragma once

// Sweeps over the character identities, each emitting one CharsRecord per check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crosschar/chars.hpp"
#include "crosschar/report.hpp"
#include "crosschar/rng.hpp"

namespace crosschar {

namespace detail {

inline CharsRecord chars_record(std::string name, const Field& domain, std::uint64_t r, unsigned k) {
  CharsRecord c;
  c.experiment = std::move(name);
  c.p = domain->p();
  c.m = domain->degree();
  c.r = r;
  c.k = k;
  return c;
}

/// n distinct nonzero codes of f, uniformly at random.
inline std::vector<std::uint32_t> random_shifts(const FieldSpec& f, std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t x = 1; x < f.order(); ++x) pool.push_back(x);
  for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(n);
  return pool;
}

inline std::vector<FieldElement> elements(const Field& f, const std::vector<std::uint32_t>& codes) {
  std::vector<FieldElement> out;
  for (auto c : codes) out.emplace_back(f, c);
  return out;
}

inline json codes_json(const Field& f, const std::vector<std::uint32_t>& codes) {
  json out = json::array();
  for (auto c : codes) out.push_back(f->format(c));
  return out;
}

}  // namespace detail

/// sum_z phi(z) psi(1/z) = (q - 1) delta for every pair of characters with values in GF(r^k).
inline Report orthogonality_experiment(std::uint64_t p, unsigned m, std::uint64_t r) {
  const Field f = construct_field(p, m);
  const CoeffField cf = coeff_field_for(f, r);
  const auto chars = all_characters(f, cf);
  Report out;
  for (const auto& phi : chars) {
    for (const auto& psi : chars) {
      auto rec = detail::chars_record("orthogonality", f, r, cf.degree());
      const FieldElement sum = orthogonality_sum(phi, psi);
      const FieldElement expect = phi.a == psi.a ? cf.from_int(f->units()) : FieldElement::zero(cf.field);
      rec.params = json{{"N", cf.order}, {"phi", phi.a}, {"psi", psi.a}};
      rec.lhs = sum.str();
      rec.rhs = expect.str();
      rec.pass = sum == expect;
      out.add(rec);
    }
  }
  return out;
}

struct TranslateRankOptions {
  std::size_t exhaustive_max = 3;       // all subsets up to this size when q <= exhaustive_field_max
  std::uint64_t exhaustive_field_max = 13;
  std::size_t random_trials = 0;        // random subsets with sizes in [random_min, random_max]
  std::size_t random_min = 4, random_max = 6;
  std::uint64_t seed = 1;
};

/// rank (psi(x + u_i)) = n for every nontrivial psi; one record per (psi, subset family).
inline Report translate_rank_experiment(std::uint64_t p, unsigned m, std::uint64_t r,
                                        const TranslateRankOptions& opt = {}) {
  const Field f = construct_field(p, m);
  const CoeffField cf = coeff_field_for(f, r);
  const std::uint32_t q = f->order();
  Report out;
  std::vector<std::vector<std::uint32_t>> subsets[8];
  const std::size_t emax = std::min<std::size_t>(opt.exhaustive_max, std::min<std::size_t>(7, q - 1));
  if (q <= opt.exhaustive_field_max) {
    // lexicographic enumeration of k-subsets of {1, ..., q-1}
    for (std::size_t n = 1; n <= emax; ++n) {
      std::vector<std::uint32_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i + 1);
      while (true) {
        subsets[n].push_back(idx);
        std::size_t i = n;
        while (i > 0 && idx[i - 1] == q - 1 - (n - i)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> random_sets;
  if (opt.random_trials > 0) {
    Rng rng(opt.seed, {0x7472ULL, p, m, r});
    const std::size_t hi = std::min<std::size_t>(opt.random_max, q - 1);
    require(opt.random_min <= hi, "translate-rank: random subset sizes exceed q - 1");
    for (std::size_t t = 0; t < opt.random_trials; ++t)
      random_sets.push_back(detail::random_shifts(*f, rng.between(opt.random_min, hi), rng));
  }
  for (std::uint64_t a = 1; a < cf.order; ++a) {
    const Character psi = make_character(f, cf, a);
    for (std::size_t n = 1; n <= emax; ++n) {
      if (subsets[n].empty()) continue;
      std::size_t full = 0;
      for (const auto& u : subsets[n]) full += translate_matrix_rank(psi, detail::elements(f, u)).rank == n;
      auto rec = detail::chars_record("translate-rank", f, r, cf.degree());
      rec.params = json{{"psi", a}, {"n", n}, {"mode", "exhaustive"}, {"subsets", subsets[n].size()}};
      rec.lhs = std::to_string(full);
      rec.rhs = std::to_string(subsets[n].size());
      rec.pass = full == subsets[n].size();
      out.add(rec);
    }
    if (!random_sets.empty()) {
      std::size_t full = 0;
      for (const auto& u : random_sets) full += translate_matrix_rank(psi, detail::elements(f, u)).rank == u.size();
      auto rec = detail::chars_record("translate-rank", f, r, cf.degree());
      rec.params = json{{"psi", a},
                        {"n", json::array({opt.random_min, std::min<std::size_t>(opt.random_max, q - 1)})},
                        {"mode", "random"},
                        {"subsets", random_sets.size()},
                        {"seed", opt.seed}};
      rec.lhs = std::to_string(full);
      rec.rhs = std::to_string(random_sets.size());
      rec.pass = full == random_sets.size();
      out.add(rec);
    }
  }
  // the trivial character carries no independence claim; its rank is only recorded
  const std::size_t n0 = std::min<std::size_t>(3, q - 1);
  std::vector<std::uint32_t> first(n0);
  for (std::size_t i = 0; i < n0; ++i) first[i] = static_cast<std::uint32_t>(i + 1);
  auto rec = detail::chars_record("translate-rank", f, r, cf.degree());
  rec.params = json{{"psi", 0}, {"n", n0}, {"mode", "trivial"}, {"u", detail::codes_json(f, first)}};
  rec.lhs = std::to_string(translate_matrix_rank(make_character(f, cf, 0), detail::elements(f, first)).rank);
  rec.rhs = std::to_string(n0);
  rec.observational = true;
  out.add(rec);
  return out;
}

/// The characteristic-p family: zero column sums, rank at most q - 1, empty census.
inline Report counterexample_experiment(std::uint64_t p, unsigned j) {
  const CounterexampleFamily fam = counterexample_family(p, j);
  const Field& f = fam.field;
  const FieldSpec& F = *f;
  const json params{{"q", fam.q}, {"j", j}, {"level", F.degree()}, {"u", detail::codes_json(f, fam.u)}};
  Report out;

  std::uint32_t power_sum = 0;
  for (auto u : fam.u) power_sum = F.add(power_sum, fam.psi(u));
  std::vector<std::uint32_t> sorted = fam.u;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted.front() != 0;
  auto fam_rec = detail::chars_record("counterexample.family", f, p, F.degree());
  fam_rec.params = params;
  fam_rec.lhs = F.format(power_sum);
  fam_rec.rhs = "0";
  fam_rec.pass = power_sum == 0 && distinct && fam.u.size() == fam.q;
  out.add(fam_rec);

  std::size_t nonzero = 0;
  for (std::uint32_t x = 0; x < F.order(); ++x) nonzero += fam.column_sum(x) != 0;
  auto col = detail::chars_record("counterexample.column-sum", f, p, F.degree());
  col.params = params;
  col.lhs = std::to_string(nonzero);
  col.rhs = "0";
  col.pass = nonzero == 0;
  out.add(col);

  const std::size_t rk = rank(fam.value_matrix());
  auto rank_rec = detail::chars_record("counterexample.rank", f, p, F.degree());
  rank_rec.params = params;
  rank_rec.lhs = std::to_string(rk);
  rank_rec.rhs = "<= " + std::to_string(fam.q - 1);
  rank_rec.pass = rk <= fam.q - 1;
  out.add(rank_rec);

  const auto census = nonvanishing_census(f, [&](std::uint32_t x) { return fam.column_sum(x); });
  auto cen = detail::chars_record("counterexample.census", f, p, F.degree());
  cen.params = params;
  cen.lhs = std::to_string(census.size());
  cen.rhs = "0";
  cen.pass = census.empty();
  out.add(cen);
  return out;
}

/// Random instances of sum_{x != -u_k} S(x) lambda(1/(x + u_k)) = p^m a_k - sum_i a_i.
/// r cycles through `rs` unless a single prime is given.
inline Report eq31_experiment(std::uint64_t p, unsigned m, const std::vector<std::uint64_t>& rs, std::uint64_t seed,
                              std::size_t trials) {
  const Field f = construct_field(p, m);
  std::vector<std::uint64_t> usable;
  for (auto r : rs)
    if (r != p && rprime_part(f->units(), r) > 1) usable.push_back(r);
  require(!usable.empty(), "eq31: no coefficient prime carries a nontrivial character");
  Rng rng(seed, {0x6571ULL, p, m});
  Report out;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t r = usable[t % usable.size()];
    const CoeffField cf = coeff_field_for(f, r);
    const Character lambda = make_character(f, cf, rng.between(1, cf.order - 1));
    const std::size_t n = rng.between(1, std::min<std::uint64_t>(4, f->units()));
    const auto u = detail::random_shifts(*f, n, rng);
    std::vector<TranslatePair> pairs;
    json pj = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElement a(cf.field, static_cast<std::uint32_t>(rng.between(1, cf.field->units())));
      pairs.push_back({a, {f, u[i]}});
      pj.push_back(json::array({a.str(), f->format(u[i])}));
    }
    const std::size_t k = rng.below(n);
    const Eq31Sides sides = eq31_check(lambda, pairs, k);
    auto rec = detail::chars_record("eq31", f, r, cf.degree());
    rec.params = json{{"trial", t}, {"lambda", lambda.a}, {"pairs", pj}, {"k", k}, {"seed", seed}};
    rec.lhs = sides.lhs.str();
    rec.rhs = sides.rhs.str();
    rec.pass = sides.lhs == sides.rhs;
    out.add(rec);
  }
  return out;
}

inline Report set_x_experiment(std::uint64_t p, std::uint64_t r, std::uint64_t bound) {
  const SetXResult res = set_X(p, r, bound);
  std::vector<std::uint64_t> predicted;
  for (std::uint64_t m = 1; m <= bound; ++m)
    if (m % res.d != 0) predicted.push_back(m);
  Report out;
  CharsRecord members;
  members.experiment = "set-x";
  members.p = p;
  members.r = r;
  members.params = json{{"bound", bound}, {"d", res.d}};
  members.lhs = json(res.members).dump();
  members.rhs = json(predicted).dump();
  members.pass = res.matches_prediction;
  out.add(members);
  CharsRecord wit = members;
  wit.experiment = "set-x.witness";
  wit.params = json{{"bound", bound}, {"d", res.d}, {"m", res.witness.first}, {"2m", res.witness.second}};
  wit.lhs = std::to_string(powmod(p, res.witness.first, r));
  wit.rhs = std::to_string(powmod(p, res.witness.second, r));
  wit.pass = res.witness_ok;
  out.add(wit);
  return out;
}

/// Census of S != 0 along the levels m, 2m, 3m, 4m that fit the field bound, an engineered
/// vanishing point, and the partial sums R_m at level 2m.
inline Report census_experiment(std::uint64_t p, unsigned m, std::uint64_t r, std::uint64_t seed) {
  const Field f = construct_field(p, m);
  const CoeffField cf = coeff_field_for(f, r);
  require(cf.order > 1, "census: no nontrivial character of F_q^* in characteristic r");
  const Character lambda = make_character(f, cf, 1);
  Rng rng(seed, {0x6365ULL, p, m, r});
  const std::size_t n = rng.between(1, std::min<std::uint64_t>(3, f->units()));
  const auto u = detail::random_shifts(*f, n, rng);
  std::vector<TranslatePair> pairs;
  json pj = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const FieldElement a(cf.field, static_cast<std::uint32_t>(rng.between(1, cf.field->units())));
    pairs.push_back({a, {f, u[i]}});
    pj.push_back(json::array({a.str(), f->format(u[i])}));
  }
  Report out;
  std::vector<std::size_t> sizes;
  json levels = json::array();
  for (unsigned l = m; l <= 4 * m; l += m) {
    std::vector<std::uint32_t> z;
    try {
      z = nonvanishing_census(lambda, pairs, l);
    } catch (const PreconditionError&) {
      continue;  // extension leaves the field bound
    }
    auto rec = detail::chars_record("census", f, r, cf.degree());
    rec.params = json{{"lambda", lambda.a}, {"pairs", pj}, {"level", l}};
    rec.lhs = std::to_string(z.size());
    rec.rhs = "> 0";
    rec.pass = !z.empty();
    out.add(rec);
    sizes.push_back(z.size());
    levels.push_back(l);
  }
  auto mono = detail::chars_record("census.monotone", f, r, cf.degree());
  mono.params = json{{"levels", levels}};
  mono.lhs = json(sizes).dump();
  mono.rhs = "nondecreasing";
  mono.pass = !sizes.empty() && std::is_sorted(sizes.begin(), sizes.end());
  out.add(mono);

  // two terms tuned to cancel at x0 = 0: a_2 = -a_1 lambda(u_1) / lambda(u_2)
  if (f->units() >= 2) {
    const FieldSpec& K = *cf.field;
    const auto v = detail::random_shifts(*f, 2, rng);
    const std::uint32_t a1 = 1;
    const std::uint32_t a2 = K.neg(K.div(lambda.eval_code(v[0]), lambda.eval_code(v[1])));
    const std::vector<TranslatePair> tuned{{{cf.field, a1}, {f, v[0]}}, {{cf.field, a2}, {f, v[1]}}};
    const auto z = nonvanishing_census(lambda, tuned, m);
    auto rec = detail::chars_record("census.engineered", f, r, cf.degree());
    rec.params = json{{"lambda", lambda.a},
                      {"pairs", json::array({json::array({K.format(a1), f->format(v[0])}),
                                             json::array({K.format(a2), f->format(v[1])})})},
                      {"x0", "0"}};
    rec.lhs = std::binary_search(z.begin(), z.end(), 0U) ? "0 in Z" : "0 not in Z";
    rec.rhs = "0 not in Z";
    rec.pass = !std::binary_search(z.begin(), z.end(), 0U);
    out.add(rec);
  }

  // R_m(x) = sum_{z in F_{p^m}} lambda(x + z) at level 2m
  std::optional<Character> ext;
  try {
    ext = extend_character(lambda, 2 * m);
  } catch (const PreconditionError&) {
  }
  if (ext) {
    const Embedding emb(f, ext->domain);
    std::size_t zero = 0;
    for (std::uint32_t x = 0; x < f->order(); ++x)
      zero += partial_geometric_sum(*ext, m, {ext->domain, emb(x)}).is_zero();
    auto rec = detail::chars_record("geometric-sum.subfield", f, r, ext->target.degree());
    rec.params = json{{"level", 2 * m}, {"lambda", ext->a}};
    rec.lhs = std::to_string(zero);
    rec.rhs = std::to_string(f->order());
    rec.pass = zero == f->order();
    out.add(rec);
    // outside the subfield: value recorded next to lambda(x)
    std::size_t shown = 0;
    for (std::uint32_t x = 1; x < ext->domain->order() && shown < 3; ++x) {
      std::uint32_t below = 0;
      if (emb.restrict(x, below)) continue;
      const FieldElement xe(ext->domain, x);
      auto obs = detail::chars_record("geometric-sum.outside", f, r, ext->target.degree());
      obs.params = json{{"level", 2 * m}, {"lambda", ext->a}, {"x", ext->domain->format(x)}};
      obs.lhs = partial_geometric_sum(*ext, m, xe).str();
      obs.rhs = (*ext)(xe).str();
      obs.observational = true;
      out.add(obs);
      ++shown;
    }
  }
  return out;
}

}  // namespace crosschar
