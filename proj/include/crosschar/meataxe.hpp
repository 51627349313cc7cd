#pragma once

// Irreducibility testing for matrix representations over a finite field:
// Norton's criterion on seeded random algebra elements, with an exhaustive
// fallback for small modules, and a recursive composition-factor chop.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crosschar/linalg.hpp"
#include "crosschar/rep.hpp"
#include "crosschar/rng.hpp"
#include "crosschar/spin.hpp"

namespace crosschar {

enum class Verdict { Simple, NotSimple, Undecided };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Simple: return "SIMPLE";
    case Verdict::NotSimple: return "NOT_SIMPLE";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

struct SimplicityReport {
  Verdict verdict = Verdict::Undecided;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string method;
  std::optional<EchelonBasis> witness;  // proper nonzero submodule when NOT_SIMPLE
};

struct MeatAxeOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 200;
  std::uint64_t brute_bound = 1U << 20;
  std::size_t max_null_points = 64;  // largest projective nullspace tested vector by vector
};

namespace detail {

/// |F|^dim if at most `bound`, else 0.
inline std::uint64_t space_size(std::uint64_t f, std::size_t dim, std::uint64_t bound) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (s > bound / f) return 0;
    s *= f;
  }
  return s;
}

/// Projective points of span(basis): one normalized vector per line.
inline std::vector<Vec> projective_points(const FieldSpec& f, const std::vector<Vec>& basis) {
  const std::size_t k = basis.size();
  std::vector<Vec> out;
  // coordinate tuples whose first nonzero entry is 1
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<std::uint32_t> tail(k - lead - 1, 0);
    while (true) {
      Vec v = basis[lead];
      for (std::size_t i = 0; i < tail.size(); ++i) axpy(f, v, tail[i], basis[lead + 1 + i]);
      out.push_back(std::move(v));
      std::size_t i = 0;
      while (i < tail.size() && ++tail[i] == f.order()) tail[i++] = 0;
      if (i == tail.size()) break;
    }
  }
  return out;
}

/// Submodule of V annihilated by a stable subspace S of the dual.
inline EchelonBasis annihilator(const Field& f, std::size_t dim, const EchelonBasis& s) {
  Matrix m(f, s.size(), dim);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = s.rows()[i][j];
  EchelonBasis w(f, dim);
  for (auto& v : nullspace(m)) w.add(std::move(v));
  return w;
}

}  // namespace detail

/// Exhaustive test: simple iff every nonzero vector spins to the whole space.
inline SimplicityReport brute_force_is_simple(const Rep& rep, std::uint64_t bound = 1U << 20) {
  require(rep.dim >= 1, "is_simple: module has dimension 0");
  require(detail::space_size(rep.field->order(), rep.dim, bound) != 0,
          "brute_force_is_simple: |F|^dim exceeds the bound");
  SimplicityReport out;
  out.method = "brute-force";
  std::vector<Vec> unit;
  for (std::size_t i = 0; i < rep.dim; ++i) {
    Vec e(rep.dim, 0);
    e[i] = 1;
    unit.push_back(std::move(e));
  }
  for (const auto& v : detail::projective_points(*rep.field, unit)) {
    ++out.samples;
    auto s = spin(rep, {v}, false);
    if (s.dim() < rep.dim) {
      out.verdict = Verdict::NotSimple;
      out.witness = std::move(s.basis);
      return out;
    }
  }
  out.verdict = Verdict::Simple;
  return out;
}

/// Norton's criterion on random elements of the algebra spanned by words in the generators.
inline SimplicityReport is_simple(const Rep& rep, const MeatAxeOptions& opt = {}) {
  require(rep.dim >= 1, "is_simple: module has dimension 0");
  SimplicityReport out;
  out.seed = opt.seed;
  out.method = "norton";
  if (rep.dim == 1) {
    out.verdict = Verdict::Simple;
    out.method = "dimension-1";
    return out;
  }
  const Field& field = rep.field;
  const FieldSpec& f = *field;
  const std::size_t n = rep.dim;
  const Rep dual = rep.transpose();
  std::vector<Matrix> words = rep.dense();
  const std::size_t ngens = words.size();
  Rng rng(opt.seed, {0x6d65617461ULL, n});

  for (std::size_t sample = 0; sample < opt.budget; ++sample) {
    out.samples = sample + 1;
    if (words.size() < ngens + 24) words.push_back(words[rng.below(words.size())] * words[rng.below(words.size())]);
    Matrix a(field, n, n);
    for (const auto& w : words) a = a + w.scaled(static_cast<std::uint32_t>(rng.below(f.order())));
    for (const auto& [c, mult] : poly_roots(f, charpoly(a))) {
      (void)mult;
      const Matrix shifted = a - Matrix::identity(field, n).scaled(c);
      const auto kernel = nullspace(shifted);
      if (detail::space_size(f.order(), kernel.size(), opt.max_null_points * (f.order() - 1) + 1) == 0) continue;
      // every nullspace line must spin to V
      for (const auto& v : detail::projective_points(f, kernel)) {
        auto s = spin(rep, {v}, false);
        if (s.dim() < n) {
          out.verdict = Verdict::NotSimple;
          out.witness = std::move(s.basis);
          return out;
        }
      }
      // one vector of the transposed nullspace decides the dual side
      const auto co_kernel = nullspace(shifted.transpose());
      auto s = spin(dual, {co_kernel.front()}, false);
      if (s.dim() == n) {
        out.verdict = Verdict::Simple;
        return out;
      }
      out.verdict = Verdict::NotSimple;
      out.witness = detail::annihilator(field, n, s.basis);
      return out;
    }
  }
  out.verdict = Verdict::Undecided;
  if (detail::space_size(f.order(), n, opt.brute_bound) != 0) {
    auto brute = brute_force_is_simple(rep, opt.brute_bound);
    brute.seed = opt.seed;
    brute.samples += out.samples;
    brute.method = "norton+brute-force";
    return brute;
  }
  return out;
}

struct ChopResult {
  std::vector<std::size_t> factors;  // ascending
  bool decided = true;
};

/// Composition-factor dimensions by recursive splitting along submodule witnesses.
inline ChopResult chop(const Rep& rep, const MeatAxeOptions& opt = {}) {
  ChopResult out;
  if (rep.dim == 0) return out;
  const auto rep_out = is_simple(rep, opt);
  if (rep_out.verdict == Verdict::Simple) {
    out.factors.push_back(rep.dim);
    return out;
  }
  if (rep_out.verdict == Verdict::Undecided) {
    out.factors.push_back(rep.dim);
    out.decided = false;
    return out;
  }
  const EchelonBasis& w = *rep_out.witness;
  for (const Rep& part : {subrep(rep, w), quotient_rep(rep, w)}) {
    auto sub = chop(part, opt);
    out.decided = out.decided && sub.decided;
    out.factors.insert(out.factors.end(), sub.factors.begin(), sub.factors.end());
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

}  // namespace crosschar
