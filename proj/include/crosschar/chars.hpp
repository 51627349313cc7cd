#pragma once

// Multiplicative characters of GF(p^m)^* valued in a finite coefficient field
// GF(r^k), and the character-sum identities built on them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crosschar/ffield.hpp"
#include "crosschar/linalg.hpp"

namespace crosschar {

/// GF(r^k) together with a primitive N-th root of unity zeta = g^{(r^k-1)/N}.
struct CoeffField {
  Field field;
  std::uint64_t order = 1;     // N
  std::uint32_t zeta = 1;      // code of zeta
  std::uint64_t zeta_log = 0;  // dlog of zeta

  std::uint64_t characteristic() const { return field->p(); }
  unsigned degree() const { return field->degree(); }
  FieldElement element(std::uint32_t code) const { return {field, code}; }
  FieldElement from_int(std::int64_t v) const { return FieldElement::from_int(field, v); }
};

/// Smallest GF(r^k) containing the N-th roots of unity (k = ord_N(r)).
inline CoeffField make_coeff_field(std::uint64_t r, std::uint64_t N) {
  require(is_prime(r), "coefficient characteristic r = " + std::to_string(r) + " is not prime");
  require(N >= 1, "root-of-unity order must be >= 1");
  require(N % r != 0, "r = " + std::to_string(r) + " divides N = " + std::to_string(N));
  const auto k = static_cast<unsigned>(multiplicative_order(r % N, N));
  CoeffField cf;
  cf.field = construct_field(r, k == 0 ? 1 : k);
  cf.order = N;
  cf.zeta_log = cf.field->units() / N;
  cf.zeta = cf.field->exp(cf.zeta_log);
  return cf;
}

/// Coefficient field carrying every character of `domain`^* in characteristic r,
/// i.e. roots of unity of order the r'-part of |domain^*|.
inline CoeffField coeff_field_for(const Field& domain, std::uint64_t r) {
  require(r != domain->p(), "coefficient characteristic must differ from p");
  return make_coeff_field(r, rprime_part(domain->units(), r));
}

/// chi(w^j) = zeta^{a j} for the generator w of the domain; chi(0) = 0.
struct Character {
  Field domain;
  CoeffField target;
  std::uint64_t a = 0;

  std::uint64_t group_order() const { return target.order; }
  bool is_trivial() const { return a % target.order == 0; }
  /// Order of chi as an element of the character group.
  std::uint64_t order() const { return target.order / gcd(a % target.order, target.order); }

  std::uint32_t eval_code(std::uint32_t x) const {
    if (x == 0) return 0;
    const std::uint64_t j = domain->log(x);
    const std::uint64_t e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a % target.order) * j % target.order);
    return target.field->exp(target.zeta_log * e);
  }
  FieldElement operator()(const FieldElement& x) const {
    require(x.owner().get() == domain.get(), "character evaluated outside its domain");
    return {target.field, eval_code(x.code())};
  }
  /// The inverse character x -> chi(x^{-1}).
  Character inverse() const { return {domain, target, (target.order - a % target.order) % target.order}; }
  friend bool operator==(const Character& x, const Character& y) {
    return x.domain.get() == y.domain.get() && x.target.field.get() == y.target.field.get() &&
           x.target.order == y.target.order && x.a % x.target.order == y.a % y.target.order;
  }
};

inline Character make_character(const Field& domain, const CoeffField& target, std::uint64_t a) {
  require(domain->units() % target.order == 0, "coefficient roots of unity do not match the domain");
  return {domain, target, a % target.order};
}

inline FieldElement eval(const Character& chi, const FieldElement& x) { return chi(x); }

/// All characters of the domain with values in the given coefficient field.
inline std::vector<Character> all_characters(const Field& domain, const CoeffField& target) {
  std::vector<Character> out;
  for (std::uint64_t a = 0; a < target.order; ++a) out.push_back(make_character(domain, target, a));
  return out;
}

/// Sum over z in F^* of phi(z) psi(z^{-1}).
inline FieldElement orthogonality_sum(const Character& phi, const Character& psi) {
  require(phi.domain.get() == psi.domain.get(), "orthogonality_sum: domain mismatch");
  require(phi.target.field.get() == psi.target.field.get() && phi.target.order == psi.target.order,
          "orthogonality_sum: target mismatch");
  const FieldSpec& dom = *phi.domain;
  const FieldSpec& k = *phi.target.field;
  std::uint32_t s = 0;
  for (std::uint32_t z = 1; z < dom.order(); ++z) s = k.add(s, k.mul(phi.eval_code(z), psi.eval_code(dom.inv(z))));
  return {phi.target.field, s};
}

/// One term a * lambda(x + u) of a translate sum.
struct TranslatePair {
  FieldElement a;  // coefficient field
  FieldElement u;  // character domain
};

inline void validate_pairs(const Character& lambda, const std::vector<TranslatePair>& pairs) {
  std::set<std::uint32_t> seen;
  for (const auto& [a, u] : pairs) {
    require(a.owner().get() == lambda.target.field.get(), "translate pair coefficient outside the coefficient field");
    require(u.owner().get() == lambda.domain.get(), "translate pair shift outside the character domain");
    require(!a.is_zero(), "translate pair coefficient must be nonzero");
    require(!u.is_zero(), "translate pair shift must be nonzero");
    require(seen.insert(u.code()).second, "translate pair shifts must be distinct");
  }
}

/// S(x) = sum_i a_i lambda(x + u_i).
inline FieldElement translate_sum(const Character& lambda, const std::vector<TranslatePair>& pairs,
                                  const FieldElement& x) {
  validate_pairs(lambda, pairs);
  require(x.owner().get() == lambda.domain.get(), "translate_sum: x outside the domain");
  const FieldSpec& dom = *lambda.domain;
  const FieldSpec& k = *lambda.target.field;
  std::uint32_t s = 0;
  for (const auto& [a, u] : pairs) s = k.add(s, k.mul(a.code(), lambda.eval_code(dom.add(x.code(), u.code()))));
  return {lambda.target.field, s};
}

/// Extension of chi from GF(p^m) to GF(p^l) restricting to chi along the fixed embeddings
/// of the domain and of the coefficient field; smallest admissible exponent.
inline Character extend_character(const Character& chi, unsigned l) {
  const unsigned m = chi.domain->degree();
  require(l >= 1 && l % m == 0, "extend_character: m does not divide l");
  const Field big = construct_field(chi.domain->p(), l);
  const std::uint64_t r = chi.target.characteristic();
  const CoeffField target = make_coeff_field(r, rprime_part(big->units(), r));
  require(target.degree() % chi.target.degree() == 0, "extend_character: coefficient fields not nested");
  const Embedding iota(chi.target.field, target.field);
  const std::uint64_t zeta_img_log = target.field->log(iota(chi.target.zeta));
  require(zeta_img_log % target.zeta_log == 0, "extend_character: zeta image outside <zeta'>");
  const std::uint64_t c = zeta_img_log / target.zeta_log;
  const std::uint64_t stride = big->units() / chi.domain->units();
  std::int64_t a_new = 0;
  const bool ok = solve_linear_congruence(static_cast<std::int64_t>(stride % target.order),
                                          static_cast<std::int64_t>(mulmod(chi.a, c, target.order)),
                                          static_cast<std::int64_t>(target.order), a_new);
  require(ok, "extend_character: no compatible exponent (unreachable when preconditions hold)");
  return make_character(big, target, static_cast<std::uint64_t>(a_new));
}

/// The coefficient-field embedding used by extend_character.
inline Embedding coefficient_embedding(const Character& from, const Character& to) {
  return Embedding(from.target.field, to.target.field);
}

/// x in the domain of the extension with S(x) != 0, ascending by element code.
inline std::vector<std::uint32_t> nonvanishing_census(const Character& lambda, const std::vector<TranslatePair>& pairs,
                                                      unsigned l) {
  validate_pairs(lambda, pairs);
  const Character ext = extend_character(lambda, l);
  const Embedding dom_emb(lambda.domain, ext.domain);
  const Embedding coef_emb(lambda.target.field, ext.target.field);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  for (const auto& [a, u] : pairs) terms.emplace_back(coef_emb(a.code()), dom_emb(u.code()));
  const FieldSpec& dom = *ext.domain;
  const FieldSpec& k = *ext.target.field;
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < dom.order(); ++x) {
    std::uint32_t s = 0;
    for (const auto& [a, u] : terms) s = k.add(s, k.mul(a, ext.eval_code(dom.add(x, u))));
    if (s != 0) out.push_back(x);
  }
  return out;
}

/// Census for an arbitrary value map on a field (used for characteristic-p valued maps).
inline std::vector<std::uint32_t> nonvanishing_census(const Field& level,
                                                      const std::function<std::uint32_t(std::uint32_t)>& value) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < level->order(); ++x)
    if (value(x) != 0) out.push_back(x);
  return out;
}

/// The matrix (psi(x + u_i))_{x, i} over the coefficient field, rows in element-code order.
struct TranslateMatrix {
  Matrix matrix;
  std::size_t rank = 0;
};

inline TranslateMatrix translate_matrix_rank(const Character& psi, const std::vector<FieldElement>& u) {
  std::set<std::uint32_t> seen;
  for (const auto& x : u) {
    require(x.owner().get() == psi.domain.get(), "translate_matrix_rank: shift outside domain");
    require(!x.is_zero(), "translate_matrix_rank: shifts must be nonzero");
    require(seen.insert(x.code()).second, "translate_matrix_rank: duplicate shift");
  }
  const FieldSpec& dom = *psi.domain;
  TranslateMatrix out{Matrix(psi.target.field, dom.order(), u.size()), 0};
  for (std::uint32_t x = 0; x < dom.order(); ++x)
    for (std::size_t i = 0; i < u.size(); ++i) out.matrix.at(x, i) = psi.eval_code(dom.add(x, u[i].code()));
  out.rank = rank(out.matrix);
  return out;
}

/// Distinct nonzero u_1..u_q (q = p^j) with sum u_i^q = 0, and psi(x) = x^q.
struct CounterexampleFamily {
  Field field;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> u;

  std::uint32_t psi(std::uint32_t x) const { return field->pow(x, static_cast<std::int64_t>(q)); }
  /// The q x |F| value matrix (psi(x + u_i)) over the field itself.
  Matrix value_matrix() const {
    Matrix m(field, field->order(), u.size());
    for (std::uint32_t x = 0; x < field->order(); ++x)
      for (std::size_t i = 0; i < u.size(); ++i) m.at(x, i) = psi(field->add(x, u[i]));
    return m;
  }
  /// sum_i psi(x + u_i).
  std::uint32_t column_sum(std::uint32_t x) const {
    std::uint32_t s = 0;
    for (auto ui : u) s = field->add(s, psi(field->add(x, ui)));
    return s;
  }
};

inline CounterexampleFamily counterexample_family(std::uint64_t p, unsigned j) {
  require(is_prime(p), "counterexample_family: p not prime");
  require(j >= 1, "counterexample_family: j must be >= 1");
  const std::uint64_t q = checked_pow(p, j, field_bound());
  require(q != 0, "counterexample_family: p^j exceeds bound");
  require(q >= 3, "counterexample_family: q = 2 admits no family (u1^2 + u2^2 = (u1 + u2)^2 != 0)");
  for (unsigned level = j + 1;; ++level) {
    const Field f = construct_field(p, level);
    // sum u_i^q = (sum u_i)^q, so it suffices that the u_i sum to zero.
    std::vector<std::uint32_t> u;
    std::uint32_t s = 0;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      const std::uint32_t g = f->exp(i);
      u.push_back(g);
      s = f->add(s, g);
    }
    const std::uint32_t last = f->neg(s);
    if (last != 0 && std::find(u.begin(), u.end(), last) == u.end()) {
      u.push_back(last);
      return {f, q, u};
    }
  }
}

/// Both sides of sum_{x != -u_k} S(x) lambda((x + u_k)^{-1}) = p^m a_k - sum_i a_i.
struct Eq31Sides {
  FieldElement lhs;
  FieldElement rhs;
};

inline Eq31Sides eq31_check(const Character& lambda, const std::vector<TranslatePair>& pairs, std::size_t k) {
  validate_pairs(lambda, pairs);
  require(!lambda.is_trivial(), "eq31_check: lambda must be nontrivial");
  require(k < pairs.size(), "eq31_check: index out of range");
  const FieldSpec& dom = *lambda.domain;
  const FieldSpec& kf = *lambda.target.field;
  const std::uint32_t uk = pairs[k].u.code();
  std::uint32_t lhs = 0;
  for (std::uint32_t x = 0; x < dom.order(); ++x) {
    const std::uint32_t shifted = dom.add(x, uk);
    if (shifted == 0) continue;
    std::uint32_t s = 0;
    for (const auto& [a, u] : pairs) s = kf.add(s, kf.mul(a.code(), lambda.eval_code(dom.add(x, u.code()))));
    lhs = kf.add(lhs, kf.mul(s, lambda.eval_code(dom.inv(shifted))));
  }
  std::uint32_t rhs = kf.mul(kf.from_int(static_cast<std::int64_t>(dom.order() % kf.p())), pairs[k].a.code());
  for (const auto& pr : pairs) rhs = kf.sub(rhs, pr.a.code());
  return {{lambda.target.field, lhs}, {lambda.target.field, rhs}};
}

/// R_m(x) = sum_{z in GF(p^m)} lambda(x + z) for lambda defined on GF(p^l), m | l.
inline FieldElement partial_geometric_sum(const Character& lambda, unsigned m, const FieldElement& x) {
  require(x.owner().get() == lambda.domain.get(), "partial_geometric_sum: x not at lambda's level");
  require(m >= 1 && lambda.domain->degree() % m == 0, "partial_geometric_sum: m does not divide the level");
  const Field sub = construct_field(lambda.domain->p(), m);
  const Embedding emb(sub, lambda.domain);
  const FieldSpec& dom = *lambda.domain;
  const FieldSpec& k = *lambda.target.field;
  std::uint32_t s = 0;
  for (std::uint32_t z = 0; z < sub->order(); ++z) s = k.add(s, lambda.eval_code(dom.add(x.code(), emb(z))));
  return {lambda.target.field, s};
}

/// X = {m <= bound : r does not divide p^m - 1} against the prediction {m : d does not divide m}.
struct SetXResult {
  std::vector<std::uint64_t> members;
  std::uint64_t d = 0;  // order of p mod r
  bool matches_prediction = false;
  std::pair<std::uint64_t, std::uint64_t> witness{0, 0};  // (m, 2m) with p^m != p^{2m} mod r
  bool witness_ok = false;
};

inline SetXResult set_X(std::uint64_t p, std::uint64_t r, std::uint64_t bound) {
  require(is_prime(p) && is_prime(r), "set_X: p and r must be prime");
  require(p != r, "set_X: p must differ from r");
  require(p % r != 1, "set_X: p = 1 (mod r) violates the premise");
  SetXResult out;
  out.d = multiplicative_order(p % r, r);
  std::vector<std::uint64_t> predicted;
  for (std::uint64_t m = 1; m <= bound; ++m) {
    if (powmod(p, m, r) != 1) out.members.push_back(m);
    if (m % out.d != 0) predicted.push_back(m);
  }
  out.matches_prediction = out.members == predicted;
  if (!out.members.empty()) {
    const std::uint64_t m = out.members.front();
    out.witness = {m, 2 * m};
    out.witness_ok = powmod(p, m, r) != powmod(p, 2 * m, r);
  }
  return out;
}

}  // namespace crosschar
