#pragma once

// SL2(F_q) as explicit matrices, Bruhat normal forms, full enumeration and
// brute-force coset tables for the subgroups T, U, B, N.

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "crosschar/ffield.hpp"

namespace crosschar {

/// ((a, b), (c, d)) with ad - bc = 1, entries as field codes.
struct GroupElement {
  Field field;
  std::uint32_t a = 1, b = 0, c = 0, d = 1;

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.field.get() == y.field.get() && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }

  std::uint32_t det() const { return field->sub(field->mul(a, d), field->mul(b, c)); }
  std::uint64_t key() const {
    const std::uint64_t q = field->order();
    return ((static_cast<std::uint64_t>(a) * q + b) * q + c) * q + d;
  }
  std::string str() const {
    const FieldSpec& f = *field;
    return "[[" + f.format(a) + "," + f.format(b) + "],[" + f.format(c) + "," + f.format(d) + "]]";
  }
};

inline GroupElement make_element(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  GroupElement g{f, a, b, c, d};
  require(g.det() == 1, "matrix does not have determinant 1");
  return g;
}

inline GroupElement identity(const Field& f) { return {f, 1, 0, 0, 1}; }

/// eps(x) = ((1, x), (0, 1)).
inline GroupElement mk_eps(const Field& f, std::uint32_t x) { return {f, 1, x, 0, 1}; }
/// h(c) = diag(c, c^{-1}).
inline GroupElement mk_h(const Field& f, std::uint32_t c) {
  require(c != 0, "h(c) requires c != 0");
  return {f, c, 0, 0, f->inv(c)};
}
/// s = ((0, 1), (-1, 0)).
inline GroupElement mk_s(const Field& f) { return {f, 0, 1, f->neg(1), 0}; }

inline GroupElement mk_eps(const FieldElement& x) { return mk_eps(x.owner(), x.code()); }
inline GroupElement mk_h(const FieldElement& c) { return mk_h(c.owner(), c.code()); }

inline GroupElement multiply(const GroupElement& x, const GroupElement& y) {
  require(x.field.get() == y.field.get(), "group elements over different fields");
  const FieldSpec& f = *x.field;
  return {x.field, f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

inline GroupElement operator*(const GroupElement& x, const GroupElement& y) { return multiply(x, y); }

/// Adjugate inverse (det = 1).
inline GroupElement invert(const GroupElement& g) {
  const FieldSpec& f = *g.field;
  return {g.field, g.d, f.neg(g.b), f.neg(g.c), g.a};
}

/// eps(x) h(c).
struct BorelForm {
  std::uint32_t x = 0;
  std::uint32_t c = 1;
  friend bool operator==(const BorelForm&, const BorelForm&) = default;
};
/// eps(x) s h(c) eps(y).
struct BigCellForm {
  std::uint32_t x = 0;
  std::uint32_t c = 1;
  std::uint32_t y = 0;
  friend bool operator==(const BigCellForm&, const BigCellForm&) = default;
};
using BruhatForm = std::variant<BorelForm, BigCellForm>;

inline BruhatForm bruhat(const GroupElement& g) {
  const FieldSpec& f = *g.field;
  if (g.c == 0) return BorelForm{f.mul(g.b, g.a), g.a};
  // eps(x) s h(c) eps(y) = ((-cx, 1/c - cxy), (-c, -cy))
  const std::uint32_t inv_lower = f.inv(g.c);
  return BigCellForm{f.mul(g.a, inv_lower), f.neg(g.c), f.mul(g.d, inv_lower)};
}

inline GroupElement assemble(const Field& f, const BruhatForm& form) {
  if (const auto* bo = std::get_if<BorelForm>(&form)) return mk_eps(f, bo->x) * mk_h(f, bo->c);
  const auto& bc = std::get<BigCellForm>(form);
  return mk_eps(f, bc.x) * mk_s(f) * mk_h(f, bc.c) * mk_eps(f, bc.y);
}

inline bool in_torus(const GroupElement& g) { return g.b == 0 && g.c == 0; }

/// alpha(h(c)) = c^2.
inline FieldElement simple_root_alpha(const GroupElement& t) {
  require(in_torus(t), "simple_root_alpha: element is not in T");
  return {t.field, t.field->mul(t.a, t.a)};
}

enum class Subgroup { T, U, B, N };

inline const char* subgroup_name(Subgroup h) {
  switch (h) {
    case Subgroup::T: return "T";
    case Subgroup::U: return "U";
    case Subgroup::B: return "B";
    case Subgroup::N: return "N";
  }
  return "?";
}

inline bool in_subgroup(const GroupElement& g, Subgroup h) {
  switch (h) {
    case Subgroup::T: return g.b == 0 && g.c == 0;
    case Subgroup::U: return g.c == 0 && g.a == 1 && g.d == 1;
    case Subgroup::B: return g.c == 0;
    case Subgroup::N: return (g.b == 0 && g.c == 0) || (g.a == 0 && g.d == 0);
  }
  return false;
}

/// Largest |G| accepted by enumerate_group.
inline std::uint64_t group_bound() { return 1000000; }

/// For a subgroup H: cosets gH, least-index representatives, and g = rep * part for every g.
struct CosetTable {
  Subgroup subgroup = Subgroup::T;
  std::vector<std::uint32_t> coset_of;      // per element
  std::vector<std::uint32_t> reps;          // per coset: element index of the representative
  std::vector<std::uint32_t> part;          // per element: index of h with g = rep * h
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<bool> w_part_is_s;            // N only: h lies in sT rather than T

  std::size_t size() const { return reps.size(); }
};

/// All of SL2(F_q) in Bruhat order: Borel elements eps(x)h(c) by (x, dlog c), then the big cell
/// eps(x) s h(c) eps(y) by (x, dlog c, y).
class GroupTable {
 public:
  explicit GroupTable(Field f, std::uint64_t bound = group_bound()) : f_(std::move(f)) {
    const std::uint64_t q = f_->order();
    require(q * (q * q - 1) <= bound, "enumerate_group: |G| = " + std::to_string(q * (q * q - 1)) +
                                          " exceeds bound " + std::to_string(bound));
    const std::uint32_t n = f_->units();
    elements_.reserve(q * (q * q - 1));
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t k = 0; k < n; ++k) elements_.push_back(assemble(f_, BorelForm{x, f_->exp(k)}));
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t y = 0; y < q; ++y) elements_.push_back(assemble(f_, BigCellForm{x, f_->exp(k), y}));
    index_.reserve(elements_.size() * 2);
    for (std::uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].key(), i);
  }

  const Field& field() const { return f_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }

  std::uint32_t index_of(const GroupElement& g) const {
    const auto it = index_.find(g.key());
    require(it != index_.end(), "element not in group table");
    return it->second;
  }

  std::vector<std::uint32_t> subgroup(Subgroup h) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < elements_.size(); ++i)
      if (in_subgroup(elements_[i], h)) out.push_back(i);
    return out;
  }

  /// Brute-force coset table: scan in index order, multiply by every subgroup element.
  CosetTable coset_table(Subgroup h) const {
    require(h == Subgroup::T || h == Subgroup::B || h == Subgroup::N, "coset_table: unsupported subgroup");
    const auto sub = subgroup(h);
    CosetTable t;
    t.subgroup = h;
    constexpr std::uint32_t kUnset = 0xFFFFFFFFU;
    t.coset_of.assign(size(), kUnset);
    t.part.assign(size(), kUnset);
    if (h == Subgroup::N) t.w_part_is_s.assign(size(), false);
    for (std::uint32_t g = 0; g < size(); ++g) {
      if (t.coset_of[g] != kUnset) continue;
      const auto coset = static_cast<std::uint32_t>(t.reps.size());
      t.reps.push_back(g);
      t.members.emplace_back();
      for (auto hi : sub) {
        const std::uint32_t member = index_of(elements_[g] * elements_[hi]);
        t.coset_of[member] = coset;
        t.part[member] = hi;
        if (h == Subgroup::N) t.w_part_is_s[member] = !in_torus(elements_[hi]);
        t.members.back().push_back(member);
      }
    }
    return t;
  }

 private:
  Field f_;
  std::vector<GroupElement> elements_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

inline GroupTable enumerate_group(const Field& f, std::uint64_t bound = group_bound()) { return GroupTable(f, bound); }

/// Debug dump: one line per coset, `rep: member member ...`.
inline void dump_coset_table(std::ostream& os, const CosetTable& t) {
  for (std::size_t c = 0; c < t.size(); ++c) {
    os << t.reps[c] << ':';
    for (auto m : t.members[c]) os << ' ' << m;
    os << '\n';
  }
}

}  // namespace crosschar
