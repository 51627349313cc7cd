#pragma once

// Modules induced from T, B and N to SL2(F_Q), with the coset action computed
// from Bruhat normal forms.
//
// Basis conventions (Q = |F_Q|):
//   Ind_T : index x            <-> eps(x) 1
//           index Q + x*Q + y  <-> eps(x) s eps(y) 1
//   Ind_B : index 0            <-> 1 (the B-fixed line)
//           index 1 + x        <-> eps(x) s 1
//   Ind_N : the T-cosets paired by right multiplication with s; each pair is
//           represented by its smaller T-coset index, pairs numbered in
//           increasing order of that index.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosschar/chars.hpp"
#include "crosschar/rep.hpp"
#include "crosschar/sl2.hpp"

namespace crosschar {

class InducedModule;
using ModulePtr = std::shared_ptr<const InducedModule>;

class InducedModule {
 public:
  /// Ind_T^G k_theta; the level is theta's domain.
  static ModulePtr induce_torus(const Character& theta) {
    return ModulePtr(new InducedModule(Subgroup::T, theta.domain, theta.target, theta, 1));
  }
  /// M(theta) = Ind_B^G k_theta with theta read through B -> T.
  static ModulePtr induce_borel(const Character& theta) {
    return ModulePtr(new InducedModule(Subgroup::B, theta.domain, theta.target, theta, 1));
  }
  /// Ind_N^G k_{+} (sign = +1) or k_{-} (sign = -1, the sign of N/T).
  static ModulePtr induce_normalizer(const Field& level, int sign, const CoeffField& coeff) {
    require(sign == 1 || sign == -1, "induce_normalizer: sign must be +1 or -1");
    return ModulePtr(new InducedModule(Subgroup::N, level, coeff, std::nullopt, sign));
  }

  Subgroup subgroup() const { return sub_; }
  const Field& level() const { return level_; }
  const CoeffField& coeff() const { return coeff_; }
  const Field& coeff_field() const { return coeff_.field; }
  const std::optional<Character>& theta() const { return theta_; }
  int sign() const { return sign_; }
  std::size_t dim() const { return dim_; }

  /// Scalar multiple of a basis vector: g . 1 = coeff * (basis vector index).
  struct Image {
    std::uint32_t index = 0;
    std::uint32_t coeff = 1;
  };

  /// Decomposes g (as g . 1) into a basis vector times a scalar.
  Image locate(const GroupElement& g) const {
    require(g.field.get() == level_.get(), "group element not at the module's level");
    const FieldSpec& f = *level_;
    const std::uint32_t Q = f.order();
    std::uint32_t t_index = 0;
    std::uint32_t c = 1;
    const BruhatForm form = bruhat(g);
    if (const auto* bo = std::get_if<BorelForm>(&form)) {
      c = bo->c;
      if (sub_ == Subgroup::B) return {0, theta_->eval_code(c)};
      t_index = bo->x;
    } else {
      const auto& bc = std::get<BigCellForm>(form);
      c = bc.c;
      if (sub_ == Subgroup::B) return {1 + bc.x, theta_->eval_code(c)};
      // eps(x) s h(c) eps(y) = eps(x) s eps(c^2 y) h(c)
      t_index = Q + bc.x * Q + f.mul(f.mul(c, c), bc.y);
    }
    if (sub_ == Subgroup::T) return {t_index, theta_->eval_code(c)};
    const std::uint32_t n_index = n_of_t_[t_index];
    const bool canonical = n_rep_t_[n_index] == t_index;
    return {n_index, canonical || sign_ == 1 ? 1U : coeff_field()->neg(1)};
  }

  /// A fixed coset representative for basis vector i.
  GroupElement representative(std::uint32_t i) const {
    require(i < dim_, "basis index out of range");
    const Field& f = level_;
    const std::uint32_t Q = f->order();
    if (sub_ == Subgroup::B) return i == 0 ? identity(f) : mk_eps(f, i - 1) * mk_s(f);
    const std::uint32_t t = sub_ == Subgroup::T ? i : n_rep_t_[i];
    if (t < Q) return mk_eps(f, t);
    const std::uint32_t x = (t - Q) / Q, y = (t - Q) % Q;
    return mk_eps(f, x) * mk_s(f) * mk_eps(f, y);
  }

  Image act_basis(const GroupElement& g, std::uint32_t i) const { return locate(g * representative(i)); }

  /// Monomial matrix of g on the coset basis.
  MonomialOp action(const GroupElement& g) const {
    MonomialOp op{std::vector<std::uint32_t>(dim_), std::vector<std::uint32_t>(dim_)};
    for (std::uint32_t i = 0; i < dim_; ++i) {
      const Image im = act_basis(g, i);
      op.perm[i] = im.index;
      op.scal[i] = im.coeff;
    }
    return op;
  }

  /// Spinning generators {eps(w^i) : i < deg} u {s, h(w)} for the level generator w.
  std::vector<GroupElement> generators() const {
    const Field& f = level_;
    std::vector<GroupElement> out;
    for (unsigned i = 0; i < f->degree(); ++i) out.push_back(mk_eps(f, f->exp(i)));
    out.push_back(mk_s(f));
    out.push_back(mk_h(f, f->generator()));
    return out;
  }

  Rep rep() const {
    Rep r{coeff_field(), dim_, {}};
    for (const auto& g : generators()) r.gens.emplace_back(action(g));
    return r;
  }

  /// Index of the T-coset basis vector eps(x) s eps(y) 1 (Ind_T only).
  std::uint32_t big_cell_index(std::uint32_t x, std::uint32_t y) const {
    require(sub_ == Subgroup::T, "big_cell_index: Ind_T only");
    const std::uint32_t Q = level_->order();
    return Q + x * Q + y;
  }

  std::string describe() const {
    std::string s = std::string("Ind_") + subgroup_name(sub_) + " over SL2(" + std::to_string(level_->order()) + ")";
    if (theta_) s += " theta_exp=" + std::to_string(theta_->a);
    if (sub_ == Subgroup::N) s += sign_ == 1 ? " k+" : " k-";
    return s;
  }

 private:
  InducedModule(Subgroup sub, Field level, CoeffField coeff, std::optional<Character> theta, int sign)
      : sub_(sub), level_(std::move(level)), coeff_(std::move(coeff)), theta_(std::move(theta)), sign_(sign) {
    const std::uint64_t Q = level_->order();
    if (theta_) {
      require(theta_->domain.get() == level_.get(), "induce: character not defined at the module level");
      require(theta_->target.field.get() == coeff_.field.get(), "induce: coefficient field mismatch");
    }
    switch (sub_) {
      case Subgroup::T: dim_ = Q * (Q + 1); break;
      case Subgroup::B: dim_ = Q + 1; break;
      case Subgroup::N: dim_ = Q * (Q + 1) / 2; build_normalizer_tables(); break;
      default: throw PreconditionError("induce: unsupported subgroup");
    }
  }

  /// T-coset index of (rep of t) * s.
  std::uint32_t s_partner(std::uint32_t t) const {
    const FieldSpec& f = *level_;
    const std::uint32_t Q = f.order();
    if (t < Q) return Q + t * Q;  // eps(x) s
    const std::uint32_t x = (t - Q) / Q, y = (t - Q) % Q;
    if (y == 0) return x;  // eps(x) s s = eps(x) h(-1)
    // eps(x) s eps(y) s = eps(x - 1/y) s eps(-y) h(-y)
    return Q + f.sub(x, f.inv(y)) * Q + f.neg(y);
  }

  void build_normalizer_tables() {
    const std::uint32_t Q = level_->order();
    const std::uint32_t nt = Q * (Q + 1);
    n_of_t_.assign(nt, 0);
    for (std::uint32_t t = 0; t < nt; ++t) {
      const std::uint32_t partner = s_partner(t);
      if (t < partner) {
        const auto idx = static_cast<std::uint32_t>(n_rep_t_.size());
        n_rep_t_.push_back(t);
        n_of_t_[t] = idx;
        n_of_t_[partner] = idx;
      }
    }
  }

  Subgroup sub_;
  Field level_;
  CoeffField coeff_;
  std::optional<Character> theta_;
  int sign_ = 1;
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> n_of_t_;
  std::vector<std::uint32_t> n_rep_t_;
};

/// Sparse vector of an induced module: basis index -> nonzero coefficient.
class ModuleVector {
 public:
  ModuleVector() = default;
  explicit ModuleVector(ModulePtr owner) : owner_(std::move(owner)) {}

  static ModuleVector basis(const ModulePtr& m, std::uint32_t i, std::uint32_t c = 1) {
    ModuleVector v(m);
    v.add_term(i, c);
    return v;
  }
  static ModuleVector from_dense(const ModulePtr& m, const Vec& d) {
    ModuleVector v(m);
    for (std::uint32_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) v.coeffs_.emplace(i, d[i]);
    return v;
  }

  const ModulePtr& owner() const { return owner_; }
  const std::map<std::uint32_t, std::uint32_t>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::uint32_t get(std::uint32_t i) const {
    const auto it = coeffs_.find(i);
    return it == coeffs_.end() ? 0 : it->second;
  }

  void add_term(std::uint32_t i, std::uint32_t c) {
    require(i < owner_->dim(), "module vector index out of range");
    if (c == 0) return;
    const FieldSpec& f = *owner_->coeff_field();
    auto [it, inserted] = coeffs_.emplace(i, c);
    if (!inserted) {
      it->second = f.add(it->second, c);
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  Vec dense() const {
    Vec d(owner_->dim(), 0);
    for (const auto& [i, c] : coeffs_) d[i] = c;
    return d;
  }

  ModuleVector operator+(const ModuleVector& o) const {
    check(o);
    ModuleVector r = *this;
    for (const auto& [i, c] : o.coeffs_) r.add_term(i, c);
    return r;
  }
  ModuleVector operator-() const { return scaled(owner_->coeff_field()->neg(1)); }
  ModuleVector operator-(const ModuleVector& o) const { return *this + (-o); }
  ModuleVector scaled(std::uint32_t c) const {
    ModuleVector r(owner_);
    const FieldSpec& f = *owner_->coeff_field();
    if (c == 0) return r;
    for (const auto& [i, x] : coeffs_) r.coeffs_.emplace(i, f.mul(c, x));
    return r;
  }
  ModuleVector scaled(const FieldElement& c) const {
    require(c.owner().get() == owner_->coeff_field().get(), "scalar outside the coefficient field");
    return scaled(c.code());
  }

  friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
    return a.owner_.get() == b.owner_.get() && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const ModuleVector& a, const ModuleVector& b) { return !(a == b); }

  std::string str() const {
    const FieldSpec& f = *owner_->coeff_field();
    std::string s;
    for (const auto& [i, c] : coeffs_) s += (s.empty() ? "" : " + ") + f.format(c) + "*e" + std::to_string(i);
    return s.empty() ? "0" : s;
  }

 private:
  void check(const ModuleVector& o) const { require(owner_.get() == o.owner_.get(), "vectors of different modules"); }

  ModulePtr owner_;
  std::map<std::uint32_t, std::uint32_t> coeffs_;
};

/// Formal sum of coefficient * group element in the group algebra.
struct AlgebraElement {
  Field coeff_field;
  std::vector<std::pair<std::uint32_t, GroupElement>> terms;

  static AlgebraElement of(const Field& coeff, const GroupElement& g) { return {coeff, {{1U, g}}}; }

  AlgebraElement operator+(const AlgebraElement& o) const {
    require(coeff_field.get() == o.coeff_field.get(), "algebra elements over different fields");
    AlgebraElement r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
  AlgebraElement scaled(std::uint32_t c) const {
    AlgebraElement r{coeff_field, {}};
    for (const auto& [k, g] : terms) r.terms.emplace_back(coeff_field->mul(c, k), g);
    return r;
  }
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    require(x.coeff_field.get() == y.coeff_field.get(), "algebra elements over different fields");
    AlgebraElement r{x.coeff_field, {}};
    for (const auto& [a, g] : x.terms)
      for (const auto& [b, h] : y.terms) r.terms.emplace_back(x.coeff_field->mul(a, b), g * h);
    return r;
  }
};

inline ModuleVector act(const GroupElement& g, const ModuleVector& v) {
  const InducedModule& m = *v.owner();
  const FieldSpec& f = *m.coeff_field();
  ModuleVector out(v.owner());
  for (const auto& [i, c] : v.terms()) {
    const auto im = m.act_basis(g, i);
    out.add_term(im.index, f.mul(im.coeff, c));
  }
  return out;
}

inline ModuleVector act(const AlgebraElement& a, const ModuleVector& v) {
  require(a.coeff_field.get() == v.owner()->coeff_field().get(), "algebra element and module over different fields");
  ModuleVector out(v.owner());
  for (const auto& [c, g] : a.terms) out = out + act(g, v).scaled(c);
  return out;
}

/// Sum of eps(x) over x in the subfield `sub` of the module level.
inline AlgebraElement ubar(const ModulePtr& m, const Field& sub, bool skip_zero = false) {
  const Embedding emb(sub, m->level());
  AlgebraElement a{m->coeff_field(), {}};
  for (std::uint32_t x = skip_zero ? 1 : 0; x < sub->order(); ++x) a.terms.emplace_back(1U, mk_eps(m->level(), emb(x)));
  return a;
}

/// Sum over a torus subset D with alpha: D -> sub^* bijective, D = {h(sqrt_ext(z))}, hosted at the module level.
inline AlgebraElement dbar(const ModulePtr& m, const Field& sub) {
  const Field& level = m->level();
  const Field big = quadratic_extension(sub);
  require(level->degree() % big->degree() == 0,
          "dbar: module level does not contain the square roots of GF(" + std::to_string(sub->order()) + ")");
  const Embedding emb(big, level);
  AlgebraElement a{m->coeff_field(), {}};
  for (std::uint32_t z = 1; z < sub->order(); ++z) {
    const FieldElement root = sqrt_ext(FieldElement(sub, z));
    a.terms.emplace_back(1U, mk_h(level, emb(root.code())));
  }
  return a;
}

}  // namespace crosschar
