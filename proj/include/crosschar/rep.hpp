#pragma once

// Matrix representations given by a list of generator operators, with
// submodule and quotient constructions along a semi-echelon basis.

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "crosschar/linalg.hpp"

namespace crosschar {

/// Monomial operator e_i -> scal[i] * e_{perm[i]}.
struct MonomialOp {
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> scal;
};

class LinearOp {
 public:
  LinearOp(MonomialOp m) : op_(std::move(m)) {}  // NOLINT(google-explicit-constructor)
  LinearOp(Matrix m) : op_(std::move(m)) {}      // NOLINT(google-explicit-constructor)

  bool is_monomial() const { return std::holds_alternative<MonomialOp>(op_); }
  const MonomialOp& monomial() const { return std::get<MonomialOp>(op_); }

  Vec apply(const FieldSpec& f, const Vec& v) const {
    if (const auto* m = std::get_if<MonomialOp>(&op_)) {
      Vec out(v.size(), 0);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[m->perm[i]] = f.mul(m->scal[i], v[i]);
      return out;
    }
    return std::get<Matrix>(op_).apply(v);
  }

  Matrix dense(const Field& f, std::size_t n) const {
    if (const auto* m = std::get_if<MonomialOp>(&op_)) {
      Matrix out(f, n, n);
      for (std::size_t i = 0; i < n; ++i) out.at(m->perm[i], i) = m->scal[i];
      return out;
    }
    return std::get<Matrix>(op_);
  }

  LinearOp transpose() const {
    if (const auto* m = std::get_if<MonomialOp>(&op_)) {
      MonomialOp t{std::vector<std::uint32_t>(m->perm.size()), std::vector<std::uint32_t>(m->perm.size())};
      for (std::size_t i = 0; i < m->perm.size(); ++i) {
        t.perm[m->perm[i]] = static_cast<std::uint32_t>(i);
        t.scal[m->perm[i]] = m->scal[i];
      }
      return t;
    }
    return std::get<Matrix>(op_).transpose();
  }

 private:
  std::variant<MonomialOp, Matrix> op_;
};

/// A representation of a group (or algebra) by the action of a generating set.
struct Rep {
  Field field;
  std::size_t dim = 0;
  std::vector<LinearOp> gens;

  Rep transpose() const {
    Rep t{field, dim, {}};
    for (const auto& g : gens) t.gens.push_back(g.transpose());
    return t;
  }
  std::vector<Matrix> dense() const {
    std::vector<Matrix> out;
    for (const auto& g : gens) out.push_back(g.dense(field, dim));
    return out;
  }
};

/// Action on an invariant subspace W, in the coordinates of W's rows.
inline Rep subrep(const Rep& rep, const EchelonBasis& w) {
  const std::size_t k = w.size();
  Rep out{rep.field, k, {}};
  for (const auto& g : rep.gens) {
    Matrix m(rep.field, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const auto coords = w.coordinates(g.apply(*rep.field, w.rows()[j]));
      require(coords.has_value(), "subrep: subspace is not invariant");
      for (std::size_t i = 0; i < k; ++i) m.at(i, j) = (*coords)[i];
    }
    out.gens.emplace_back(std::move(m));
  }
  return out;
}

/// Action on V / W with basis the images of the non-pivot unit vectors.
inline Rep quotient_rep(const Rep& rep, const EchelonBasis& w) {
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < rep.dim; ++c)
    if (!w.is_pivot(c)) free_cols.push_back(c);
  const std::size_t k = free_cols.size();
  Rep out{rep.field, k, {}};
  for (const auto& g : rep.gens) {
    Matrix m(rep.field, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vec e(rep.dim, 0);
      e[free_cols[j]] = 1;
      Vec img = g.apply(*rep.field, e);
      w.reduce(img);
      for (std::size_t i = 0; i < k; ++i) m.at(i, j) = img[free_cols[i]];
    }
    out.gens.emplace_back(std::move(m));
  }
  return out;
}

}  // namespace crosschar
