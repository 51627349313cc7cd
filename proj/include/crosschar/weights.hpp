#pragma once

// Eigenspaces of the torus generator h(w) on an induced module.

#include <cstdint>
#include <vector>

#include "crosschar/linalg.hpp"
#include "crosschar/module.hpp"

namespace crosschar {

struct WeightSpace {
  std::uint32_t eigenvalue = 0;  // code in the coefficient field
  std::vector<Vec> basis;
};

struct WeightDecomposition {
  std::size_t dim = 0;
  std::vector<WeightSpace> spaces;  // ascending by eigenvalue code

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& w : spaces) t += w.basis.size();
    return t;
  }
  /// dim minus the sum of eigenspace dimensions; nonzero when h(w) is not diagonalizable
  /// over the coefficient field.
  std::size_t deficiency() const { return dim - total(); }
  const WeightSpace* find(std::uint32_t eigenvalue) const {
    for (const auto& w : spaces)
      if (w.eigenvalue == eigenvalue) return &w;
    return nullptr;
  }
};

inline WeightDecomposition weight_spaces(const ModulePtr& m) {
  const Field& k = m->coeff_field();
  const std::size_t n = m->dim();
  const Matrix h = LinearOp(m->action(mk_h(m->level(), m->level()->generator()))).dense(k, n);
  WeightDecomposition out{n, {}};
  for (const auto& [lambda, mult] : poly_roots(*k, charpoly(h))) {
    (void)mult;
    out.spaces.push_back({lambda, nullspace(h - Matrix::identity(k, n).scaled(lambda))});
  }
  return out;
}

}  // namespace crosschar
