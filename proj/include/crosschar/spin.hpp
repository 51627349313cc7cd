#pragma once

// Submodule spinning: the smallest generator-stable subspace containing a
// set of seed vectors.

#include <deque>
#include <vector>

#include "crosschar/module.hpp"
#include "crosschar/rep.hpp"

namespace crosschar {

struct SpinResult {
  EchelonBasis basis;
  bool complete = false;  // closure finished (and, when verified, every row image re-checked)
  std::size_t dim() const { return basis.size(); }
  bool contains(const Vec& v) const { return basis.contains(v); }
};

/// Every image of a basis row under a generator lies in the span.
inline bool is_stable(const Rep& rep, const EchelonBasis& w) {
  if (w.size() == rep.dim) return true;
  for (const auto& row : w.rows())
    for (const auto& g : rep.gens)
      if (!w.contains(g.apply(*rep.field, row))) return false;
  return true;
}

/// Closure of span(seeds) under rep.gens; starts from an existing basis when given.
/// Every row's images are absorbed before the loop ends, so the result is stable by
/// construction; `verify` re-checks that independently.
inline SpinResult spin(const Rep& rep, const std::vector<Vec>& seeds, bool verify = false,
                       const EchelonBasis* start = nullptr) {
  SpinResult res{start ? *start : EchelonBasis(rep.field, rep.dim), false};
  EchelonBasis& w = res.basis;
  const FieldSpec& f = *rep.field;
  std::size_t next = w.size();
  for (const auto& s : seeds) {
    require(s.size() == rep.dim, "spin: seed has wrong length");
    if (w.size() == rep.dim) break;
    w.add(s);
  }
  if (start) next = 0;  // images of the starting rows are not known to lie in the span
  while (next < w.size() && w.size() < rep.dim) {
    const Vec row = w.rows()[next++];
    for (const auto& g : rep.gens) {
      w.add(g.apply(f, row));
      if (w.size() == rep.dim) break;
    }
  }
  res.complete = (next == w.size() || w.size() == rep.dim) && (!verify || is_stable(rep, w));
  return res;
}

inline SpinResult spin(const ModulePtr& m, const std::vector<ModuleVector>& seeds, bool verify = false) {
  std::vector<Vec> dense;
  for (const auto& v : seeds) {
    require(v.owner().get() == m.get(), "spin: seed belongs to another module");
    dense.push_back(v.dense());
  }
  return spin(m->rep(), dense, verify);
}

inline ModuleVector to_vector(const ModulePtr& m, const Vec& v) { return ModuleVector::from_dense(m, v); }

}  // namespace crosschar
