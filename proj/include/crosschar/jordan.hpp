#pragma once

// Jordan canonical form of a square matrix whose characteristic polynomial
// splits over its field, with an explicit transition matrix.

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "crosschar/linalg.hpp"

namespace crosschar {

struct JordanBlock {
  std::uint32_t eigenvalue = 0;
  std::size_t size = 0;
  std::size_t multiplicity = 0;
  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

struct JordanReport {
  Matrix matrix;
  std::vector<std::pair<std::uint32_t, std::size_t>> eigenvalues;  // (value, algebraic multiplicity)
  std::vector<JordanBlock> blocks;  // by eigenvalue code, then size descending
  Matrix P, J;
  FPoly charpoly_coeffs, minpoly;
  bool verified = false;  // A P = P J with P invertible

  std::size_t dim() const { return matrix.rows; }
  bool diagonalizable() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const JordanBlock& b) { return b.size == 1; });
  }
  /// Multiset of block sizes, ascending.
  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& b : blocks) s.insert(s.end(), b.multiplicity, b.size);
    std::sort(s.begin(), s.end());
    return s;
  }
};

inline JordanReport jordan_form(const Matrix& a) {
  require(a.rows == a.cols, "jordan_form: matrix not square");
  const Field& field = a.field;
  const FieldSpec& f = *field;
  const std::size_t n = a.rows;
  JordanReport rep{a, {}, {}, Matrix(field, n, n), Matrix(field, n, n), {}, {}, false};
  rep.charpoly_coeffs = charpoly(a);
  rep.minpoly = minimal_polynomial(a);
  rep.eigenvalues = poly_roots(f, rep.charpoly_coeffs);
  std::size_t total = 0;
  for (const auto& e : rep.eigenvalues) total += e.second;
  require(total == n, "jordan_form: characteristic polynomial does not split over the field");

  std::vector<Vec> columns;
  std::size_t pos = 0;
  for (const auto& [lambda, mu] : rep.eigenvalues) {
    const Matrix N = a - Matrix::identity(field, n).scaled(lambda);
    // powers[j] = N^j, kernels[j] = basis of ker N^j
    std::vector<Matrix> powers{Matrix::identity(field, n)};
    std::vector<std::vector<Vec>> kernels{{}};
    while (kernels.back().size() < mu) {
      powers.push_back(powers.back() * N);
      kernels.push_back(nullspace(powers.back()));
      require(kernels.size() <= n + 1, "jordan_form: generalized eigenspace did not stabilize");
    }
    const std::size_t smax = kernels.size() - 1;
    EchelonBasis used(field, n);
    std::map<std::size_t, std::size_t, std::greater<>> counts;
    std::vector<std::vector<Vec>> chains;
    for (std::size_t s = smax; s >= 1; --s) {
      for (const auto& v : kernels[s]) {
        const Vec top = powers[s - 1].apply(v);
        if (used.contains(top)) continue;
        std::vector<Vec> chain(s);
        chain[s - 1] = v;
        for (std::size_t j = s - 1; j-- > 0;) chain[j] = N.apply(chain[j + 1]);
        for (const auto& c : chain) used.add(c);
        chains.push_back(std::move(chain));
        ++counts[s];
      }
    }
    require(used.size() == mu, "jordan_form: chain construction incomplete");
    for (const auto& [s, m] : counts) rep.blocks.push_back({lambda, s, m});
    for (const auto& chain : chains) {
      for (std::size_t j = 0; j < chain.size(); ++j) {
        rep.J.at(pos + j, pos + j) = lambda;
        if (j > 0) rep.J.at(pos + j - 1, pos + j) = 1;
        columns.push_back(chain[j]);
      }
      pos += chain.size();
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rep.P.at(i, j) = columns[j][i];
  rep.verified = a * rep.P == rep.P * rep.J && rank(rep.P) == n;
  return rep;
}

}  // namespace crosschar
