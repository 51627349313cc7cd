#pragma once

// Dense exact linear algebra over a FieldSpec: matrices, semi-echelon bases,
// nullspaces, characteristic and minimal polynomials.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosschar/ffield.hpp"

namespace crosschar {

using Vec = std::vector<std::uint32_t>;

/// dst += c * src over f.
inline void axpy(const FieldSpec& f, Vec& dst, std::uint32_t c, const Vec& src, std::size_t from = 0) {
  if (c == 0) return;
  const std::size_t n = dst.size();
  if (const std::uint32_t* add = f.add_table(); add != nullptr && n - from >= f.order()) {
    // small field, long vector: tabulate multiplication by c once
    const std::uint32_t q = f.order();
    std::uint32_t prod[FieldSpec::kAddTableMax];
    for (std::uint32_t x = 0; x < q; ++x) prod[x] = f.mul(c, x);
    for (std::size_t j = from; j < n; ++j) {
      const std::uint32_t s = src[j];
      if (s != 0) dst[j] = add[dst[j] * q + prod[s]];
    }
    return;
  }
  for (std::size_t j = from; j < n; ++j) {
    const std::uint32_t s = src[j];
    if (s != 0) dst[j] = f.add(dst[j], f.mul(c, s));
  }
}

inline void scale(const FieldSpec& f, Vec& v, std::uint32_t c) {
  for (auto& x : v) x = f.mul(x, c);
}

inline bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

/// Row-major dense matrix of field codes.
struct Matrix {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> a;

  Matrix() = default;
  Matrix(Field f, std::size_t r, std::size_t c) : field(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(field, cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec apply(const Vec& v) const {
    const FieldSpec& f = *field;
    Vec out(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      std::uint32_t s = 0;
      const std::uint32_t* r = &a[i * cols];
      for (std::size_t j = 0; j < cols; ++j)
        if (r[j] != 0 && v[j] != 0) s = f.add(s, f.mul(r[j], v[j]));
      out[i] = s;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    require(x.cols == y.rows && x.field.get() == y.field.get(), "matrix product: shape or field mismatch");
    const FieldSpec& f = *x.field;
    Matrix out(x.field, x.rows, y.cols);
    Vec acc(y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < x.cols; ++k) {
        const std::uint32_t c = x.at(i, k);
        if (c == 0) continue;
        const std::uint32_t* yr = &y.a[k * y.cols];
        for (std::size_t j = 0; j < y.cols; ++j)
          if (yr[j] != 0) acc[j] = f.add(acc[j], f.mul(c, yr[j]));
      }
      std::copy(acc.begin(), acc.end(), out.a.begin() + i * out.cols);
    }
    return out;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    require(x.rows == y.rows && x.cols == y.cols, "matrix sum: shape mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.field->add(x.a[i], y.a[i]);
    return out;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    require(x.rows == y.rows && x.cols == y.cols, "matrix difference: shape mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.field->sub(x.a[i], y.a[i]);
    return out;
  }
  Matrix scaled(std::uint32_t c) const {
    Matrix out = *this;
    for (auto& v : out.a) v = field->mul(v, c);
    return out;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field.get() == y.field.get() && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

/// Semi-echelon basis of a subspace of F^n: row i is monic at pivot column pivots[i],
/// zero before it, and zero at the pivots of all earlier rows.
class EchelonBasis {
 public:
  EchelonBasis() = default;
  EchelonBasis(Field f, std::size_t n) : f_(std::move(f)), n_(n), pivot_row_(n, kNone) {}

  const Field& field() const { return f_; }
  std::size_t ambient() const { return n_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != kNone; }

  /// Reduces v in place against the basis; afterwards v is zero at every pivot column.
  void reduce(Vec& v) const {
    if (rows_.empty()) return;
    const FieldSpec& f = *f_;
    if (!planes_.empty()) {
      const std::uint64_t p = f.p();
      if (f.degree() * (p - 1) * (p - 1) < (1U << 16))
        reduce_packed<std::uint32_t>(v);
      else
        reduce_packed<std::uint64_t>(v);
      return;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint32_t c = v[pivots_[i]];
      if (c != 0) axpy(f, v, f.neg(c), rows_[i], pivots_[i]);
    }
  }

  /// Reduces and, when independent, appends v. Returns true if the span grew.
  bool add(Vec v) {
    reduce(v);
    return insert_reduced(std::move(v));
  }

  /// Appends an already reduced vector (no-op for zero).
  bool insert_reduced(Vec v) {
    std::size_t piv = 0;
    while (piv < n_ && v[piv] == 0) ++piv;
    if (piv == n_) return false;
    const FieldSpec& f = *f_;
    const std::uint32_t inv = f.inv(v[piv]);
    if (inv != 1) scale(f, v, inv);
    pivot_row_[piv] = rows_.size();
    pivots_.push_back(piv);
    if (n_ >= kPackedMin) {
      // digit planes over the prime field: plane a holds digit a of every entry
      const unsigned m = f.degree();
      std::vector<std::uint32_t> pl(m * n_);
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint32_t code = v[j];
        for (unsigned a = 0; a < m; ++a, code /= f.p()) pl[a * n_ + j] = code % f.p();
      }
      planes_.push_back(std::move(pl));
    }
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return is_zero(v);
  }

  /// Coordinates of a vector in the span with respect to rows(); nullopt if outside.
  std::optional<Vec> coordinates(Vec v) const {
    const FieldSpec& f = *f_;
    Vec c(rows_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint32_t x = v[pivots_[i]];
      if (x != 0) {
        c[i] = x;
        axpy(f, v, f.neg(x), rows_[i], pivots_[i]);
      }
    }
    if (!is_zero(v)) return std::nullopt;
    return c;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  Field f_;
  std::size_t n_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<std::uint32_t>> planes_;  // per row, when n_ >= kPackedMin

  static constexpr std::size_t kPackedMin = 16;

  // Elimination on digit planes with deferred reduction mod p: multiplication by a
  // field constant is an m x m matrix over F_p acting on the digit vector.
  template <class Acc>
  void reduce_packed(Vec& v) const {
    const FieldSpec& f = *f_;
    const unsigned m = f.degree();
    const std::uint32_t p = f.p();
    const std::size_t n = n_;
    std::vector<std::uint32_t> pw(m);
    for (unsigned a = 0; a < m; ++a) pw[a] = a == 0 ? 1 : pw[a - 1] * p;
    std::vector<Acc> w(m * n);
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t code = v[j];
      for (unsigned a = 0; a < m; ++a, code /= p) w[a * n + j] = code % p;
    }
    const Acc step = static_cast<Acc>(m) * (p - 1) * (p - 1);
    const Acc limit = std::numeric_limits<Acc>::max() - step;
    Acc bound = p - 1;
    std::vector<std::uint32_t> mc(m * m);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t piv = pivots_[i];
      std::uint32_t c = 0;
      for (unsigned a = 0; a < m; ++a) c += static_cast<std::uint32_t>(w[a * n + piv] % p) * pw[a];
      if (c == 0) continue;
      if (bound > limit) {
        for (auto& x : w) x %= p;
        bound = p - 1;
      }
      const std::uint32_t nc = f.neg(c);
      for (unsigned b = 0; b < m; ++b) {
        std::uint32_t d = f.mul(nc, pw[b]);
        for (unsigned a = 0; a < m; ++a, d /= p) mc[a * m + b] = d % p;
      }
      const std::uint32_t* row = planes_[i].data();
      for (unsigned a = 0; a < m; ++a) {
        Acc* dst = w.data() + a * n;
        for (unsigned b = 0; b < m; ++b) {
          const Acc k = mc[a * m + b];
          if (k == 0) continue;
          const std::uint32_t* src = row + b * n;
          for (std::size_t j = piv; j < n; ++j) dst[j] += k * src[j];
        }
      }
      bound += step;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t code = 0;
      for (unsigned a = 0; a < m; ++a) code += static_cast<std::uint32_t>(w[a * n + j] % p) * pw[a];
      v[j] = code;
    }
  }
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  const FieldSpec& f = *m.field;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    const std::uint32_t inv = f.inv(m.at(r, c));
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const std::uint32_t factor = f.neg(m.at(i, c));
      for (std::size_t j = 0; j < m.cols; ++j)
        if (m.at(r, j) != 0) m.at(i, j) = f.add(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {v : m v = 0}.
inline std::vector<Vec> nullspace(Matrix m) {
  const FieldSpec& f = *m.field;
  const auto pivots = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : pivots) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_piv[free]) continue;
    Vec v(m.cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Polynomials over a field: little-endian coefficient codes.
using FPoly = std::vector<std::uint32_t>;

inline void trim(FPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline FPoly poly_mul(const FieldSpec& f, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

inline std::uint32_t poly_eval(const FieldSpec& f, const FPoly& p, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

/// Characteristic polynomial det(tI - A) via Hessenberg reduction.
inline FPoly charpoly(Matrix h) {
  require(h.rows == h.cols, "charpoly: matrix not square");
  const FieldSpec& f = *h.field;
  const std::size_t n = h.rows;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h.at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
    }
    const std::uint32_t inv = f.inv(h.at(j + 1, j));
    for (std::size_t k = j + 2; k < n; ++k) {
      const std::uint32_t u = f.mul(h.at(k, j), inv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h.at(k, c) = f.sub(h.at(k, c), f.mul(u, h.at(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h.at(r, j + 1) = f.add(h.at(r, j + 1), f.mul(u, h.at(r, k)));
    }
  }
  // p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
  std::vector<FPoly> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    FPoly cur = poly_mul(f, FPoly{f.neg(h.at(k - 1, k - 1)), 1}, p[k - 1]);
    std::uint32_t prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod = f.mul(prod, h.at(i + 1, i));
      if (prod == 0) break;
      const std::uint32_t c = f.mul(h.at(i, k - 1), prod);
      if (c == 0) continue;
      const FPoly& q = p[i];
      if (cur.size() < q.size()) cur.resize(q.size(), 0);
      for (std::size_t d = 0; d < q.size(); ++d) cur[d] = f.sub(cur[d], f.mul(c, q[d]));
    }
    trim(cur);
    p[k] = std::move(cur);
  }
  return p[n];
}

/// Roots of p lying in the field, ascending by code, with multiplicity.
inline std::vector<std::pair<std::uint32_t, std::size_t>> poly_roots(const FieldSpec& f, FPoly p) {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  trim(p);
  if (p.size() <= 1) return out;
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    std::size_t mult = 0;
    while (p.size() > 1 && poly_eval(f, p, x) == 0) {
      // synthetic division by (t - x)
      FPoly q(p.size() - 1, 0);
      std::uint32_t carry = 0;
      for (std::size_t i = p.size() - 1; i-- > 0;) {
        carry = f.add(p[i + 1], f.mul(carry, x));
        q[i] = carry;
      }
      p = std::move(q);
      ++mult;
    }
    if (mult > 0) out.emplace_back(x, mult);
    if (p.size() <= 1) break;
  }
  return out;
}

/// Minimal polynomial by linear dependence of I, A, A^2, ... (monic).
inline FPoly minimal_polynomial(const Matrix& a) {
  require(a.rows == a.cols, "minimal_polynomial: matrix not square");
  const FieldSpec& f = *a.field;
  const std::size_t n = a.rows;
  // rows: flattened powers reduced; combos: their expression in the power basis
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
  std::vector<FPoly> combos;
  Matrix power = Matrix::identity(a.field, n);
  for (std::size_t k = 0; k <= n; ++k) {
    Vec v = power.a;
    FPoly combo(k + 1, 0);
    combo[k] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::uint32_t c = v[pivots[i]];
      if (c == 0) continue;
      const std::uint32_t nc = f.neg(c);
      axpy(f, v, nc, rows[i]);
      for (std::size_t d = 0; d < combos[i].size(); ++d) combo[d] = f.add(combo[d], f.mul(nc, combos[i][d]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) {
      trim(combo);
      return combo;
    }
    const std::uint32_t inv = f.inv(v[piv]);
    scale(f, v, inv);
    for (auto& c : combo) c = f.mul(c, inv);
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    combos.push_back(std::move(combo));
    power = power * a;
  }
  throw PreconditionError("minimal_polynomial: no dependency found (unreachable)");
}

/// Formats a polynomial as "c0 + c1*t + ..." using field element formatting.
inline std::string format_poly(const FieldSpec& f, const FPoly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += f.format(p[i]);
    if (i == 1) s += "*t";
    if (i > 1) s += "*t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace crosschar
