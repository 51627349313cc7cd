#pragma once

// Exact arithmetic in GF(p^m).
//
// Elements are encoded as integers c_0 + c_1 p + ... + c_{m-1} p^{m-1} where
// c_i are the little-endian coefficients of the residue polynomial. Every field
// carries full exponent/log tables for its chosen generator, plus a Zech table
// so that addition in extension fields is table-driven as well.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crosschar/numtheory.hpp"

namespace crosschar {

namespace detail {

using Poly = std::vector<std::uint32_t>;  // little-endian, trimmed

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

inline Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

inline Poly poly_powmod(Poly b, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  b = poly_mod(std::move(b), f, p);
  while (e != 0) {
    if (e & 1U) r = poly_mulmod(r, b, f, p);
    b = poly_mulmod(b, b, f, p);
    e >>= 1U;
  }
  return r;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Irreducibility of a monic f of degree m over F_p: gcd(f, x^{p^j} - x) = 1 for 0 < j < m.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  if (f[0] == 0) return false;
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t j = 1; j < m; ++j) {
    h = poly_powmod(h, p, f, p);
    const Poly g = poly_gcd(f, poly_sub(h, x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

/// GF(p^m) with a fixed modulus and generator. Immutable once built.
class FieldSpec {
 public:
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFU;

  /// A norm constraint (stride, f): the generator g must make f(g^stride) = 0, where f has
  /// prime-field coefficients. Used to keep generators compatible with subfield generators.
  using NormConstraint = std::pair<std::uint64_t, detail::Poly>;

  FieldSpec(std::uint32_t p, unsigned m, detail::Poly modulus, std::vector<NormConstraint> norms = {})
      : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = static_cast<std::uint32_t>(checked_pow(p, m, ~std::uint32_t{0}));
    pow_.resize(m_ + 1);
    pow_[0] = 1;
    for (unsigned i = 1; i <= m_; ++i) pow_[i] = pow_[i - 1] * p_;
    build_tables(norms);
  }

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t units() const { return q_ - 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::uint32_t generator() const { return generator_; }
  bool is_prime_field() const { return m_ == 1; }
  static constexpr std::uint32_t kAddTableMax = 256;
  /// Row-major q x q addition table, or nullptr for q > kAddTableMax.
  const std::uint32_t* add_table() const { return add_table_.empty() ? nullptr : add_table_.data(); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (m_ == 1) {
      const std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const {
    require(a != 0, "division by zero in GF(" + std::to_string(q_) + ")");
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  /// a^e for any integer e; 0^0 = 1 and 0^e (e > 0) = 0, negative powers of 0 rejected.
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
    if (a == 0) {
      require(e >= 0, "negative power of zero");
      return e == 0 ? 1 : 0;
    }
    const std::int64_t n = q_ - 1;
    std::int64_t k = static_cast<std::int64_t>(static_cast<__int128>(log_[a]) * (e % n) % n);
    if (k < 0) k += n;
    return exp_[static_cast<std::size_t>(k)];
  }
  /// Discrete log base the generator; a != 0.
  std::uint32_t log(std::uint32_t a) const {
    require(a != 0 && a < q_, "dlog of zero");
    return log_[a];
  }
  /// generator^k.
  std::uint32_t exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  /// Image of an integer in the prime subfield.
  std::uint32_t from_int(std::int64_t v) const {
    const std::int64_t r = ((v % static_cast<std::int64_t>(p_)) + p_) % p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t one() const { return 1; }

  std::vector<std::uint32_t> digits(std::uint32_t code) const {
    std::vector<std::uint32_t> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
    return d;
  }
  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t c = 0;
    for (unsigned i = 0; i < m_ && i < d.size(); ++i) c += (d[i] % p_) * pow_[i];
    return c;
  }

  /// Human-readable element: the residue for prime fields, otherwise the coefficient tuple.
  std::string format(std::uint32_t code) const {
    if (m_ == 1) return std::to_string(code);
    std::ostringstream os;
    os << '(';
    const auto d = digits(code);
    for (unsigned i = 0; i < m_; ++i) os << (i ? "," : "") << d[i];
    os << ')';
    return os.str();
  }

  /// One-line text form `p m c_0 ... c_m` of the modulus.
  std::string spec_line() const {
    std::ostringstream os;
    os << p_ << ' ' << m_;
    for (auto c : modulus_) os << ' ' << c;
    return os.str();
  }

 private:
  std::uint32_t poly_to_code(const detail::Poly& f) const {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < f.size(); ++i) c += f[i] * pow_[i];
    return c;
  }
  detail::Poly code_to_poly(std::uint32_t code) const {
    detail::Poly f = digits(code);
    detail::trim(f);
    return f;
  }
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (m_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    return poly_to_code(detail::poly_mulmod(code_to_poly(a), code_to_poly(b), modulus_, p_));
  }
  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e != 0) {
      if (e & 1U) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1U;
    }
    return r;
  }
  std::uint32_t digit_add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t c = 0;
    for (unsigned i = 0; i < m_; ++i) {
      c += ((a % p_ + b % p_) % p_) * pow_[i];
      a /= p_;
      b /= p_;
    }
    return c;
  }

  // root test for a polynomial with prime-field coefficients (codes < p)
  bool is_root(const detail::Poly& f, std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = digit_add(slow_mul(acc, x), f[i]);
    return acc == 0;
  }

  void build_tables(const std::vector<NormConstraint>& norms) {
    const std::uint32_t n = q_ - 1;
    const auto primes = prime_divisors(n);
    generator_ = 0;
    for (std::uint32_t c = 1; c < q_ && generator_ == 0; ++c) {
      bool full = true;
      for (auto l : primes) {
        if (slow_pow(c, n / l) == 1) {
          full = false;
          break;
        }
      }
      for (std::size_t i = 0; full && i < norms.size(); ++i) full = is_root(norms[i].second, slow_pow(c, norms[i].first));
      if (full) generator_ = c;
    }
    require(generator_ != 0, "no generator compatible with the subfield generators");
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(q_, kNoLog);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < n; ++k) {
      exp_[k] = x;
      exp_[k + n] = x;
      log_[x] = k;
      x = slow_mul(x, generator_);
    }
    if (m_ > 1) {
      zech_.assign(n, kNoLog);
      for (std::uint32_t k = 0; k < n; ++k) {
        const std::uint32_t s = digit_add(1, exp_[k]);
        zech_[k] = s == 0 ? kNoLog : log_[s];
      }
      neg_.assign(q_, 0);
      for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t c = 0, t = a;
        for (unsigned i = 0; i < m_; ++i) {
          c += ((p_ - t % p_) % p_) * pow_[i];
          t /= p_;
        }
        neg_[a] = c;
      }
    }
    if (q_ <= kAddTableMax) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b) add_table_[a * q_ + b] = add(a, b);
    }
  }

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_ = 0;
  detail::Poly modulus_;
  std::vector<std::uint32_t> pow_;
  std::uint32_t generator_ = 0;
  std::vector<std::uint32_t> exp_, log_, zech_, neg_;
  std::vector<std::uint32_t> add_table_;
};

namespace detail {

struct FieldCache {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, Poly>, Field> by_modulus;
  std::map<std::pair<std::uint32_t, unsigned>, Field> by_degree;
};

inline FieldCache& field_cache() {
  static FieldCache cache;
  return cache;
}

inline std::uint32_t checked_field_order(std::uint64_t p, unsigned m) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  require(m >= 1, "extension degree must be >= 1");
  const std::uint64_t q = checked_pow(p, m, field_bound());
  require(q != 0, "field size " + std::to_string(p) + "^" + std::to_string(m) + " exceeds bound " +
                      std::to_string(field_bound()));
  return static_cast<std::uint32_t>(q);
}

}  // namespace detail

inline Field construct_field(std::uint64_t p, unsigned m);

namespace detail {

/// Minimal polynomial over F_p of a field element, as prime-field coefficients (low to high).
inline Poly minimal_polynomial(const FieldSpec& f, std::uint32_t a) {
  Poly g{1};
  std::uint32_t c = a;
  do {
    // g <- g * (x - c)
    Poly h(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      h[i + 1] = f.add(h[i + 1], g[i]);
      h[i] = f.add(h[i], f.neg(f.mul(g[i], c)));
    }
    g = std::move(h);
    c = f.pow(c, f.p());
  } while (c != a);
  for (auto x : g) require(x < f.p(), "minimal polynomial left the prime field");
  return g;
}

}  // namespace detail

/// GF(p^m) for a caller-pinned monic modulus (checked for irreducibility).
inline Field construct_field_with_modulus(std::uint64_t p, unsigned m, std::vector<std::uint32_t> modulus) {
  detail::checked_field_order(p, m);
  const auto pp = static_cast<std::uint32_t>(p);
  require(modulus.size() == m + 1 && modulus.back() == 1, "modulus must be monic of degree m");
  for (auto c : modulus) require(c < pp, "modulus coefficient out of range");
  require(detail::is_irreducible(modulus, pp), "modulus is reducible over F_p");
  {
    auto& cache = detail::field_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.by_modulus.find({pp, modulus}); it != cache.by_modulus.end()) return it->second;
  }
  // the generator's norm to each proper subfield must be that subfield's generator
  std::vector<FieldSpec::NormConstraint> norms;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const Field sub = construct_field(p, d);
    norms.emplace_back((checked_pow(p, m, ~std::uint32_t{0}) - 1) / sub->units(), detail::minimal_polynomial(*sub, sub->generator()));
  }
  auto& cache = detail::field_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto key = std::make_pair(pp, modulus);
  if (auto it = cache.by_modulus.find(key); it != cache.by_modulus.end()) return it->second;
  auto f = std::make_shared<const FieldSpec>(pp, m, modulus, std::move(norms));
  cache.by_modulus.emplace(std::move(key), f);
  return f;
}

/// GF(p^m) with the smallest monic irreducible modulus (ordered by coefficient code) and
/// the smallest-code generator of the unit group.
inline Field construct_field(std::uint64_t p, unsigned m) {
  const std::uint32_t q = detail::checked_field_order(p, m);
  const auto pp = static_cast<std::uint32_t>(p);
  {
    auto& cache = detail::field_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    if (auto it = cache.by_degree.find({pp, m}); it != cache.by_degree.end()) return it->second;
  }
  detail::Poly f(m + 1, 0);
  f[m] = 1;
  for (std::uint32_t code = 0; code < q; ++code) {
    std::uint32_t t = code;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = t % pp;
      t /= pp;
    }
    if (detail::is_irreducible(f, pp)) break;
  }
  Field field = construct_field_with_modulus(p, m, f);
  auto& cache = detail::field_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.by_degree.emplace(std::make_pair(pp, m), field);
  return field;
}

/// GF(q) for a prime power q.
inline Field field_of_order(std::uint64_t q) {
  require(q >= 2, "field order must be >= 2");
  const auto primes = prime_divisors(q);
  require(primes.size() == 1, "q = " + std::to_string(q) + " is not a prime power");
  unsigned m = 0;
  for (std::uint64_t t = q; t > 1; t /= primes[0]) ++m;
  return construct_field(primes[0], m);
}

/// Parses the one-line text form `p m c_0 c_1 ... c_m`.
inline Field parse_field_spec(const std::string& line) {
  std::istringstream is(line);
  std::uint64_t p = 0;
  unsigned m = 0;
  require(static_cast<bool>(is >> p >> m), "field spec: expected `p m c_0 ... c_m`");
  std::vector<std::uint32_t> coeffs;
  std::uint64_t c = 0;
  while (is >> c) coeffs.push_back(static_cast<std::uint32_t>(c));
  require(coeffs.size() == m + 1, "field spec: expected m+1 modulus coefficients");
  return construct_field_with_modulus(p, m, std::move(coeffs));
}

/// An element together with the field that owns it.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field f, std::uint32_t code) : f_(std::move(f)), v_(code) {
    require(f_ != nullptr && v_ < f_->order(), "field element code out of range");
  }
  static FieldElement from_int(const Field& f, std::int64_t v) { return {f, f->from_int(v)}; }
  static FieldElement zero(const Field& f) { return {f, 0}; }
  static FieldElement one(const Field& f) { return {f, 1}; }
  static FieldElement generator(const Field& f) { return {f, f->generator()}; }

  const Field& owner() const { return f_; }
  std::uint32_t code() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::vector<std::uint32_t> coeffs() const { return f_->digits(v_); }

  FieldElement operator+(const FieldElement& o) const { return {same(o), f_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {same(o), f_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {same(o), f_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {same(o), f_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement pow(std::int64_t e) const { return {f_, f_->pow(v_, e)}; }
  FieldElement inv() const { return {f_, f_->inv(v_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.f_.get() == b.f_.get() && a.v_ == b.v_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string str() const { return f_->format(v_); }

 private:
  const Field& same(const FieldElement& o) const {
    require(f_.get() == o.f_.get(), "operands belong to different fields");
    return f_;
  }

  Field f_;
  std::uint32_t v_ = 0;
};

/// Discrete log base the field's generator, in [0, p^m - 1).
inline std::uint64_t dlog(const FieldElement& x) {
  require(!x.is_zero(), "dlog of zero");
  return x.owner()->log(x.code());
}

/// The fixed embedding GF(p^m) -> GF(p^l) sending g_m to g_l^{(p^l-1)/(p^m-1)}.
class Embedding {
 public:
  Embedding(Field from, Field to) : from_(std::move(from)), to_(std::move(to)) {
    require(from_->p() == to_->p(), "embed: fields of different characteristic");
    require(to_->degree() % from_->degree() == 0, "embed: m does not divide l");
    stride_ = static_cast<std::uint64_t>(to_->units()) / from_->units();
    map_.assign(from_->order(), 0);
    for (std::uint32_t k = 0; k < from_->units(); ++k) map_[from_->exp(k)] = to_->exp(stride_ * k);
  }
  const Field& source() const { return from_; }
  const Field& target() const { return to_; }
  std::uint64_t stride() const { return stride_; }
  std::uint32_t operator()(std::uint32_t code) const { return map_[code]; }
  FieldElement operator()(const FieldElement& x) const {
    require(x.owner().get() == from_.get(), "embed: element not in source field");
    return {to_, map_[x.code()]};
  }
  /// Inverse image of y when y lies in the subfield.
  bool restrict(std::uint32_t y, std::uint32_t& out) const {
    if (y == 0) {
      out = 0;
      return true;
    }
    const std::uint64_t k = to_->log(y);
    if (k % stride_ != 0) return false;
    out = from_->exp(k / stride_);
    return true;
  }

 private:
  Field from_, to_;
  std::uint64_t stride_ = 1;
  std::vector<std::uint32_t> map_;
};

inline FieldElement embed(const FieldElement& x, const Field& target) {
  require(x.owner()->p() == target->p(), "embed: fields of different characteristic");
  require(target->degree() % x.owner()->degree() == 0, "embed: m does not divide l");
  if (x.is_zero()) return FieldElement::zero(target);
  const std::uint64_t stride = static_cast<std::uint64_t>(target->units()) / x.owner()->units();
  return {target, target->exp(stride * x.owner()->log(x.code()))};
}

/// The canonical quadratic extension GF(q^2) of x's field.
inline Field quadratic_extension(const Field& f) { return construct_field(f->p(), 2 * f->degree()); }

/// A square root of c inside GF(q^2); of the roots, the one with the smaller discrete log.
inline FieldElement sqrt_ext(const FieldElement& c) {
  require(!c.is_zero(), "sqrt_ext of zero");
  const Field big = quadratic_extension(c.owner());
  const std::uint64_t n = big->units();
  const std::uint64_t L = big->log(embed(c, big).code());
  if (n % 2 == 1) {
    // characteristic 2: squaring is bijective on units
    std::int64_t half = 0;
    solve_linear_congruence(2, static_cast<std::int64_t>(L), static_cast<std::int64_t>(n), half);
    return {big, big->exp(static_cast<std::uint64_t>(half))};
  }
  require(L % 2 == 0, "sqrt_ext: no square root in the quadratic extension");
  const std::uint64_t r1 = L / 2, r2 = L / 2 + n / 2;
  return {big, big->exp(std::min(r1, r2))};
}

}  // namespace crosschar
