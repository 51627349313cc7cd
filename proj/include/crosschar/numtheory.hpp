#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crosschar {

/// Raised whenever an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

/// Largest admissible field order. `CROSSCHAR_BOUND` overrides the default 2^20.
inline std::uint64_t field_bound() {
  if (const char* env = std::getenv("CROSSCHAR_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v >= 2) return v;
  }
  return std::uint64_t{1} << 20;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t r = 1;
  b %= n;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, b, n);
    b = mulmod(b, b, n);
    e >>= 1U;
  }
  return r;
}

/// p^m, or 0 when the result would exceed `limit`.
inline std::uint64_t checked_pow(std::uint64_t p, unsigned m, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (v > limit / p) return 0;
    v *= p;
  }
  return v;
}

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  require(n >= 1, "multiplicative_order: modulus must be positive");
  require(gcd(a % n, n) == 1 || n == 1, "multiplicative_order: a not a unit mod n");
  if (n == 1) return 1;
  std::uint64_t order = 1;
  std::uint64_t x = a % n;
  while (x != 1) {
    x = mulmod(x, a, n);
    ++order;
  }
  return order;
}

/// Writes N = m * l with m the largest power of r dividing N.
inline std::pair<std::uint64_t, std::uint64_t> rpart_decompose(std::uint64_t N, std::uint64_t r) {
  require(N >= 1, "rpart_decompose: N must be >= 1");
  require(is_prime(r), "rpart_decompose: r must be prime");
  std::uint64_t m = 1;
  while (N % r == 0) {
    N /= r;
    m *= r;
  }
  return {m, N};
}

/// The r'-part of N (the largest divisor of N prime to r).
inline std::uint64_t rprime_part(std::uint64_t N, std::uint64_t r) {
  return rpart_decompose(N, r).second;
}

/// Smallest x in [0, n) with a*x = b (mod n), if any.
inline bool solve_linear_congruence(std::int64_t a, std::int64_t b, std::int64_t n, std::int64_t& x) {
  auto md = [](std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; };
  a = md(a, n);
  b = md(b, n);
  // extended Euclid on (a, n)
  std::int64_t old_r = a, r = n, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  const std::int64_t g = old_r == 0 ? n : old_r;
  if (b % g != 0) return false;
  const std::int64_t n_red = n / g;
  x = md(static_cast<std::int64_t>(static_cast<__int128>(md(old_s, n_red)) * (b / g) % n_red), n_red);
  return true;
}

}  // namespace crosschar
