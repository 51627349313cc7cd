#pragma once

// Seeded randomness with draws that do not depend on the standard library's
// distribution implementations, so reports are identical across toolchains.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace crosschar {

class Rng {
 public:
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {}) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (auto s : stream) {
      words.push_back(static_cast<std::uint32_t>(s));
      words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    eng_.seed(seq);
  }

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace crosschar
