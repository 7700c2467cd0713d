#pragma once
// Portable seeded randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use rejection sampling
// instead of std::uniform_int_distribution so results match across standard
// libraries. Independent substreams are seeded through SplitMix64.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace stacksolve {

using Rng = std::mt19937_64;

inline constexpr std::string_view kRngName = "mt19937_64/splitmix64";

/// One SplitMix64 step (Steele, Lea and Flood); advances `state`.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of substream `stream` under master seed `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (stream * 0xD1342543DE82EF95ull + 1);
  return splitmix64(t);
}

inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(substream_seed(seed, stream));
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return static_cast<std::size_t>(v % range);
  }
}

/// `k` distinct elements of `pool`, in draw order (partial Fisher-Yates).
template <class T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k, Rng& rng) {
  if (k > pool.size()) throw std::invalid_argument("sample larger than population");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace stacksolve
