#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Deterministic random helpers. std::*_distribution output is
// implementation-defined, so every draw used for reproducible artifacts
// (datasets, init, shuffles, dropout masks) goes through these instead.
namespace dnsmos::rng {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable seed derivation for independent substreams.
inline uint64_t derive(uint64_t base, uint64_t tag) {
  uint64_t s = base ^ (0x9e3779b97f4a7c15ULL + tag * 0xff51afd7ed558ccdULL);
  splitmix64(s);
  return splitmix64(s);
}

inline uint64_t derive(uint64_t base, uint64_t tag1, uint64_t tag2) {
  return derive(derive(base, tag1), tag2);
}

inline uint64_t derive(uint64_t base, uint64_t tag1, uint64_t tag2, uint64_t tag3) {
  return derive(derive(base, tag1, tag2), tag3);
}

using Engine = std::mt19937_64;

inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// Bias for small n is ~n/2^64, irrelevant here.
inline uint64_t uniform_index(Engine& eng, uint64_t n) { return eng() % n; }

inline double normal(Engine& eng) {
  // Box-Muller, one fresh pair per call so draw counts stay predictable.
  double u1 = uniform01(eng);
  double u2 = uniform01(eng);
  while (u1 <= 0.0) u1 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::vector<size_t> shuffled_indices(size_t n, Engine& eng) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (size_t i = n; i > 1; --i) {
    size_t j = static_cast<size_t>(uniform_index(eng, i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace dnsmos::rng
