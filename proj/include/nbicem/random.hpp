#pragma once

#include <cstdint>
#include <vector>

#include "nbicem/types.hpp"

namespace nbicem {

// splitmix64 step (Vigna). Used both as a stream generator for seed
// derivation and as a bit finalizer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Order-sensitive mix of a word sequence into one 64-bit seed.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x8BADF00D5EEDC0DEULL;
  for (std::uint64_t w : words) {
    h ^= w;
    h = splitmix64(h);
  }
  return h;
}

// One draw from CN(0, variance): total variance split evenly between the
// real and imaginary parts.
inline cxd complex_gaussian(Rng& rng, double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline VecXc complex_gaussian_vector(Rng& rng, int n, double variance) {
  if (variance <= 0.0) return VecXc::Zero(n);
  VecXc v(n);
  std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = cxd(re, im);
  }
  return v;
}

// k distinct indices drawn uniformly from {0, ..., n-1}, returned ascending.
// Partial Fisher-Yates; draw order is part of the determinism contract.
std::vector<int> sample_without_replacement(Rng& rng, int n, int k);

}  // namespace nbicem
