#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ras {

// Deterministic random stream used everywhere in the library.
//
// std::mt19937_64 guarantees an identical raw bit stream for a given seed on
// every conforming implementation, but the standard <random> distributions do
// not (their algorithms are implementation-defined).  The mappings below are
// therefore spelled out by hand so that a (seed, call sequence) pair yields
// bitwise-identical doubles on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1): top 53 bits of one engine draw.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Standard normal via the Marsaglia polar method.  Generates pairs; the
  // second value is cached, so calls alternate between two and zero engine
  // draw rounds.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = uniform_symmetric();
      v = uniform_symmetric();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * m;
    has_cached_ = true;
    return u * m;
  }

  // Raw 64-bit draw, exposed for seed derivation.
  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Derives a child seed from a base seed and an index, so that independent
// streams (one per run, per table cell, ...) can be created in any order or
// in parallel without sharing state.  SplitMix64 finalizer: good avalanche,
// trivially reproducible.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ras
