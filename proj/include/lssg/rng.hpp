#pragma once

#include <cstdint>
#include <initializer_list>

// Deterministic keyed randomness. Everything random in this project flows through
// these helpers so that a (seed, purpose, counter) triple fully determines the draw,
// independent of platform and of the order in which unrelated draws happen.
// std::shuffle / std::uniform_int_distribution are avoided on purpose: their output
// is implementation-defined and would break byte-reproducibility claims.

namespace lssg {

// splitmix64 finalizer: a fixed 64-bit permutation with good avalanche behaviour.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash a short word sequence (seed, purpose tag, indices, ...) into one 64-bit key.
inline uint64_t hash_words(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x243f6a8885a308d3ULL;  // pi fraction, arbitrary fixed start
  for (uint64_t w : words) h = mix64(h ^ w);
  return h;
}

// Fixed purpose tags keep independent random streams from aliasing each other.
namespace rng_tag {
constexpr uint64_t kRegularGen = 0x01;
constexpr uint64_t kWeightedGrid = 0x02;
constexpr uint64_t kLazyOracle = 0x03;
constexpr uint64_t kCenters = 0x04;
constexpr uint64_t kEstimator = 0x05;
constexpr uint64_t kCoins = 0x06;
constexpr uint64_t kHarness = 0x07;
constexpr uint64_t kExpansion = 0x08;
constexpr uint64_t kDistinguish = 0x09;
}  // namespace rng_tag

// Counter-mode stream: next() is mix64 over (key, counter). Stateless apart from the
// counter, so a stream can be reconstructed from its key alone.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  uint64_t next() { return hash_words({key_, counter_++}); }

  // Uniform in [0, bound) via rejection; exact, no modulo bias.
  uint64_t below(uint64_t bound) {
    // bound == 0 is a caller bug; loop below would never terminate.
    if (bound == 0) return 0;
    const uint64_t limit = (UINT64_MAX / bound) * bound;
    uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

  bool coin() { return next() & 1ULL; }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Deterministic Fisher-Yates over any indexable container.
template <typename Vec>
void keyed_shuffle(Vec& v, uint64_t key) {
  CounterRng rng(key);
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace lssg
