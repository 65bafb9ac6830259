#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace msmd {

// SplitMix64 finalizer. Used to derive independent substreams from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of substream `stream` under `master`. Stable across platforms and thread counts.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Thin wrapper over mt19937_64. The engine's output sequence is fixed by the
// standard; the conversions below are ours so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Number of failures before the first success of a Bernoulli(p) sequence, 0 < p < 1.
  std::uint64_t geometric_skip(double log_q) {
    const double skip = std::floor(std::log(uniform_pos()) / log_q);
    if (!(skip < 1.8e19)) return UINT64_MAX;
    return static_cast<std::uint64_t>(skip);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace msmd
