#pragma once

#include <cstdint>
#include <random>

namespace phero {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and a stream index,
// so that per-colony streams never alias regardless of how close the master
// seeds of two runs are.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  splitmix64(s);
  s ^= 0xA0761D6478BD642Full * (stream + 1);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b >> 1);
}

// Deterministic draws on top of std::mt19937_64. The raw-output-to-value
// mappings are pinned here instead of using <random> distributions, whose
// algorithms are implementation-defined.
class Rng {
public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(raw()) * n) >> 64);
  }

  bool chance(double p) { return uniform01() < p; }

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace phero
