#pragma once

// Seedable randomness with documented stream splitting.
//
// Every consumer of randomness owns a named substream derived from the master
// seed through substream(): one substream per (experiment, leg, replicate).
// Replays are bit-exact: the same (seed, path) always yields the same draws.
// Site-indexed uniforms (site_uniform) are stateless, so the same lattice site
// sees the same uniform regardless of window size or scale.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace lgsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive a child seed from a master seed and a path of integer labels.
inline std::uint64_t substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p));
  return h;
}

// Stateless per-site uniform in [0,1), shared across windows and scales.
inline double site_uniform(std::uint64_t seed, long long site) {
  std::uint64_t z = static_cast<std::uint64_t>(site) * 0xd1342543de82ef95ULL;
  std::uint64_t h = splitmix64(seed ^ z);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1), used for exponentials so waiting times are positive.
  double uniform_open() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  // Unbiased integer in [0, n) (Lemire with rejection).
  std::uint64_t below(std::uint64_t n) {
    while (true) {
      std::uint64_t x = gen_();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= n || lo >= (-n) % n) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lgsim
