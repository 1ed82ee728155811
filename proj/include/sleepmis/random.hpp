#pragma once

#include <cstdint>

namespace sleepmis {

// splitmix64, used for seeding and hashing seeds with node ids.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoroshiro128++. Hand-rolled so results are identical across platforms
// and standard library versions.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    s0_ = splitmix64(s);
    s1_ = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t a = s0_, b = s1_;
    const std::uint64_t result = rotl(a + b, 17) + a;
    const std::uint64_t c = b ^ a;
    s0_ = rotl(a, 49) ^ c ^ (c << 21);
    s1_ = rotl(c, 28);
    return result;
  }

  // uniform in [0,1) with 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_double() < p;
  }

  // uniform in [0, bound) via rejection-free Lemire reduction
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s0_, s1_;
};

// Per-node substream: independent of scheduling order by construction.
inline Rng make_node_rng(std::uint64_t run_seed, std::uint32_t node) {
  std::uint64_t s = run_seed ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(node) + 1));
  return Rng(splitmix64(s));
}

}  // namespace sleepmis
