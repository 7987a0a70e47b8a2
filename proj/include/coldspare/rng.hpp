#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coldspare {

/// splitmix64 scramble, used to derive well-separated seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4be30d86269cdULL;
  return x ^ (x >> 31);
}

/// Seed for an independent per-trial substream. Trials drawn from these
/// streams are reproducible regardless of execution order, so they may run
/// concurrently.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return splitmix64(master_seed ^ splitmix64(trial + 1));
}

/// mt19937_64 with hand-rolled draws. std:: distributions are
/// implementation-defined, so sampling directly keeps output byte-identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [lo, hi] inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;  // hi >= lo; span 0 means full range
    if (span == 0) return gen_();
    return lo + static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(gen_()) * span) >> 64);
  }

  std::size_t index(std::size_t size) {
    return static_cast<std::size_t>(uniform_int(0, size - 1));
  }

  /// Exponential waiting time with the given rate.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace coldspare
