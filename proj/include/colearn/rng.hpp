#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace colearn {

// splitmix64, used only to expand seeds into xoshiro state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with hand-rolled variate generation so that streams are
// byte-identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  // Stream `index` of the family rooted at `master_seed`. Distinct indices
  // give statistically independent streams; used one-per-trial.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t sm = master_seed;
    std::uint64_t a = splitmix64_next(sm);
    return Rng(a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate (> 0).
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Uniform on {0, ..., n-1}. Modulo bias is below 2^-50 for the n used here.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn proportionally to nonnegative weights with the given total.
  std::size_t discrete(const std::vector<double>& weights, double total) {
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace colearn
