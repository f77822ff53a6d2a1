#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace spoja {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014). The state advances by the odd constant
// 0x9e3779b97f4a7c15 and each output is the state passed through the
// finalizer below. Both pieces are fixed integer arithmetic, so a stream is
// reproducible bit-for-bit on any platform.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for the index-th trial (or sample) under a base seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(base) ^ (index * 0xd1b54a32d192ed03ULL + 0x9e3779b97f4a7c15ULL));
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on {-1, +1}.
  double sign() noexcept { return ((*this)() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

// Standard normal variates by Marsaglia's polar method. Written out rather
// than using std::normal_distribution because the latter's algorithm is
// implementation-defined, which would break cross-platform replay.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) noexcept : gen_(seed) {}

  double operator()() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double a, b, r;
    do {
      a = 2.0 * gen_.uniform() - 1.0;
      b = 2.0 * gen_.uniform() - 1.0;
      r = a * a + b * b;
    } while (r >= 1.0 || r == 0.0);
    const double f = std::sqrt(-2.0 * std::log(r) / r);
    spare_ = b * f;
    has_spare_ = true;
    return a * f;
  }

  double sign() noexcept { return gen_.sign(); }
  double uniform() noexcept { return gen_.uniform(); }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spoja
