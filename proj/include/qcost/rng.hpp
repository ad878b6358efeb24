#pragma once

#include <cmath>
#include <cstdint>

// Counter-based random number generation.
//
// Every Monte-Carlo trajectory owns an independent stream derived from
// (seed, stream index) alone.  Because a stream's n-th variate depends only
// on (seed, stream, n), ensemble results are bitwise reproducible no matter
// how trajectories are scheduled across threads.

namespace qcost::numerics {

namespace detail {

// splitmix64 output function (Steele, Lea, Flood 2014).  Statistically solid
// as a bijective mixer and cheap enough to call once per variate.
inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// One independent stream of uniform / Gaussian variates.
///
/// The i-th raw word is splitmix64(key + i) where the key is itself a hash
/// of (seed, stream); consecutive counters land in unrelated points of the
/// splitmix64 orbit, so streams never collide in practice.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(detail::splitmix64(detail::splitmix64(seed) ^
                                detail::splitmix64(stream ^ 0x5851f42d4c957f2dull))) {}

  /// Next raw 64-bit word.
  std::uint64_t next_u64() noexcept { return detail::splitmix64(key_ + counter_++); }

  /// Uniform double in (0, 1]; never returns 0 so log() below stays finite.
  double uniform() noexcept {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  /// Standard normal variate via Box-Muller.  Pairs are cached, so each
  /// stream consumes exactly one pair of uniforms per two normals, in a
  /// fixed order independent of any other stream.
  double normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qcost::numerics
