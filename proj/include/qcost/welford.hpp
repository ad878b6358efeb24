#pragma once

#include <cstddef>
#include <vector>

// Streaming mean/variance accumulation (Welford) with deterministic
// pairwise combination.  Used by the ensemble integrators: each worker chunk
// accumulates its own moments and chunks are folded in index order, so the
// result is bitwise independent of thread scheduling.  Welford also keeps an
// ensemble of identical values at variance exactly 0, which the
// deterministic-limit contracts rely on.

namespace qcost::numerics {

/// Running first/second moments of one scalar sequence.
struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  ///< sum of squared deviations from the running mean

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  /// Merge another accumulator into this one (Chan et al. combination).
  void merge(const Moments& other) noexcept {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    mean += delta * nb / (na + nb);
    m2 += other.m2 + delta * delta * na * nb / (na + nb);
    count += other.count;
  }

  /// Unbiased sample variance; 0 when fewer than two values were seen.
  double variance() const noexcept {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
};

/// One Moments accumulator per time-sample index.
using MomentsColumn = std::vector<Moments>;

}  // namespace qcost::numerics
