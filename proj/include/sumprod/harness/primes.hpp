#pragma once

#include <cstdint>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_core.hpp"

namespace sumprod::harness {

/// Primes in [lo, hi] by a sieve of Eratosthenes; bounds inclusive.
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  if (hi > (u64{1} << 32)) throw Error(ErrorKind::OutOfRange, "prime range above 2^32");
  std::vector<bool> composite(hi + 1, false);
  for (u64 i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (u64 i = std::max<u64>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

/// Odd primes (p >= 3) in [lo, hi].
inline std::vector<u64> odd_primes_in_range(u64 lo, u64 hi) { return primes_in_range(std::max<u64>(lo, 3), hi); }

/// `count` entries spread evenly over `xs` (first and last always kept).
inline std::vector<u64> sample_evenly(const std::vector<u64>& xs, std::size_t count) {
  if (count >= xs.size() || count == 0) return xs;
  if (count == 1) return {xs.back()};
  std::vector<u64> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(xs[i * (xs.size() - 1) / (count - 1)]);
  return out;
}

}  // namespace sumprod::harness
