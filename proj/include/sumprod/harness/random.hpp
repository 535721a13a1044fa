#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_set.hpp"

namespace sumprod::harness {

/// Seeded generator on std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws use our own rejection step instead of
/// std::uniform_int_distribution, which is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform `size`-subset of F_p \ {0} by a partial Fisher-Yates shuffle.
inline FpSet random_subset(Rng& rng, u64 p, u64 size) {
  if (size < 1 || size > p - 1) {
    throw Error(ErrorKind::BadSize, "random_subset size " + std::to_string(size) + " outside [1, p-1]");
  }
  std::vector<elem> pool(p - 1);
  std::iota(pool.begin(), pool.end(), elem{1});
  for (u64 i = 0; i < size; ++i) {
    const u64 j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  return FpSet::from_elements(p, std::span<const elem>(pool.data(), size));
}

inline FpSet random_subset(u64 p, u64 size, std::uint64_t seed) {
  Rng rng(seed);
  return random_subset(rng, p, size);
}

/// Random subset of F_p* of uniformly drawn size in [1, p - 1].
inline FpSet random_subset_any_size(Rng& rng, u64 p) { return random_subset(rng, p, rng.between(1, p - 1)); }

/// A union A^-1 for a random `size`-subset A; inverse-closed by construction.
inline FpSet random_symmetric(Rng& rng, const FieldCtx& ctx, u64 size) {
  const auto a = random_subset(rng, ctx.p(), size);
  return set_union(a, inverse_set(ctx, a));
}

}  // namespace sumprod::harness
