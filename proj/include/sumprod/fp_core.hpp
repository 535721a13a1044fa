#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sumprod/error.hpp"

#if !defined(__SIZEOF_INT128__)
#error "sumprod requires unsigned __int128 (GCC/Clang)."
#endif

namespace sumprod {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

/// Residues are always kept canonical, 0 <= x < p.
using elem = std::uint64_t;

inline constexpr u64 kMaxModulus = u64{1} << 62;

/// Inverse / discrete-log tables are only materialized below this modulus.
/// Above it the context still answers field-info style queries through
/// exponentiation, but table-backed operations raise TooLarge.
inline constexpr u64 kTableLimit = u64{1} << 25;

namespace modarith {

constexpr u64 mul(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add(u64 a, u64 b, u64 m) noexcept {
  const u64 t = m - b;
  return a >= t ? a - t : a + b;
}

constexpr u64 sub(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + (m - b); }

constexpr u64 pow(u64 base, u64 e, u64 m) noexcept {
  u64 r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) r = mul(r, base, m);
    base = mul(base, base, m);
    e >>= 1U;
  }
  return r;
}

/// Deterministic Miller-Rabin; the first twelve prime bases are a complete
/// witness set for every n < 3.3e24, in particular for all 64-bit n.
constexpr bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : small) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : small) {
    u64 x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho; n must be composite and odd.
inline u64 pollard_brent(u64 n, u64 c) {
  auto f = [&](u64 x) { return add(mul(x, x, n), c, n); };
  u64 y = 2, g = 1, q = 1, x = 2, ys = 2;
  const u64 m = 128;
  u64 r = 1;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = f(y);
        q = mul(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
    }
    r <<= 1U;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) {
      out.push_back(q);
      factor_into(n / q, out);
      return;
    }
  }
  for (u64 c = 1;; ++c) {
    const u64 d = pollard_brent(n, c);
    if (d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct prime factors of n, ascending.
inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace modarith

/// A validated prime field F_p with its inversion map and a primitive root.
///
/// Copies share the underlying tables. The discrete-log table is built on
/// first request under a std::call_once, so concurrent first access from
/// several threads performs exactly one build.
class FieldCtx {
 public:
  u64 p() const noexcept { return s_->p; }

  /// Least primitive root of F_p*.
  elem primitive_root() const noexcept { return s_->g; }

  bool has_tables() const noexcept { return !s_->inv.empty(); }

  elem add(elem a, elem b) const noexcept { return modarith::add(a, b, s_->p); }
  elem sub(elem a, elem b) const noexcept { return modarith::sub(a, b, s_->p); }
  elem neg(elem a) const noexcept { return a == 0 ? 0 : s_->p - a; }
  elem mul(elem a, elem b) const noexcept { return modarith::mul(a, b, s_->p); }
  elem pow(elem a, u64 e) const noexcept { return modarith::pow(a, e, s_->p); }

  elem inv(elem x) const {
    if (x == 0 || x >= s_->p) {
      throw Error(ErrorKind::ZeroInput, "no inverse for " + std::to_string(x) + " mod " + std::to_string(s_->p));
    }
    if (has_tables()) return s_->inv[x];
    return pow(x, s_->p - 2);
  }

  /// inv_table()[x] = x^-1 for x != 0; entry 0 is unset (stored as 0).
  std::span<const std::uint32_t> inv_table() const {
    require_tables("inverse table");
    return s_->inv;
  }

  /// Discrete log to base primitive_root(), in [0, p-2].
  u64 dlog(elem x) const {
    if (x == 0 || x >= s_->p) throw Error(ErrorKind::ZeroInput, "dlog of zero");
    return dlog_table()[x];
  }

  /// g^k for k reduced mod p-1.
  elem exp_g(u64 k) const { return exp_table()[k % (s_->p - 1)]; }

  /// dlog_table()[g^k] = k; entry 0 unset.
  std::span<const std::uint32_t> dlog_table() const {
    ensure_log_tables();
    return s_->dlog;
  }

  /// exp_table()[k] = g^k for k in [0, p-2].
  std::span<const std::uint32_t> exp_table() const {
    ensure_log_tables();
    return s_->exp;
  }

  friend FieldCtx make_field(u64 p);

 private:
  struct State {
    u64 p = 0;
    elem g = 0;
    std::vector<std::uint32_t> inv;
    mutable std::once_flag log_once;
    mutable std::vector<std::uint32_t> dlog;
    mutable std::vector<std::uint32_t> exp;
  };

  explicit FieldCtx(std::shared_ptr<State> s) : s_(std::move(s)) {}

  void require_tables(const char* what) const {
    if (!has_tables()) {
      throw Error(ErrorKind::TooLarge, std::string(what) + " unavailable for p = " + std::to_string(s_->p));
    }
  }

  void ensure_log_tables() const {
    require_tables("discrete-log table");
    std::call_once(s_->log_once, [s = s_.get()] {
      const u64 n = s->p - 1;
      s->exp.resize(n);
      s->dlog.assign(s->p, 0);
      u64 x = 1;
      for (u64 k = 0; k < n; ++k) {
        s->exp[k] = static_cast<std::uint32_t>(x);
        s->dlog[x] = static_cast<std::uint32_t>(k);
        x = modarith::mul(x, s->g, s->p);
      }
    });
  }

  std::shared_ptr<State> s_;
};

/// Validates p and precomputes the inverse table (for p below kTableLimit)
/// and the least primitive root.
inline FieldCtx make_field(u64 p) {
  if (p < 3 || p >= kMaxModulus) {
    throw Error(ErrorKind::OutOfRange, "modulus " + std::to_string(p) + " outside [3, 2^62)");
  }
  if (!modarith::is_prime(p)) {
    throw Error(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  }
  auto s = std::make_shared<FieldCtx::State>();
  s->p = p;
  if (p < kTableLimit) {
    // inv[x] = -(p / x) * inv[p mod x]
    s->inv.assign(p, 0);
    s->inv[1] = 1;
    for (u64 x = 2; x < p; ++x) {
      s->inv[x] = static_cast<std::uint32_t>(modarith::mul(p - p / x, s->inv[p % x], p));
    }
  }
  const auto qs = modarith::prime_factors(p - 1);
  for (elem g = 2;; ++g) {
    bool generator = true;
    for (u64 q : qs) {
      if (modarith::pow(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      s->g = g;
      break;
    }
  }
  return FieldCtx(std::move(s));
}

/// Euler's criterion.
inline bool is_square(const FieldCtx& ctx, elem x) {
  if (x % ctx.p() == 0) throw Error(ErrorKind::ZeroInput, "is_square(0)");
  return ctx.pow(x % ctx.p(), (ctx.p() - 1) / 2) == 1;
}

inline elem least_nonsquare(const FieldCtx& ctx) {
  for (elem r = 2;; ++r) {
    if (!is_square(ctx, r)) return r;
  }
}

}  // namespace sumprod
