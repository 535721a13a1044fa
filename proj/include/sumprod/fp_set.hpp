#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_core.hpp"

namespace sumprod {

namespace bits {

inline std::size_t word_count(u64 n) { return static_cast<std::size_t>((n + 63) / 64); }

inline bool test(std::span<const u64> w, u64 i) { return (w[i >> 6] >> (i & 63)) & 1U; }

inline void set(std::span<u64> w, u64 i) { w[i >> 6] |= u64{1} << (i & 63); }

// Up to 64 bits starting at bit `pos`; bits past the end of `w` read as zero.
inline u64 fetch(std::span<const u64> w, u64 pos) {
  const std::size_t k = pos >> 6;
  const unsigned o = pos & 63;
  if (k >= w.size()) return 0;
  u64 v = w[k] >> o;
  if (o != 0 && k + 1 < w.size()) v |= w[k + 1] << (64 - o);
  return v;
}

// OR the low `len` (<= 64) bits of `v` into `w` starting at bit `pos`.
inline void or_at(std::span<u64> w, u64 pos, u64 v, unsigned len) {
  if (len == 0) return;
  if (len < 64) v &= (u64{1} << len) - 1;
  const std::size_t k = pos >> 6;
  const unsigned o = pos & 63;
  w[k] |= v << o;
  if (o != 0 && o + len > 64) w[k + 1] |= v >> (64 - o);
}

// dst[dst_pos + i] |= src[src_pos + i] for i < len.
inline void or_range(std::span<u64> dst, u64 dst_pos, std::span<const u64> src, u64 src_pos, u64 len) {
  for (u64 i = 0; i < len; i += 64) {
    const auto chunk = static_cast<unsigned>(std::min<u64>(64, len - i));
    or_at(dst, dst_pos + i, fetch(src, src_pos + i), chunk);
  }
}

/// dst |= src rotated by `shift` inside the cyclic group Z/n, i.e. bit i of
/// src lands on bit (i + shift) mod n. Word-parallel, O(n / 64).
inline void or_rotated(std::span<u64> dst, std::span<const u64> src, u64 n, u64 shift) {
  shift %= n;
  or_range(dst, shift, src, 0, n - shift);
  if (shift != 0) or_range(dst, 0, src, n - shift, shift);
}

inline u64 popcount(std::span<const u64> w) {
  u64 c = 0;
  for (u64 x : w) c += static_cast<u64>(std::popcount(x));
  return c;
}

/// Cyclic sumset of two bit-vectors over Z/n by shifted-OR over the sparser
/// operand.
inline std::vector<u64> cyclic_sumset(std::span<const u64> a, u64 card_a, std::span<const u64> b, u64 card_b, u64 n) {
  std::vector<u64> out(word_count(n), 0);
  if (card_a == 0 || card_b == 0) return out;
  if (card_a > card_b) std::swap(a, b);
  u64 added = 0;
  for (u64 i = 0; i < n; ++i) {
    if (!test(a, i)) continue;
    or_rotated(out, b, n, i);
    // Early exit once saturated; checked sparsely to keep the loop cheap.
    if ((++added & 63) == 0 && popcount(out) == n) break;
  }
  return out;
}

}  // namespace bits

/// A subset of F_p stored as a length-p bit-vector with cached cardinality.
/// Immutable value type: every operation returns a new set.
class FpSet {
 public:
  FpSet() = default;

  /// Empty set over F_p.
  explicit FpSet(u64 p) : p_(p), words_(bits::word_count(p), 0) {}

  /// Takes ownership of a raw bit-vector; bits at positions >= p are cleared.
  FpSet(u64 p, std::vector<u64> words) : p_(p), words_(std::move(words)) {
    words_.resize(bits::word_count(p), 0);
    if (p % 64 != 0 && !words_.empty()) words_.back() &= (u64{1} << (p % 64)) - 1;
    card_ = bits::popcount(words_);
  }

  static FpSet from_elements(u64 p, std::span<const elem> xs) {
    std::vector<u64> w(bits::word_count(p), 0);
    for (elem x : xs) {
      if (x >= p) {
        throw Error(ErrorKind::OutOfRange, std::to_string(x) + " is not a residue mod " + std::to_string(p));
      }
      bits::set(w, x);
    }
    return FpSet(p, std::move(w));
  }

  static FpSet from_elements(u64 p, std::initializer_list<elem> xs) {
    return from_elements(p, std::span<const elem>(xs.begin(), xs.size()));
  }

  static FpSet full(u64 p) {
    std::vector<u64> w(bits::word_count(p), ~u64{0});
    return FpSet(p, std::move(w));
  }

  /// F_p \ {0}.
  static FpSet nonzero(u64 p) {
    std::vector<u64> w(bits::word_count(p), ~u64{0});
    w[0] &= ~u64{1};
    return FpSet(p, std::move(w));
  }

  u64 p() const noexcept { return p_; }
  u64 size() const noexcept { return card_; }
  bool empty() const noexcept { return card_ == 0; }
  bool contains(elem x) const noexcept { return x < p_ && bits::test(words_, x); }
  std::span<const u64> words() const noexcept { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      u64 w = words_[k];
      while (w != 0) {
        const auto b = static_cast<u64>(std::countr_zero(w));
        f(static_cast<elem>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<elem> elements() const {
    std::vector<elem> out;
    out.reserve(card_);
    for_each([&](elem x) { out.push_back(x); });
    return out;
  }

  friend bool operator==(const FpSet& a, const FpSet& b) noexcept {
    return a.p_ == b.p_ && a.words_ == b.words_;
  }

 private:
  u64 p_ = 0;
  std::vector<u64> words_;
  u64 card_ = 0;
};

/// Counts of representations indexed by residue.
struct RepFunction {
  std::vector<std::int64_t> values;

  std::int64_t operator[](elem y) const { return values[y]; }

  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto v : values) t += v;
    return t;
  }

  /// Sum of squares over all residues, optionally excluding zero.
  u128 square_sum(bool skip_zero = false) const {
    u128 t = 0;
    for (std::size_t y = skip_zero ? 1 : 0; y < values.size(); ++y) {
      t += static_cast<u128>(values[y]) * static_cast<u128>(values[y]);
    }
    return t;
  }

  u64 support_size(bool skip_zero = false) const {
    u64 c = 0;
    for (std::size_t y = skip_zero ? 1 : 0; y < values.size(); ++y) c += values[y] != 0;
    return c;
  }
};

namespace detail {

inline void require_same_modulus(const FpSet& a, const FpSet& b) {
  if (a.p() != b.p()) {
    throw Error(ErrorKind::ModulusMismatch,
                "sets over p = " + std::to_string(a.p()) + " and p = " + std::to_string(b.p()));
  }
}

inline void require_field(const FieldCtx& ctx, const FpSet& a) {
  if (ctx.p() != a.p()) {
    throw Error(ErrorKind::ModulusMismatch,
                "set over p = " + std::to_string(a.p()) + " used with field p = " + std::to_string(ctx.p()));
  }
}

inline void require_no_zero(const FpSet& a, const char* op) {
  if (a.contains(0)) throw Error(ErrorKind::ZeroInSet, std::string(op) + ": set contains 0");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Boolean algebra

inline FpSet set_union(const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] |= b.words()[k];
  return FpSet(a.p(), std::move(w));
}

inline FpSet set_intersection(const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] &= b.words()[k];
  return FpSet(a.p(), std::move(w));
}

inline FpSet set_difference(const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] &= ~b.words()[k];
  return FpSet(a.p(), std::move(w));
}

inline FpSet complement(const FpSet& a) {
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (auto& x : w) x = ~x;
  return FpSet(a.p(), std::move(w));
}

// ---------------------------------------------------------------------------
// Set arithmetic

/// A + B by word-parallel shifted OR, O(p * min(|A|,|B|) / 64).
inline FpSet sumset(const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  return FpSet(a.p(), bits::cyclic_sumset(a.words(), a.size(), b.words(), b.size(), a.p()));
}

/// A - B.
inline FpSet negate(const FpSet& a) {
  std::vector<u64> w(bits::word_count(a.p()), 0);
  a.for_each([&](elem x) { bits::set(w, x == 0 ? 0 : a.p() - x); });
  return FpSet(a.p(), std::move(w));
}

inline FpSet difference_set(const FpSet& a, const FpSet& b) { return sumset(a, negate(b)); }

/// rA for r != 0.
inline FpSet dilate(const FpSet& a, elem r) {
  const u64 p = a.p();
  if (r % p == 0) throw Error(ErrorKind::ZeroDilation, "dilation by 0");
  std::vector<u64> w(bits::word_count(p), 0);
  a.for_each([&](elem x) { bits::set(w, modarith::mul(x, r % p, p)); });
  return FpSet(p, std::move(w));
}

/// A + s.
inline FpSet translate(const FpSet& a, elem s) {
  std::vector<u64> w(bits::word_count(a.p()), 0);
  bits::or_rotated(w, a.words(), a.p(), s % a.p());
  return FpSet(a.p(), std::move(w));
}

/// {a^-1 : a in A}.
inline FpSet inverse_set(const FieldCtx& ctx, const FpSet& a) {
  detail::require_field(ctx, a);
  detail::require_no_zero(a, "inverse_set");
  std::vector<u64> w(bits::word_count(a.p()), 0);
  a.for_each([&](elem x) { bits::set(w, ctx.inv(x)); });
  return FpSet(a.p(), std::move(w));
}

/// AB. Nonzero parts are multiplied as a cyclic sumset of discrete logs in
/// Z/(p-1) when the field carries log tables; small products fall back to
/// pairwise enumeration.
inline FpSet productset(const FieldCtx& ctx, const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  detail::require_field(ctx, a);
  const u64 p = a.p();
  std::vector<u64> w(bits::word_count(p), 0);
  if (a.empty() || b.empty()) return FpSet(p, std::move(w));
  if (a.contains(0) || b.contains(0)) bits::set(w, 0);

  const u64 na = a.size() - (a.contains(0) ? 1 : 0);
  const u64 nb = b.size() - (b.contains(0) ? 1 : 0);
  if (na == 0 || nb == 0) return FpSet(p, std::move(w));

  if (!ctx.has_tables() || std::max(na, nb) <= p / 64 + 1) {
    a.for_each([&](elem x) {
      if (x == 0) return;
      b.for_each([&](elem y) {
        if (y != 0) bits::set(w, modarith::mul(x, y, p));
      });
    });
    return FpSet(p, std::move(w));
  }

  const u64 n = p - 1;
  const auto log = ctx.dlog_table();
  const auto exp = ctx.exp_table();
  auto to_logs = [&](const FpSet& s) {
    std::vector<u64> lw(bits::word_count(n), 0);
    s.for_each([&](elem x) {
      if (x != 0) bits::set(lw, log[x]);
    });
    return lw;
  };
  const auto la = to_logs(a);
  const auto lb = to_logs(b);
  const auto ls = bits::cyclic_sumset(la, na, lb, nb, n);
  for (u64 k = 0; k < n; ++k) {
    if (bits::test(ls, k)) bits::set(w, exp[k]);
  }
  return FpSet(p, std::move(w));
}

/// A(A+A) = {a(b+c) : a, b, c in A}.
inline FpSet a_aplusa(const FieldCtx& ctx, const FpSet& a) {
  detail::require_field(ctx, a);
  return productset(ctx, a, sumset(a, a));
}

/// Membership test x in A(A+A) given a precomputed A+A; O(|A|).
inline bool in_a_aplusa(const FieldCtx& ctx, const FpSet& a, const FpSet& a_plus_a, elem x) {
  if (x == 0) return a.contains(0) || (!a.empty() && a_plus_a.contains(0));
  bool hit = false;
  a.for_each([&](elem y) {
    if (!hit && y != 0 && a_plus_a.contains(ctx.mul(x, ctx.inv(y)))) hit = true;
  });
  return hit;
}

inline bool in_a_aplusa(const FieldCtx& ctx, const FpSet& a, elem x) {
  detail::require_field(ctx, a);
  return in_a_aplusa(ctx, a, sumset(a, a), x % ctx.p());
}

/// (F_p \ {0}) \ A(A+A).
inline FpSet missing_elements(const FieldCtx& ctx, const FpSet& a) {
  return set_difference(FpSet::nonzero(a.p()), a_aplusa(ctx, a));
}

/// A_s = A intersect (A + s).
inline FpSet slice(const FpSet& a, elem s) { return set_intersection(a, translate(a, s)); }

// ---------------------------------------------------------------------------
// Representation functions

/// r1(y) = #{(a,b) in A x A : y = x a^-1 - b}.
inline RepFunction rep_r1(const FieldCtx& ctx, const FpSet& a, elem x) {
  detail::require_field(ctx, a);
  if (x % ctx.p() == 0) throw Error(ErrorKind::ZeroTarget, "rep_r1 with x = 0");
  detail::require_no_zero(a, "rep_r1");
  RepFunction r{std::vector<std::int64_t>(a.p(), 0)};
  const auto xs = a.elements();
  for (elem u : xs) {
    const elem t = ctx.mul(x % ctx.p(), ctx.inv(u));
    for (elem b : xs) ++r.values[ctx.sub(t, b)];
  }
  return r;
}

/// r2(y) = #{(c,d) in A x A : c + d != 0, y = x (c+d)^-1}.
inline RepFunction rep_r2(const FieldCtx& ctx, const FpSet& a, elem x) {
  detail::require_field(ctx, a);
  if (x % ctx.p() == 0) throw Error(ErrorKind::ZeroTarget, "rep_r2 with x = 0");
  RepFunction r{std::vector<std::int64_t>(a.p(), 0)};
  const auto xs = a.elements();
  for (elem c : xs) {
    for (elem d : xs) {
      const elem s = ctx.add(c, d);
      if (s != 0) ++r.values[ctx.mul(x % ctx.p(), ctx.inv(s))];
    }
  }
  return r;
}

/// Ordered-pair sum counts r_{A+A}(s), O(|A|^2).
inline RepFunction sum_counts(const FpSet& a) {
  RepFunction r{std::vector<std::int64_t>(a.p(), 0)};
  const auto xs = a.elements();
  for (elem b : xs) {
    for (elem c : xs) ++r.values[modarith::add(b, c, a.p())];
  }
  return r;
}

/// Ordered-pair difference counts d(s) = #{(a,b) : a - b = s} = |A_s|.
inline RepFunction difference_counts(const FpSet& a) {
  RepFunction r{std::vector<std::int64_t>(a.p(), 0)};
  const auto xs = a.elements();
  for (elem u : xs) {
    for (elem v : xs) ++r.values[modarith::sub(u, v, a.p())];
  }
  return r;
}

/// rho(w) = #{(x,y,z) in A^3 : w = x(y+z)}, accumulated as
/// rho(w) = sum over a in A of r_{A+A}(a^-1 w); O(p |A|).
inline RepFunction rep_rho(const FieldCtx& ctx, const FpSet& a) {
  detail::require_field(ctx, a);
  const auto sums = sum_counts(a);
  RepFunction rho{std::vector<std::int64_t>(a.p(), 0)};
  a.for_each([&](elem x) {
    for (elem s = 0; s < a.p(); ++s) {
      if (const auto c = sums.values[s]; c != 0) rho.values[ctx.mul(x, s)] += c;
    }
  });
  return rho;
}

/// E+(A) = #{(a,b,c,d) in A^4 : a - b = c - d}.
inline u64 additive_energy(const FpSet& a) {
  return static_cast<u64>(difference_counts(a).square_sum());
}

/// E*(A) = #{(a,b,c,d) in A^4 : ab = cd}.
inline u64 multiplicative_energy(const FpSet& a) {
  detail::require_no_zero(a, "multiplicative_energy");
  std::vector<u64> counts(a.p(), 0);
  const auto xs = a.elements();
  for (elem u : xs) {
    for (elem v : xs) ++counts[modarith::mul(u, v, a.p())];
  }
  u64 e = 0;
  for (u64 c : counts) e += c * c;
  return e;
}

struct PopularDifferences {
  double epsilon = 0;   // 1 - E+/|A|^3
  u64 energy = 0;       // E+(A)
  FpSet popular;        // S
  bool exact = true;    // false if the floating guard band was needed
};

namespace detail {

// a * b with saturation flag.
inline bool mul_overflows(u128 a, u128 b, u128& out) {
  if (a != 0 && b > (~u128{0}) / a) return true;
  out = a * b;
  return false;
}

}  // namespace detail

/// S = {s in A - A : |A_s| > (1 - eps - p^(-1/3)) |A|} with E+ = (1 - eps)|A|^3.
///
/// Membership reduces to D < |A|^3 p^(-1/3) where D = E+ - |A|^2 |A_s|, decided
/// as D^3 p < |A|^9 in 128-bit integers. If that overflows, the comparison is
/// made in long double with a 1e-12 relative guard band and `exact` is cleared.
inline PopularDifferences popular_differences(const FpSet& a) {
  if (a.empty()) throw Error(ErrorKind::EmptySet, "popular_differences of empty set");
  const u64 p = a.p();
  const auto d = difference_counts(a);
  const u64 n = a.size();
  const u128 energy = d.square_sum();
  PopularDifferences out;
  out.energy = static_cast<u64>(energy);
  const long double n3 = static_cast<long double>(n) * n * n;
  out.epsilon = static_cast<double>(1.0L - static_cast<long double>(energy) / n3);

  u128 n9 = 0;
  bool n9_overflow = false;
  {
    u128 n3i = static_cast<u128>(n) * n * n;
    u128 n6 = 0;
    n9_overflow = detail::mul_overflows(n3i, n3i, n6) || detail::mul_overflows(n6, n3i, n9);
  }
  const long double rhs_real = n3 / std::cbrt(static_cast<long double>(p));

  std::vector<u64> w(bits::word_count(p), 0);
  for (elem s = 0; s < p; ++s) {
    const auto ds = d.values[s];
    if (ds == 0) continue;
    const u128 n2ds = static_cast<u128>(n) * n * static_cast<u128>(ds);
    bool member = false;
    if (n2ds >= energy) {
      member = true;
    } else {
      const u128 diff = energy - n2ds;
      u128 sq = 0, cube = 0, lhs = 0;
      if (!n9_overflow && !detail::mul_overflows(diff, diff, sq) && !detail::mul_overflows(sq, diff, cube) &&
          !detail::mul_overflows(cube, p, lhs)) {
        member = lhs < n9;
      } else {
        out.exact = false;
        member = static_cast<long double>(diff) < rhs_real * (1.0L - 1e-12L);
      }
    }
    if (member) bits::set(w, s);
  }
  out.popular = FpSet(p, std::move(w));
  return out;
}

/// Exact check of |S| >= |A| p^(-1/3), i.e. |S|^3 p >= |A|^3.
inline bool popular_bound_holds(u64 popular_size, u64 set_size, u64 p) {
  const u128 lhs = static_cast<u128>(popular_size) * popular_size * popular_size * p;
  const u128 rhs = static_cast<u128>(set_size) * set_size * set_size;
  return lhs >= rhs;
}

// ---------------------------------------------------------------------------
// Set literals: "1,2,5" or a little-endian hex bitmap "0x26" (bit i = residue i).

inline FpSet parse_set(u64 p, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '{' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '}' || s.back() == '\t' || s.back() == '\n'))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  std::vector<elem> xs;
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    const auto hex = text.substr(2);
    u64 bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
      const char c = *it;
      unsigned v = 0;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw Error(ErrorKind::ParseError, "bad hex digit in set literal");
      for (unsigned j = 0; j < 4; ++j) {
        if ((v >> j) & 1U) xs.push_back(bit + j);
      }
    }
    return FpSet::from_elements(p, xs);
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto tok = trim(text.substr(0, comma));
    if (tok.empty()) throw Error(ErrorKind::ParseError, "empty element in set literal");
    u64 v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad residue '" + std::string(tok) + "'");
      v = v * 10 + static_cast<u64>(c - '0');
    }
    xs.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return FpSet::from_elements(p, xs);
}

inline std::string format_set(const FpSet& a, char sep = ',') {
  std::string out;
  a.for_each([&](elem x) {
    if (!out.empty()) out += sep;
    out += std::to_string(x);
  });
  return out;
}

inline std::string format_hex(const FpSet& a) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  const u64 nibbles = (a.p() + 3) / 4;
  for (u64 i = nibbles; i-- > 0;) {
    const unsigned v = static_cast<unsigned>((a.words()[i / 16] >> ((i % 16) * 4)) & 0xF);
    if (out.empty() && v == 0 && i != 0) continue;
    out += digits[v];
  }
  return "0x" + out;
}

/// FNV-1a over the bit-vector, used as a compact identity in reports.
inline std::string digest(const FpSet& a) {
  u64 h = 1469598103934665603ULL;
  auto mix = [&](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(a.p());
  for (u64 w : a.words()) mix(w);
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xF];
  return out;
}

}  // namespace sumprod
