#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_core.hpp"
#include "sumprod/fp_set.hpp"

namespace sumprod {

using cplx = std::complex<double>;

/// e(k / n) for k in [0, n).
inline std::vector<cplx> unit_roots(u64 n) {
  std::vector<cplx> r(n);
  for (u64 k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    r[k] = {std::cos(t), std::sin(t)};
  }
  return r;
}

/// Additive Fourier coefficients f^(t) = sum_x f(x) e_p(tx).
struct Spectrum {
  u64 p = 0;
  std::vector<cplx> coeffs;

  const cplx& operator[](elem t) const { return coeffs[t]; }
};

inline Spectrum additive_dft(u64 p, std::span<const cplx> f) {
  if (f.size() != p) throw Error(ErrorKind::LengthMismatch, "additive_dft: input length differs from p");
  const auto roots = unit_roots(p);
  Spectrum s{p, std::vector<cplx>(p)};
  for (u64 t = 0; t < p; ++t) {
    cplx acc = 0;
    u64 idx = 0;  // t * x mod p
    for (u64 x = 0; x < p; ++x, idx = modarith::add(idx, t, p)) acc += f[x] * roots[idx];
    s.coeffs[t] = acc;
  }
  return s;
}

inline Spectrum additive_dft(u64 p, std::span<const double> f) {
  std::vector<cplx> z(f.begin(), f.end());
  return additive_dft(p, std::span<const cplx>(z));
}

/// Transform of the indicator 1_A in O(p |A|).
inline Spectrum indicator_dft(const FpSet& a) {
  const u64 p = a.p();
  const auto roots = unit_roots(p);
  const auto xs = a.elements();
  Spectrum s{p, std::vector<cplx>(p)};
  for (u64 t = 0; t < p; ++t) {
    cplx acc = 0;
    for (elem x : xs) acc += roots[modarith::mul(t, x, p)];
    s.coeffs[t] = acc;
  }
  return s;
}

struct ParsevalCheck {
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  bool holds() const { return std::abs(lhs - rhs) <= tolerance; }
};

/// sum |f|^2 against (1/p) sum |f^|^2; tolerance 1e-9 p max|f|^2.
inline ParsevalCheck additive_parseval_check(u64 p, std::span<const cplx> f) {
  const auto s = additive_dft(p, f);
  ParsevalCheck c;
  double peak = 0;
  for (const auto& v : f) {
    c.lhs += std::norm(v);
    peak = std::max(peak, std::norm(v));
  }
  for (const auto& v : s.coeffs) c.rhs += std::norm(v);
  c.rhs /= static_cast<double>(p);
  c.tolerance = 1e-9 * static_cast<double>(p) * peak;
  return c;
}

struct GammaMax {
  double gamma = 0;
  elem frequency = 0;
};

/// gamma = max_{h != 0} |1_A^(h)| / |A|, with the smallest maximizing h.
inline GammaMax gamma_max(const FpSet& a) {
  if (a.empty()) throw Error(ErrorKind::EmptySet, "gamma_max of empty set");
  const auto s = indicator_dft(a);
  GammaMax g{-1.0, 1};
  const double n = static_cast<double>(a.size());
  for (elem h = 1; h < a.p(); ++h) {
    const double v = std::abs(s.coeffs[h]) / n;
    if (v > g.gamma + 1e-12) g = {v, h};
  }
  return g;
}

// ---------------------------------------------------------------------------
// Kloosterman sums and other exponential sums

/// K(a, b; p) = sum_{k != 0} e_p(ak + b k^-1); Weil gives |K| <= 2 sqrt(p).
inline cplx kloosterman(const FieldCtx& ctx, elem a, elem b, std::span<const cplx> roots) {
  const u64 p = ctx.p();
  a %= p;
  b %= p;
  if (a == 0 && b == 0) throw Error(ErrorKind::BothZero, "kloosterman(0, 0)");
  cplx acc = 0;
  for (elem k = 1; k < p; ++k) acc += roots[ctx.add(ctx.mul(a, k), ctx.mul(b, ctx.inv(k)))];
  return acc;
}

inline cplx kloosterman(const FieldCtx& ctx, elem a, elem b) {
  return kloosterman(ctx, a, b, unit_roots(ctx.p()));
}

/// Step d such that A = {s, s + d, ..., s + (n-1) d}; empty when A is not an
/// arithmetic progression. Singletons, pairs and the full field report d = 1
/// or the pair difference.
inline std::optional<elem> progression_step(const FpSet& a) {
  const u64 p = a.p();
  const u64 n = a.size();
  if (n == 0) return std::nullopt;
  if (n == 1 || n == p) return elem{1};
  // A is an AP of step d iff exactly n - 1 of its elements have their
  // d-successor inside A (one arc on the cycle generated by d).
  const auto xs = a.elements();
  if (n == 2) return modarith::sub(xs[1], xs[0], p);
  for (elem d = 1; d < p; ++d) {
    u64 links = 0;
    for (elem x : xs) links += a.contains(modarith::add(x, d, p));
    if (links == n - 1) return d;
  }
  return std::nullopt;
}

struct NormalizedSum {
  double value = 0;  // the measured modulus or total
  double scale = 0;  // normalizer (sqrt(p) log p or p log p)
  double ratio() const { return scale > 0 ? value / scale : 0; }
};

/// |sum_{y in P} e_p(r y^-1)| and its ratio to sqrt(p) log p.
inline NormalizedSum incomplete_kloosterman(const FieldCtx& ctx, const FpSet& prog, elem r) {
  detail::require_field(ctx, prog);
  detail::require_no_zero(prog, "incomplete_kloosterman");
  if (r % ctx.p() == 0) throw Error(ErrorKind::ZeroFrequency, "incomplete_kloosterman at r = 0");
  if (!progression_step(prog)) throw Error(ErrorKind::NotAProgression, "incomplete_kloosterman");
  const u64 p = ctx.p();
  const auto roots = unit_roots(p);
  cplx acc = 0;
  prog.for_each([&](elem y) { acc += roots[ctx.mul(r % p, ctx.inv(y))]; });
  const double dp = static_cast<double>(p);
  return {std::abs(acc), std::sqrt(dp) * std::log(dp)};
}

/// sum_r |1_P^(r)| and its ratio to p log p.
inline NormalizedSum ap_fourier_l1(const FpSet& prog) {
  if (!progression_step(prog)) throw Error(ErrorKind::NotAProgression, "ap_fourier_l1");
  const auto s = indicator_dft(prog);
  double total = 0;
  for (const auto& v : s.coeffs) total += std::abs(v);
  const double dp = static_cast<double>(prog.p());
  return {total, dp * std::log(dp)};
}

struct BoundedSum {
  cplx value = 0;
  double bound = 0;
  double slack = 0;
  bool within_bound() const { return std::abs(value) <= bound + slack; }
};

/// sum_{x in A, y in B} e_p(xy) against sqrt(p |A| |B|).
inline BoundedSum bilinear_additive(const FpSet& a, const FpSet& b) {
  detail::require_same_modulus(a, b);
  const u64 p = a.p();
  const auto roots = unit_roots(p);
  // Column sums over B first: sum_x sum_y e_p(xy) = sum_x 1_B^(x).
  const auto yb = b.elements();
  cplx acc = 0;
  a.for_each([&](elem x) {
    for (elem y : yb) acc += roots[modarith::mul(x, y, p)];
  });
  const double dp = static_cast<double>(p);
  const double bound = std::sqrt(dp * static_cast<double>(a.size()) * static_cast<double>(b.size()));
  return {acc, bound, 1e-9 * static_cast<double>(a.size() * b.size())};
}

// ---------------------------------------------------------------------------
// Multiplicative characters

/// The p - 1 characters chi_j(x) = e(j dlog(x) / (p - 1)), with chi(0) = 0
/// for every j including the trivial one.
class CharTable {
 public:
  explicit CharTable(FieldCtx ctx) : ctx_(std::move(ctx)), roots_(unit_roots(ctx_.p() - 1)) {
    (void)ctx_.dlog_table();
  }

  u64 p() const noexcept { return ctx_.p(); }
  u64 order() const noexcept { return ctx_.p() - 1; }
  const FieldCtx& field() const noexcept { return ctx_; }

  cplx operator()(u64 j, elem x) const {
    if (x % p() == 0) return 0;
    const u64 n = order();
    const u64 k = ctx_.dlog_table()[x % p()];
    return roots_[modarith::mul(j % n, k, n)];
  }

  /// Index of the quadratic (Legendre) character.
  u64 legendre_index() const noexcept { return order() / 2; }

  /// F(j) = sum_{x != 0} f(x) chi_j(x) for f indexed by x - 1.
  std::vector<cplx> transform(std::span<const cplx> f) const {
    const u64 n = order();
    if (f.size() != n) throw Error(ErrorKind::LengthMismatch, "character transform expects p - 1 values");
    const auto logs = ctx_.dlog_table();
    std::vector<cplx> out(n);
    for (u64 j = 0; j < n; ++j) {
      cplx acc = 0;
      for (u64 x = 1; x <= n; ++x) acc += f[x - 1] * roots_[modarith::mul(j, logs[x], n)];
      out[j] = acc;
    }
    return out;
  }

 private:
  FieldCtx ctx_;
  std::vector<cplx> roots_;
};

/// (1/(p-1)) sum_chi |sum_x f(x) chi(x)|^2 against sum_x |f(x)|^2.
inline ParsevalCheck mult_parseval_check(const CharTable& chars, std::span<const cplx> f) {
  const auto spec = chars.transform(f);
  ParsevalCheck c;
  double peak = 0;
  for (const auto& v : f) {
    c.rhs += std::norm(v);
    peak = std::max(peak, std::norm(v));
  }
  for (const auto& v : spec) c.lhs += std::norm(v);
  c.lhs /= static_cast<double>(chars.order());
  c.tolerance = 1e-9 * static_cast<double>(chars.p()) * peak;
  return c;
}

namespace detail {

inline void check_char_sum_inputs(const CharTable& chars, const FpSet& a, const FpSet& b) {
  require_same_modulus(a, b);
  require_field(chars.field(), a);
  require_no_zero(a, "char_sum_AB");
  require_no_zero(b, "char_sum_AB");
}

inline double char_sum_bound(const FpSet& a, const FpSet& b) {
  const double p = static_cast<double>(a.p());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  return std::sqrt(na * nb * p * (1.0 - nb / p));
}

}  // namespace detail

/// sum_{(y,z) in A x B} chi(y + z) against sqrt(|A||B|p(1 - |B|/p)).
/// Slack 1e-9 p.
inline BoundedSum char_sum_AB(const CharTable& chars, const FpSet& a, const FpSet& b, u64 chi_index) {
  detail::check_char_sum_inputs(chars, a, b);
  if (chi_index % chars.order() == 0) throw Error(ErrorKind::TrivialCharacter, "char_sum_AB with chi_0");
  const u64 p = a.p();
  std::vector<u64> counts(p, 0);
  const auto yb = b.elements();
  a.for_each([&](elem y) {
    for (elem z : yb) ++counts[modarith::add(y, z, p)];
  });
  cplx acc = 0;
  for (elem s = 1; s < p; ++s) {
    if (counts[s] != 0) acc += static_cast<double>(counts[s]) * chars(chi_index, s);
  }
  return {acc, detail::char_sum_bound(a, b), 1e-9 * static_cast<double>(p)};
}

/// char_sum_AB for every nontrivial character at once; entry j - 1 holds chi_j.
inline std::vector<BoundedSum> char_sums_all(const CharTable& chars, const FpSet& a, const FpSet& b) {
  detail::check_char_sum_inputs(chars, a, b);
  const u64 p = a.p();
  std::vector<cplx> f(p - 1, 0);
  const auto yb = b.elements();
  a.for_each([&](elem y) {
    for (elem z : yb) {
      const elem s = modarith::add(y, z, p);
      if (s != 0) f[s - 1] += 1.0;
    }
  });
  const auto spec = chars.transform(f);
  const double bound = detail::char_sum_bound(a, b);
  std::vector<BoundedSum> out;
  out.reserve(p - 2);
  for (u64 j = 1; j < p - 1; ++j) out.push_back({spec[j], bound, 1e-9 * static_cast<double>(p)});
  return out;
}

// ---------------------------------------------------------------------------
// Rectification

struct RectificationProfile {
  elem dilation = 1;      // r
  elem start = 0;         // interval {start, ..., start + length - 1} mod p
  u64 length = 0;
  u64 count = 0;          // |rA intersect interval|
  double gamma = 0;
  double floor_i = 0;     // (1 + gamma) |A| / 2
  std::optional<double> floor_ii;  // alpha/2 + arcsin(pi gamma alpha)/(2 pi), times p; empty off-domain
};

/// Default interval length: ceil(p / 2).
inline u64 half_length(u64 p) { return (p + 1) / 2; }

/// Exhaustive sweep over r in F_p* with an O(p) sliding window of fixed
/// length for each dilate; keeps the first (r, start) reaching the maximum.
inline RectificationProfile rectification_profile(const FpSet& a, u64 length = 0) {
  if (a.empty()) throw Error(ErrorKind::EmptySet, "rectification_profile of empty set");
  const u64 p = a.p();
  if (length == 0) length = half_length(p);
  length = std::min(length, p);
  RectificationProfile best;
  best.length = length;
  const auto xs = a.elements();
  std::vector<std::uint8_t> ind(p);
  for (elem r = 1; r < p; ++r) {
    std::fill(ind.begin(), ind.end(), 0);
    for (elem x : xs) ind[modarith::mul(r, x, p)] = 1;
    u64 window = 0;
    for (u64 i = 0; i < length; ++i) window += ind[i];
    for (elem s = 0; s < p; ++s) {
      if (window > best.count) best = {r, s, length, window, 0, 0, std::nullopt};
      window -= ind[s];
      window += ind[(s + length) % p];
    }
  }
  const auto g = gamma_max(a);
  const double n = static_cast<double>(a.size());
  const double alpha = n / static_cast<double>(p);
  best.gamma = g.gamma;
  best.floor_i = (1.0 + g.gamma) * n / 2.0;
  const double arg = std::numbers::pi * g.gamma * alpha;
  if (arg <= 1.0) {
    best.floor_ii = (alpha / 2.0 + std::asin(arg) / (2.0 * std::numbers::pi)) * static_cast<double>(p);
  }
  return best;
}

/// Smallest integer count meeting a real floor, with a 1e-9 guard against
/// values that are integers up to rounding.
inline u64 ceil_floor(double v) { return static_cast<u64>(std::ceil(v - 1e-9)); }

}  // namespace sumprod
