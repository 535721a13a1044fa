#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_core.hpp"
#include "sumprod/fp_set.hpp"

namespace sumprod {

/// A density c as an exact fraction num/den. Decimal literals are parsed
/// exactly ("0.25" -> 25/100), so ceil(c p) never suffers float rounding.
struct Density {
  u64 num = 1;
  u64 den = 4;

  static Density parse(std::string_view text) {
    auto digits = [&](std::string_view s) {
      if (s.empty()) throw Error(ErrorKind::ParseError, "bad density '" + std::string(text) + "'");
      u64 v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad density '" + std::string(text) + "'");
        v = v * 10 + static_cast<u64>(c - '0');
      }
      return v;
    };
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      return make(digits(text.substr(0, slash)), digits(text.substr(slash + 1)));
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto frac = text.substr(dot + 1);
      if (frac.size() > 15) throw Error(ErrorKind::ParseError, "density has too many decimals");
      u64 den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      const auto whole = text.substr(0, dot);
      return make((whole.empty() ? 0 : digits(whole)) * den + (frac.empty() ? 0 : digits(frac)), den);
    }
    return make(digits(text), 1);
  }

  /// From a float: the value is scaled by 1e12 and the numerator rounded,
  /// so ceil(c p) sees c up to a 1e-12 nudge.
  static Density from_double(double c) {
    return make(static_cast<u64>(std::llround(c * 1e12)), 1'000'000'000'000ULL);
  }

  static Density make(u64 num, u64 den) {
    if (den == 0) throw Error(ErrorKind::BadDensity, "zero denominator");
    const u64 g = std::gcd(num, den);
    return g == 0 ? Density{0, 1} : Density{num / g, den / g};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// ceil(c p), exact.
  u64 ceil_times(u64 p) const {
    const u128 t = static_cast<u128>(num) * p;
    return static_cast<u64>((t + den - 1) / den);
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// 0 < c < 1/2.
  bool below_half() const { return num > 0 && 2 * static_cast<u128>(num) < den; }
};

/// {lo, ..., hi} as residues.
inline FpSet interval_set(u64 p, elem lo, elem hi) {
  if (lo > hi || hi >= p) {
    throw Error(ErrorKind::BadRange, "interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] mod " +
                                         std::to_string(p));
  }
  std::vector<u64> w(bits::word_count(p), 0);
  for (elem x = lo; x <= hi; ++x) bits::set(w, x);
  return FpSet(p, std::move(w));
}

/// P + P for P = {1, ..., m}, computed as a set so that 2m >= p wraps correctly.
inline FpSet interval_doubled(u64 p, u64 m) {
  const auto prog = interval_set(p, 1, m);
  return sumset(prog, prog);
}

/// |P intersect x (P+P)^-1| for P = {1, ..., m}: the y in P with x y^-1 in P + P.
inline u64 lemma9_count(const FieldCtx& ctx, u64 m, elem x = 1) {
  const auto doubled = interval_doubled(ctx.p(), m);
  u64 count = 0;
  for (elem y = 1; y <= m; ++y) count += doubled.contains(ctx.mul(x, ctx.inv(y)));
  return count;
}

/// A = P \ (P+P)^-1 with P = {1, ..., ceil(c p)}; 1 is missing from A(A+A).
/// Throws InvariantViolation if the exact membership check ever disagrees.
inline FpSet theorem3_set(const FieldCtx& ctx, Density c) {
  if (!c.below_half()) throw Error(ErrorKind::BadDensity, "theorem3_set needs 0 < c < 1/2, got " + c.str());
  const u64 p = ctx.p();
  const u64 m = c.ceil_times(p);
  const auto doubled = interval_doubled(p, m);
  std::vector<u64> w(bits::word_count(p), 0);
  for (elem y = 1; y <= m; ++y) {
    if (!doubled.contains(ctx.inv(y))) bits::set(w, y);
  }
  FpSet a(p, std::move(w));
  if (in_a_aplusa(ctx, a, 1)) throw Error(ErrorKind::InvariantViolation, "1 in A(A+A) for theorem3_set");
  return a;
}

/// Default targets 1, g, g^2, ..., g^(k-1) for the least primitive root g.
inline std::vector<elem> default_targets(const FieldCtx& ctx, u64 k) {
  std::vector<elem> t;
  elem x = 1;
  for (u64 j = 0; j < k; ++j, x = ctx.mul(x, ctx.primitive_root())) t.push_back(x);
  return t;
}

/// A = P \ union_j x_j (P+P)^-1 with P = {1, ..., ceil(p / 4k)}, so that every
/// x_j is missing from A(A+A). Empty `targets` selects default_targets.
inline FpSet theorem3_multi(const FieldCtx& ctx, u64 k, std::vector<elem> targets = {}) {
  const u64 p = ctx.p();
  if (k < 1 || 4 * k >= p) throw Error(ErrorKind::BadDensity, "theorem3_multi needs 1 <= k < p/4");
  if (targets.empty()) targets = default_targets(ctx, k);
  if (targets.size() != k) throw Error(ErrorKind::BadSize, "theorem3_multi: expected k targets");
  for (auto& x : targets) {
    x %= p;
    if (x == 0) throw Error(ErrorKind::ZeroTarget, "theorem3_multi target 0");
  }
  {
    auto sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::DuplicateTargets, "theorem3_multi targets must be distinct");
    }
  }
  const u64 m = Density::make(1, 4 * k).ceil_times(p);
  const auto doubled = interval_doubled(p, m);
  std::vector<u64> w(bits::word_count(p), 0);
  for (elem y = 1; y <= m; ++y) {
    bool keep = true;
    for (elem x : targets) {
      if (doubled.contains(ctx.mul(x, ctx.inv(y)))) {
        keep = false;
        break;
      }
    }
    if (keep) bits::set(w, y);
  }
  FpSet a(p, std::move(w));
  const auto a2 = sumset(a, a);
  for (elem x : targets) {
    if (in_a_aplusa(ctx, a, a2, x)) {
      throw Error(ErrorKind::InvariantViolation, "target " + std::to_string(x) + " in A(A+A)");
    }
  }
  return a;
}

/// true iff (A + A) and A are disjoint.
inline bool is_sumfree(const FpSet& a) { return set_intersection(sumset(a, a), a).empty(); }

/// I = {r : p/3 < r < 2p/3}, strict on both ends.
inline FpSet midthird_sumfree(u64 p) {
  if (p <= 3) throw Error(ErrorKind::TooSmall, "midthird_sumfree needs p > 3");
  const elem lo = p / 3 + 1;        // smallest r with 3r > p
  const elem hi = (2 * p - 1) / 3;  // largest r with 3r < 2p
  return interval_set(p, lo, hi);
}

/// A = {x in I : x^-1 in I}; inverse-closed and sum-free.
inline FpSet inverse_closed_sumfree(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  const auto mid = midthird_sumfree(p);
  std::vector<u64> w(bits::word_count(p), 0);
  mid.for_each([&](elem x) {
    if (mid.contains(ctx.inv(x))) bits::set(w, x);
  });
  FpSet a(p, std::move(w));
  if (!a.empty() && in_a_aplusa(ctx, a, 1)) {
    throw Error(ErrorKind::InvariantViolation, "1 in A(A+A) for inverse_closed_sumfree");
  }
  return a;
}

// ---------------------------------------------------------------------------
// Closed-form thresholds

namespace detail {

/// Root of a continuous f on [lo, hi] with a sign change, to `tol`.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  if (flo == 0) return lo;
  if ((flo > 0) == (f(hi) > 0)) throw Error(ErrorKind::InvariantViolation, "bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

struct Theorem1Constants {
  /// Lower bound for the rectified density, f(a) = (1 + (sqrt2 - 1) a) a / (2 (1 - a)).
  static double f(double alpha) {
    return (1.0 + (std::numbers::sqrt2 - 1.0) * alpha) * alpha / (2.0 * (1.0 - alpha));
  }

  /// Same bound with the arcsin rectification floor and gamma = sqrt2 a / (1 - a).
  static double f_lev(double alpha) {
    const double gamma = std::numbers::sqrt2 * alpha / (1.0 - alpha);
    return alpha / 2.0 + std::asin(std::numbers::pi * gamma * alpha) / (2.0 * std::numbers::pi);
  }

  /// (11 - 6 sqrt2) a^3 - (22 - 6 sqrt2) a^2 + 17 a - 4.
  static double cubic(double alpha) {
    const double s = std::numbers::sqrt2;
    return (((11.0 - 6.0 * s) * alpha - (22.0 - 6.0 * s)) * alpha + 17.0) * alpha - 4.0;
  }

  /// (1 - a - f)^2 - (1 - a - 2 f) for a rectification floor f.
  static double closing_gap(double alpha, double f_alpha) {
    const double u = 1.0 - alpha - f_alpha;
    return u * u - (1.0 - alpha - 2.0 * f_alpha);
  }

  double c1_threshold = 0;              // (1 - a)/f(a) = 3, by bisection
  double c1_threshold_closed_form = 0;  // (7 - sqrt(9 + 24 sqrt2)) / (10 - 6 sqrt2)
  double cubic_root = 0;                // root of cubic() in (0.3, 0.31)
  double lev_threshold = 0.30065;       // published value for the arcsin variant
  double lev_threshold_computed = 0;    // root of closing_gap with f_lev
};

inline Theorem1Constants theorem1_constants() {
  Theorem1Constants k;
  const double s = std::numbers::sqrt2;
  k.c1_threshold_closed_form = (7.0 - std::sqrt(9.0 + 24.0 * s)) / (10.0 - 6.0 * s);
  k.c1_threshold = detail::bisect([](double a) { return (1.0 - a) / Theorem1Constants::f(a) - 3.0; }, 0.2, 0.4);
  k.cubic_root = detail::bisect(Theorem1Constants::cubic, 0.3, 0.31);
  if (std::abs(Theorem1Constants::cubic(k.cubic_root)) > 1e-8) {
    throw Error(ErrorKind::InvariantViolation, "cubic root residual too large");
  }
  k.lev_threshold_computed = detail::bisect(
      [](double a) { return Theorem1Constants::closing_gap(a, Theorem1Constants::f_lev(a)); }, 0.29, 0.305);
  return k;
}

}  // namespace sumprod
