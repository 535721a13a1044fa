#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "sumprod/constructions.hpp"
#include "sumprod/fp_core.hpp"
#include "sumprod/fp_set.hpp"
#include "sumprod/harness/random.hpp"
#include "sumprod/harness/report.hpp"
#include "sumprod/spectra.hpp"

namespace sumprod::harness {

namespace detail {

inline double as_double(u128 v) { return static_cast<double>(v); }

inline std::string pair_digest(const FpSet& a, const FpSet& b) { return digest(a) + ":" + digest(b); }

/// Random subset of all of F_p (0 allowed), size uniform in [1, p].
inline FpSet random_field_subset(Rng& rng, u64 p) {
  const u64 size = rng.between(1, p);
  std::vector<elem> pool(p);
  std::iota(pool.begin(), pool.end(), elem{0});
  for (u64 i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(p - i)]);
  return FpSet::from_elements(p, std::span<const elem>(pool.data(), size));
}

inline std::vector<cplx> random_function(Rng& rng, u64 n) {
  std::vector<cplx> f(n);
  for (auto& v : f) v = {2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
  return f;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks, shared by the suites and the acceptance runner.

/// |A + B| >= min(|A| + |B| - 1, p); empty operands are skipped.
inline void check_cauchy_davenport(SuiteReport& rep, const FpSet& a, const FpSet& b) {
  const u64 p = a.p();
  if (a.empty() || b.empty()) {
    rep.skip("cauchy_davenport", p, detail::pair_digest(a, b), "empty operand");
    return;
  }
  const u64 lhs = sumset(a, b).size();
  const u64 rhs = std::min(a.size() + b.size() - 1, p);
  rep.check("cauchy_davenport", p, detail::pair_digest(a, b), static_cast<double>(rhs), static_cast<double>(lhs),
            lhs >= rhs);
}

/// |K(a, b; p)| <= 2 sqrt(p) + 1e-9 p.
inline void check_weil(SuiteReport& rep, const FieldCtx& ctx, elem a, elem b, std::span<const cplx> roots) {
  const double p = static_cast<double>(ctx.p());
  const double k = std::abs(kloosterman(ctx, a, b, roots));
  const double bound = 2.0 * std::sqrt(p) + 1e-9 * p;
  rep.check("weil", ctx.p(), std::to_string(a) + "," + std::to_string(b), k, bound, k <= bound);
}

/// max over nontrivial chi of |sum chi(y + z)| against the character-sum bound.
inline void check_char_sums(SuiteReport& rep, const CharTable& chars, const FpSet& a, const FpSet& b) {
  const auto sums = char_sums_all(chars, a, b);
  double worst = 0;
  bool ok = true;
  for (const auto& s : sums) {
    worst = std::max(worst, std::abs(s.value));
    ok = ok && s.within_bound();
  }
  const double bound = sums.empty() ? 0.0 : sums.front().bound + sums.front().slack;
  rep.check("char_sum_bound", a.p(), detail::pair_digest(a, b), worst, bound, ok);
}

/// |sum e_p(xy)| <= sqrt(p |A| |B|).
inline void check_vinogradov(SuiteReport& rep, const FpSet& a, const FpSet& b) {
  const auto s = bilinear_additive(a, b);
  rep.check("vinogradov", a.p(), detail::pair_digest(a, b), std::abs(s.value), s.bound + s.slack, s.within_bound());
}

inline void check_parseval(SuiteReport& rep, const std::string& name, u64 p, const ParsevalCheck& c) {
  rep.check(name, p, "", std::abs(c.lhs - c.rhs), c.tolerance, c.holds());
}

/// The exact inequalities around N = sum_{w != 0} rho(w)^2 for one set:
///   N (p - 1) <= |A|^6 + |A|^3 (p - |A|)^2                  (thm2_N_upper)
///   |A(A+A) \ {0}| N >= |A|^6 - |A|^4                        (thm2_support_lower)
///   |A(A+A) \ {0}| N >= (sum_{w != 0} rho(w))^2               (thm2_cauchy_schwarz)
/// plus a measurement of the missing count against alpha^-3 (1 - alpha)^2.
/// The first form is the upper bound with alpha = |A|/p cleared of
/// denominators; all three comparisons are in 128-bit integers.
inline void thm2_chain_checks(SuiteReport& rep, const FieldCtx& ctx, const FpSet& a) {
  const u64 p = ctx.p();
  const auto id = digest(a);
  if (a.empty()) {
    rep.skip("thm2_N_upper", p, id, "empty set");
    return;
  }
  const auto rho = rep_rho(ctx, a);
  const u128 big_n = rho.square_sum(true);
  const u64 support = rho.support_size(true);
  u128 mass = 0;
  for (u64 w = 1; w < p; ++w) mass += static_cast<u128>(rho.values[w]);

  const u128 n = a.size();
  const u128 n3 = n * n * n;
  const u128 n4 = n3 * n;
  const u128 n6 = n3 * n3;
  const u128 gap = p - a.size();

  const u128 upper_lhs = big_n * (p - 1);
  const u128 upper_rhs = n6 + n3 * gap * gap;
  rep.check("thm2_N_upper", p, id, detail::as_double(big_n),
            detail::as_double(upper_rhs) / static_cast<double>(p - 1), upper_lhs <= upper_rhs);

  const u128 cover = static_cast<u128>(support) * big_n;
  rep.check("thm2_support_lower", p, id, detail::as_double(n6 - n4) / detail::as_double(big_n),
            static_cast<double>(support), cover >= n6 - n4);
  rep.check("thm2_cauchy_schwarz", p, id, detail::as_double(mass * mass) / detail::as_double(big_n),
            static_cast<double>(support), cover >= mass * mass);

  const double alpha = static_cast<double>(a.size()) / static_cast<double>(p);
  const double reference = std::pow(alpha, -3.0) * (1.0 - alpha) * (1.0 - alpha);
  rep.measure("thm2_missing", p, id, static_cast<double>(p - 1 - support), reference);
}

/// |S| >= |A| p^(-1/3) exactly, plus the energy ratios as measurements.
inline void energy_checks(SuiteReport& rep, const FpSet& a) {
  const u64 p = a.p();
  const auto id = digest(a);
  if (a.empty()) {
    rep.skip("popular_bound", p, id, "empty set");
    return;
  }
  const auto pd = popular_differences(a);
  const double n = static_cast<double>(a.size());
  rep.check("popular_bound", p, id, n / std::cbrt(static_cast<double>(p)), static_cast<double>(pd.popular.size()),
            popular_bound_holds(pd.popular.size(), a.size(), p));
  const double alpha = n / static_cast<double>(p);
  const double ratio = static_cast<double>(pd.energy) / (n * n * n);
  rep.measure("eplus_ratio", p, id, ratio, 0.6526);
  rep.measure("eplus_vs_alpha", p, id, ratio, (1.0 + alpha) / 2.0);
  if (!a.contains(0)) {
    const double emul = static_cast<double>(multiplicative_energy(a));
    rep.measure("sum_product", p, id, (2.0 * static_cast<double>(pd.energy) + emul) / (n * n * n), 2.0 + alpha);
  }
}

/// Rectification floors (1 + gamma)|A|/2 and the arcsin variant against the
/// best dilate/interval count. The floors presume 0 < gamma < 1; sets with
/// gamma = 1 and off-domain arcsin arguments get skip records.
inline void rectification_checks(SuiteReport& rep, const FpSet& a, u64 length = 0) {
  const u64 p = a.p();
  const auto id = digest(a);
  const auto prof = rectification_profile(a, length);
  if (prof.gamma >= 1.0 - 1e-12) {
    rep.skip("rectify_i", p, id, "gamma = 1");
    rep.skip("rectify_ii", p, id, "gamma = 1");
    return;
  }
  rep.check("rectify_i", p, id, prof.floor_i, static_cast<double>(prof.count),
            prof.count >= ceil_floor(prof.floor_i));
  if (prof.floor_ii) {
    rep.check("rectify_ii", p, id, *prof.floor_ii, static_cast<double>(prof.count),
              prof.count >= ceil_floor(*prof.floor_ii));
  } else {
    rep.skip("rectify_ii", p, id, "pi gamma alpha > 1");
  }
}

// ---------------------------------------------------------------------------
// Suites

struct ExactLemmaOptions {
  bool cauchy_davenport = true;
  bool weil = true;
  bool char_sums = true;
  bool vinogradov = true;
  bool parseval = true;
  /// Cauchy-Davenport over every pair of subsets for p up to this bound.
  u64 cd_exhaustive_limit = 5;
  /// All (a, b) != (0, 0) instead of `trials` random pairs.
  bool weil_exhaustive = false;
};

/// Every exact inequality over random inputs; failures must be zero.
inline SuiteReport suite_exact_lemmas(const std::vector<u64>& primes, u64 trials, std::uint64_t seed,
                                      const ExactLemmaOptions& opts = {}) {
  SuiteReport rep;
  rep.suite = "exact";
  rep.primes = primes;
  rep.trials = trials;
  rep.seed = seed;
  for (u64 p : primes) {
    const auto ctx = make_field(p);
    Rng rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
    if (opts.cauchy_davenport) {
      if (p <= opts.cd_exhaustive_limit) {
        const u64 subsets = u64{1} << p;
        for (u64 ma = 0; ma < subsets; ++ma) {
          const FpSet a(p, std::vector<u64>{ma});
          for (u64 mb = 0; mb < subsets; ++mb) check_cauchy_davenport(rep, a, FpSet(p, std::vector<u64>{mb}));
        }
      }
      for (u64 t = 0; t < trials; ++t) {
        const auto a = detail::random_field_subset(rng, p);
        const auto b = detail::random_field_subset(rng, p);
        check_cauchy_davenport(rep, a, b);
      }
    }
    if (opts.weil) {
      const auto roots = unit_roots(p);
      if (opts.weil_exhaustive) {
        for (elem a = 0; a < p; ++a) {
          for (elem b = 0; b < p; ++b) {
            if (a != 0 || b != 0) check_weil(rep, ctx, a, b, roots);
          }
        }
      } else {
        for (u64 t = 0; t < trials; ++t) {
          elem a = 0, b = 0;
          while (a == 0 && b == 0) {
            a = rng.below(p);
            b = rng.below(p);
          }
          check_weil(rep, ctx, a, b, roots);
        }
      }
    }
    if (opts.char_sums) {
      const CharTable chars(ctx);
      for (u64 t = 0; t < trials; ++t) {
        const auto a = random_subset_any_size(rng, p);
        const auto b = random_subset_any_size(rng, p);
        check_char_sums(rep, chars, a, b);
      }
    }
    if (opts.vinogradov) {
      for (u64 t = 0; t < trials; ++t) {
        const auto a = detail::random_field_subset(rng, p);
        const auto b = detail::random_field_subset(rng, p);
        check_vinogradov(rep, a, b);
      }
    }
    if (opts.parseval) {
      const CharTable chars(ctx);
      for (u64 t = 0; t < trials; ++t) {
        const auto f = detail::random_function(rng, p);
        check_parseval(rep, "parseval_additive", p, additive_parseval_check(p, f));
        const auto g = detail::random_function(rng, p - 1);
        check_parseval(rep, "parseval_multiplicative", p, mult_parseval_check(chars, g));
      }
    }
  }
  return rep;
}

/// Random sets of size ceil(alpha p) through thm2_chain_checks.
inline SuiteReport suite_thm2_chain(u64 p, Density alpha, u64 trials, std::uint64_t seed) {
  const u64 size = alpha.ceil_times(p);
  if (alpha.num == 0 || size > p - 1) throw Error(ErrorKind::BadDensity, "thm2 needs 1 <= ceil(alpha p) <= p - 1");
  SuiteReport rep;
  rep.suite = "thm2";
  rep.primes = {p};
  rep.trials = trials;
  rep.seed = seed;
  const auto ctx = make_field(p);
  Rng rng(seed ^ (p * 0x9E3779B97F4A7C15ULL) ^ (alpha.num * 0xC2B2AE3D27D4EB4FULL) ^ alpha.den);
  for (u64 t = 0; t < trials; ++t) thm2_chain_checks(rep, ctx, random_subset(rng, p, size));
  return rep;
}

/// |P intersect (P+P)^-1| against 2c^2 p, normalized by sqrt(p) (log p)^2.
inline SuiteReport suite_lemma9(const std::vector<u64>& primes, Density c) {
  if (!c.below_half()) throw Error(ErrorKind::BadDensity, "lemma9 needs 0 < c < 1/2");
  SuiteReport rep;
  rep.suite = "lemma9";
  rep.primes = primes;
  rep.trials = 1;
  for (u64 p : primes) {
    const auto ctx = make_field(p);
    const u64 m = c.ceil_times(p);
    const u64 count = lemma9_count(ctx, m);
    const double dp = static_cast<double>(p);
    const double main = 2.0 * c.value() * c.value() * dp;
    const double scale = std::sqrt(dp) * std::log(dp) * std::log(dp);
    rep.measure("lemma9_constant", p, std::to_string(m), std::abs(static_cast<double>(count) - main), scale);
    rep.measure("lemma9_density", p, std::to_string(m), static_cast<double>(count), dp);
  }
  return rep;
}

enum class EnergySource { InverseClosedSumfree, RandomSymmetric };

/// Energy measurements over inverse-closed sets.
inline SuiteReport suite_energy_s3(u64 p, EnergySource source, u64 trials, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "energy";
  rep.primes = {p};
  rep.trials = trials;
  rep.seed = seed;
  const auto ctx = make_field(p);
  if (source == EnergySource::InverseClosedSumfree) {
    energy_checks(rep, inverse_closed_sumfree(ctx));
    return rep;
  }
  Rng rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
  for (u64 t = 0; t < trials; ++t) {
    energy_checks(rep, random_symmetric(rng, ctx, rng.between(1, std::max<u64>(1, (p - 1) / 2))));
  }
  return rep;
}

/// Rectification floors over random sets of uniformly drawn size.
inline SuiteReport suite_rectify(const std::vector<u64>& primes, u64 trials, std::uint64_t seed, u64 length = 0) {
  SuiteReport rep;
  rep.suite = "rectify";
  rep.primes = primes;
  rep.trials = trials;
  rep.seed = seed;
  for (u64 p : primes) {
    Rng rng(seed ^ (p * 0x9E3779B97F4A7C15ULL));
    for (u64 t = 0; t < trials; ++t) rectification_checks(rep, random_subset_any_size(rng, p), length);
  }
  return rep;
}

}  // namespace sumprod::harness
