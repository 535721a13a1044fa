#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sumprod/constructions.hpp"
#include "sumprod/fp_set.hpp"
#include "sumprod/harness/primes.hpp"
#include "sumprod/harness/random.hpp"

namespace sumprod::harness {

enum class SweepKind { Theorem3, Theorem3k, Midthird, InvClosed, Random };

/// Parsed sweep configuration. JSON keys:
///   kind        "theorem3" | "theorem3k" | "midthird" | "invclosed" | "random"
///   primes      explicit list, or
///   p_range     [lo, hi] inclusive, filtered to odd primes
///   max_primes  optional; evenly thins the prime list
///   c           density for theorem3 and random, "1/4" or "0.25" (default 1/4)
///   k           number of targets for theorem3k (default 2)
///   trials      rows per prime for random (default 1)
///   seed        PRNG seed (default 1)
///   energies    compute E+ and E* columns (default true)
///   missing     compute |F_p* \ A(A+A)| (default true)
struct SweepConfig {
  SweepKind kind = SweepKind::Theorem3;
  std::vector<u64> primes;
  Density c{1, 4};
  u64 k = 2;
  u64 trials = 1;
  std::uint64_t seed = 1;
  bool energies = true;
  bool missing = true;

  static SweepConfig from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigError, what); };
    if (!j.is_object()) fail("sweep config must be a JSON object");
    SweepConfig cfg;
    const auto kind = j.value("kind", std::string("theorem3"));
    if (kind == "theorem3") cfg.kind = SweepKind::Theorem3;
    else if (kind == "theorem3k") cfg.kind = SweepKind::Theorem3k;
    else if (kind == "midthird") cfg.kind = SweepKind::Midthird;
    else if (kind == "invclosed") cfg.kind = SweepKind::InvClosed;
    else if (kind == "random") cfg.kind = SweepKind::Random;
    else fail("unknown kind '" + kind + "'");

    try {
      if (j.contains("primes")) {
        for (const auto& v : j.at("primes")) {
          const u64 p = v.get<u64>();
          if (p < 5 || !modarith::is_prime(p)) fail("not an odd prime >= 5: " + std::to_string(p));
          cfg.primes.push_back(p);
        }
      } else if (j.contains("p_range")) {
        const auto& r = j.at("p_range");
        if (!r.is_array() || r.size() != 2) fail("p_range must be [lo, hi]");
        cfg.primes = odd_primes_in_range(std::max<u64>(5, r[0].get<u64>()), r[1].get<u64>());
      }
      if (j.contains("max_primes")) cfg.primes = sample_evenly(cfg.primes, j.at("max_primes").get<std::size_t>());
      if (j.contains("c")) {
        const auto& c = j.at("c");
        cfg.c = c.is_string() ? Density::parse(c.get<std::string>()) : Density::from_double(c.get<double>());
      }
      cfg.k = j.value("k", cfg.k);
      cfg.trials = j.value("trials", cfg.trials);
      cfg.seed = j.value("seed", cfg.seed);
      cfg.energies = j.value("energies", cfg.energies);
      cfg.missing = j.value("missing", cfg.missing);
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigError) throw;
      fail(e.what());
    }
    if (cfg.primes.empty()) fail("empty prime list");
    if (cfg.trials == 0) fail("trials must be positive");
    if ((cfg.kind == SweepKind::Theorem3 || cfg.kind == SweepKind::Random) && !cfg.c.below_half()) {
      fail("c must satisfy 0 < c < 1/2");
    }
    if (cfg.kind == SweepKind::Theorem3k && cfg.k == 0) fail("k must be positive");
    return cfg;
  }
};

inline std::string kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::Theorem3: return "theorem3";
    case SweepKind::Theorem3k: return "theorem3k";
    case SweepKind::Midthird: return "midthird";
    case SweepKind::InvClosed: return "invclosed";
    case SweepKind::Random: return "random";
  }
  return "?";
}

struct SweepRow {
  u64 p = 0;
  std::string kind;
  std::string param;
  u64 trial = 0;
  u64 size = 0;
  std::optional<u64> missing;
  std::optional<double> eplus_ratio;
  std::optional<double> etimes_ratio;
  std::optional<double> sum_product_ratio;
  std::optional<u64> lemma9_count;
  std::string digest;
  std::string elements;  // empty above 64 elements
};

inline constexpr const char* kSweepHeader =
    "p,kind,param,trial,size,density,missing,eplus_ratio,etimes_ratio,sum_product_ratio,lemma9_count,digest,"
    "elements";

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_line(const SweepRow& r) {
  auto opt_u = [](const std::optional<u64>& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_d = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  std::string s;
  s += std::to_string(r.p) + ',' + r.kind + ',' + r.param + ',' + std::to_string(r.trial) + ',';
  s += std::to_string(r.size) + ',' + format_real(static_cast<double>(r.size) / static_cast<double>(r.p)) + ',';
  s += opt_u(r.missing) + ',' + opt_d(r.eplus_ratio) + ',' + opt_d(r.etimes_ratio) + ',';
  s += opt_d(r.sum_product_ratio) + ',' + opt_u(r.lemma9_count) + ',' + r.digest + ',' + r.elements;
  return s;
}

inline SweepRow sweep_row(const SweepConfig& cfg, u64 p, u64 trial) {
  const auto ctx = make_field(p);
  SweepRow row;
  row.p = p;
  row.kind = kind_name(cfg.kind);
  row.trial = trial;
  FpSet a;
  switch (cfg.kind) {
    case SweepKind::Theorem3:
      row.param = "c=" + cfg.c.str();
      a = theorem3_set(ctx, cfg.c);
      row.lemma9_count = lemma9_count(ctx, cfg.c.ceil_times(p));
      break;
    case SweepKind::Theorem3k:
      row.param = "k=" + std::to_string(cfg.k);
      a = theorem3_multi(ctx, cfg.k);
      break;
    case SweepKind::Midthird:
      a = midthird_sumfree(p);
      break;
    case SweepKind::InvClosed:
      a = inverse_closed_sumfree(ctx);
      break;
    case SweepKind::Random: {
      row.param = "c=" + cfg.c.str();
      Rng rng(cfg.seed ^ (p * 0x9E3779B97F4A7C15ULL) ^ (trial * 0xC2B2AE3D27D4EB4FULL));
      a = random_subset(rng, p, std::max<u64>(1, cfg.c.ceil_times(p)));
      break;
    }
  }
  row.size = a.size();
  if (cfg.missing) row.missing = missing_elements(ctx, a).size();
  if (cfg.energies && !a.empty()) {
    const double n3 = static_cast<double>(a.size()) * static_cast<double>(a.size()) * static_cast<double>(a.size());
    const double ep = static_cast<double>(additive_energy(a));
    row.eplus_ratio = ep / n3;
    if (!a.contains(0)) {
      const double em = static_cast<double>(multiplicative_energy(a));
      row.etimes_ratio = em / n3;
      row.sum_product_ratio = (2.0 * ep + em) / n3;
    }
  }
  row.digest = digest(a);
  if (a.size() <= 64) row.elements = format_set(a, ';');
  return row;
}

/// Runs every (p, trial) row, in parallel across `threads` workers, and
/// returns them in input order.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0) {
  std::vector<std::pair<u64, u64>> jobs;
  const u64 trials = cfg.kind == SweepKind::Random ? cfg.trials : 1;
  for (u64 p : cfg.primes) {
    for (u64 t = 0; t < trials; ++t) jobs.emplace_back(p, t);
  }
  std::vector<SweepRow> rows(jobs.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[i] = sweep_row(cfg, jobs[i].first, jobs[i].second);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

}  // namespace sumprod::harness
