#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumprod/extremal.hpp"
#include "sumprod/fp_set.hpp"

namespace sumprod::harness {

/// One evaluated inequality (or one measurement).
struct CheckRecord {
  std::string check;
  u64 p = 0;
  std::string digest;  // identity of the inputs
  double lhs = 0;
  double rhs = 0;
  double margin = 0;   // >= 0 when the inequality holds
  bool pass = true;
  bool skipped = false;
  bool measured = false;  // measurement rows never fail
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<u64> primes;
  u64 trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;

  u64 checks = 0;
  u64 failures = 0;
  u64 skips = 0;
  double max_constant = std::numeric_limits<double>::quiet_NaN();

  /// Exact inequality lhs <= rhs, decided by `pass` (callers pass the exact
  /// integer verdict when one exists, the doubles are for display).
  void check(std::string name, u64 p, std::string digest, double lhs, double rhs, bool pass) {
    ++checks;
    if (!pass) ++failures;
    records.push_back({std::move(name), p, std::move(digest), lhs, rhs, rhs - lhs, pass, false, false, {}});
  }

  void skip(std::string name, u64 p, std::string digest, std::string why) {
    ++skips;
    records.push_back({std::move(name), p, std::move(digest), 0, 0, 0, true, true, false, std::move(why)});
  }

  /// Reports value against a reference; the ratio value/reference feeds
  /// max_constant.
  void measure(std::string name, u64 p, std::string digest, double value, double reference) {
    const double ratio = reference != 0 ? value / reference : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(ratio)) max_constant = std::isnan(max_constant) ? ratio : std::max(max_constant, ratio);
    records.push_back({std::move(name), p, std::move(digest), value, reference, ratio, true, false, true, {}});
  }

  void merge(const SuiteReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    checks += other.checks;
    failures += other.failures;
    skips += other.skips;
    if (!std::isnan(other.max_constant)) {
      max_constant = std::isnan(max_constant) ? other.max_constant : std::max(max_constant, other.max_constant);
    }
    for (u64 p : other.primes) {
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
  }

  /// Largest measured ratio among records named `name`.
  double max_measured(const std::string& name) const {
    double m = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : records) {
      if (r.measured && r.check == name && std::isfinite(r.margin)) m = std::isnan(m) ? r.margin : std::max(m, r.margin);
    }
    return m;
  }

  u64 failures_of(const std::string& name) const {
    u64 n = 0;
    for (const auto& r : records) n += (r.check == name && !r.pass && !r.skipped);
    return n;
  }

  u64 count_of(const std::string& name) const {
    u64 n = 0;
    for (const auto& r : records) n += (r.check == name && !r.skipped);
    return n;
  }
};

inline nlohmann::ordered_json to_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["p"] = r.p;
  j["inputs"] = r.digest;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = std::isfinite(r.margin) ? nlohmann::ordered_json(r.margin) : nlohmann::ordered_json(nullptr);
  j["pass"] = r.pass;
  if (r.skipped) j["skipped"] = true;
  if (r.measured) j["measured"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// With `all_records` false only failing records are listed.
inline nlohmann::ordered_json to_json(const SuiteReport& rep, bool all_records = false) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["primes"] = rep.primes;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["checks"] = rep.checks;
  j["failures"] = rep.failures;
  j["skips"] = rep.skips;
  j["max_constant"] =
      std::isnan(rep.max_constant) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(rep.max_constant);
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.records) {
    if (all_records || (!r.pass && !r.skipped)) recs.push_back(to_json(r));
  }
  return j;
}

/// Certificate schema: {p, target, witness, size, optimal, nodes, method}.
inline nlohmann::ordered_json to_json(const SearchCertificate& c) {
  nlohmann::ordered_json j;
  j["p"] = c.p;
  j["target"] = c.target;
  j["witness"] = c.witness.elements();
  j["size"] = c.size;
  j["optimal"] = c.optimal;
  j["nodes"] = c.nodes_explored;
  j["method"] = std::string(to_string(c.method));
  return j;
}

}  // namespace sumprod::harness
