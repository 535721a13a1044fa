// Command-line front end: field info, set operations, constructions,
// verification suites, m_p search and CSV sweeps.
//
// Exit codes: 0 success, 1 assertion failure, 2 config/usage error,
// 3 results flagged by an exhausted search budget.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumprod/harness/primes.hpp"
#include "sumprod/harness/report.hpp"
#include "sumprod/harness/suites.hpp"
#include "sumprod/harness/sweep.hpp"
#include "sumprod/sumprod.hpp"

namespace {

using namespace sumprod;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTimeout = 3;

std::pair<u64, u64> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const u64 v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, "bad range '" + text + "', expected A..B");
  }
}

json set_json(const FpSet& a, bool full) {
  json j;
  j["size"] = a.size();
  j["density"] = static_cast<double>(a.size()) / static_cast<double>(a.p());
  j["digest"] = digest(a);
  if (full || a.size() <= 64) j["set"] = format_set(a);
  return j;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on A(A+A) over prime fields"};
  app.require_subcommand(1);

  u64 p = 0;

  auto* field_info = app.add_subcommand("field-info", "Primality, primitive root and least nonsquare");
  field_info->add_option("--p", p, "Prime modulus")->required();

  std::string set_text, op;
  auto* setops = app.add_subcommand("setops", "Set operations on a literal set");
  setops->add_option("--p", p, "Prime modulus")->required();
  setops->add_option("--set", set_text, "Residues '1,2,5' or hex bitmap '0x26'")->required();
  setops->add_option("--op", op, "Operation")
      ->required()
      ->check(CLI::IsMember({"aplusa", "missing", "energy+", "energyx"}));

  std::string kind, c_text = "1/4";
  u64 k = 2;
  bool full = false;
  auto* construct = app.add_subcommand("construct", "Explicit extremal constructions");
  construct->add_option("--p", p, "Prime modulus")->required();
  construct->add_option("--kind", kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"theorem3", "theorem3k", "midthird", "invclosed"}));
  construct->add_option("--c", c_text, "Density for theorem3 (fraction or decimal)");
  construct->add_option("--k", k, "Number of missing targets for theorem3k");
  construct->add_flag("--full", full, "Always print the set");

  std::string suite, p_range = "5..61", alpha_text = "3/10", source = "both";
  u64 trials = 100;
  std::uint64_t seed = 1;
  bool all_records = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite")
      ->required()
      ->check(CLI::IsMember({"exact", "thm2", "lemma9", "energy", "rectify"}));
  verify->add_option("--p-range", p_range, "Inclusive prime range A..B");
  verify->add_option("--trials", trials, "Random trials per prime");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--alpha", alpha_text, "Density for thm2");
  verify->add_option("--c", c_text, "Density for lemma9");
  verify->add_option("--source", source, "Sets for the energy suite")
      ->check(CLI::IsMember({"invclosed", "symmetric", "both"}));
  verify->add_flag("--records", all_records, "List every record, not only failures");

  std::string method = "bb";
  u64 budget = 100'000'000;
  u64 target = 0;
  auto* search = app.add_subcommand("search-mp", "Exact m_p with a certificate");
  search->add_option("--p", p, "Prime modulus")->required();
  search->add_option("--method", method, "Search method")->check(CLI::IsMember({"exhaustive", "bb"}));
  search->add_option("--budget", budget, "Node budget for branch and bound");
  search->add_option("--target", target, "Single target x instead of both reduction targets");

  std::string config_path, out_path;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", out_path, "Output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*field_info) {
      const auto ctx = make_field(p);
      json j;
      j["p"] = p;
      j["primitive_root"] = ctx.primitive_root();
      j["least_nonsquare"] = least_nonsquare(ctx);
      j["squares"] = (p - 1) / 2;
      j["p_minus_1_factors"] = modarith::prime_factors(p - 1);
      j["tables"] = ctx.has_tables();
      print(j);
      return kExitOk;
    }

    if (*setops) {
      const auto ctx = make_field(p);
      const auto a = parse_set(p, set_text);
      json j;
      j["p"] = p;
      j["op"] = op;
      if (op == "aplusa") {
        j["result"] = set_json(a_aplusa(ctx, a), true);
      } else if (op == "missing") {
        j["result"] = set_json(missing_elements(ctx, a), true);
      } else if (op == "energy+") {
        j["value"] = additive_energy(a);
      } else {
        j["value"] = multiplicative_energy(a);
      }
      print(j);
      return kExitOk;
    }

    if (*construct) {
      const auto ctx = make_field(p);
      FpSet a;
      json j;
      j["p"] = p;
      j["kind"] = kind;
      if (kind == "theorem3") {
        const auto c = Density::parse(c_text);
        a = theorem3_set(ctx, c);
        j["c"] = c.str();
        j["lemma9_count"] = lemma9_count(ctx, c.ceil_times(p));
        j["missing_target"] = 1;
      } else if (kind == "theorem3k") {
        const auto targets = default_targets(ctx, k);
        a = theorem3_multi(ctx, k, targets);
        j["k"] = k;
        j["missing_targets"] = targets;
      } else if (kind == "midthird") {
        a = midthird_sumfree(p);
        j["sumfree"] = is_sumfree(a);
      } else {
        a = inverse_closed_sumfree(ctx);
        j["sumfree"] = is_sumfree(a);
      }
      j["result"] = set_json(a, full);
      print(j);
      return kExitOk;
    }

    if (*verify) {
      const auto [lo, hi] = parse_range(p_range);
      const auto primes = harness::odd_primes_in_range(lo, hi);
      if (primes.empty()) throw Error(ErrorKind::ConfigError, "no odd primes in " + p_range);
      harness::SuiteReport rep;
      if (suite == "exact") {
        rep = harness::suite_exact_lemmas(primes, trials, seed);
      } else if (suite == "thm2") {
        const auto alpha = Density::parse(alpha_text);
        rep.suite = "thm2";
        for (u64 q : primes) rep.merge(harness::suite_thm2_chain(q, alpha, trials, seed));
        rep.trials = trials;
        rep.seed = seed;
      } else if (suite == "lemma9") {
        rep = harness::suite_lemma9(primes, Density::parse(c_text));
      } else if (suite == "energy") {
        rep.suite = "energy";
        for (u64 q : primes) {
          if (q <= 3) continue;
          if (source != "symmetric") {
            rep.merge(harness::suite_energy_s3(q, harness::EnergySource::InverseClosedSumfree, 1, seed));
          }
          if (source != "invclosed") {
            rep.merge(harness::suite_energy_s3(q, harness::EnergySource::RandomSymmetric, trials, seed));
          }
        }
        rep.trials = trials;
        rep.seed = seed;
      } else {
        rep = harness::suite_rectify(primes, trials, seed);
      }
      print(harness::to_json(rep, all_records));
      return rep.failures == 0 ? kExitOk : kExitAssertion;
    }

    if (*search) {
      const auto ctx = make_field(p);
      SearchCertificate cert;
      if (method == "exhaustive") {
        cert = target != 0 ? mp_exhaustive_target(ctx, target) : mp_exhaustive(ctx);
      } else {
        BranchBoundOptions opts;
        opts.node_budget = budget;
        cert = target != 0 ? mp_branch_bound(ctx, target, opts) : mp_branch_bound(ctx, opts);
      }
      auto j = harness::to_json(cert);
      j["verified"] = verify_certificate(ctx, cert);
      print(j);
      if (!j["verified"].get<bool>()) return kExitAssertion;
      return cert.optimal ? kExitOk : kExitTimeout;
    }

    if (*sweep) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + config_path);
      nlohmann::json cfg_json;
      try {
        in >> cfg_json;
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ConfigError, e.what());
      }
      const auto cfg = harness::SweepConfig::from_json(cfg_json);
      const auto rows = harness::run_sweep(cfg);
      if (out_path.empty()) {
        harness::write_csv(std::cout, rows);
      } else {
        std::ofstream out(out_path);
        if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + out_path);
        harness::write_csv(out, rows);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvariantViolation ? kExitAssertion : kExitConfig;
  }
  return kExitOk;
}
