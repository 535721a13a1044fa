#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/fp_core.hpp"
#include "sumprod/fp_set.hpp"

namespace sumprod {

enum class SearchMethod { Exhaustive, BranchAndBound };

constexpr std::string_view to_string(SearchMethod m) noexcept {
  return m == SearchMethod::Exhaustive ? "exhaustive" : "branch_and_bound";
}

/// A witness A subset of F_p* with `target` missing from A(A+A), plus the
/// statistics of the search that produced it.
struct SearchCertificate {
  u64 p = 0;
  elem target = 1;
  FpSet witness;
  u64 size = 0;
  u64 nodes_explored = 0;
  SearchMethod method = SearchMethod::Exhaustive;
  bool optimal = true;  // false when the node budget ran out
};

/// Re-checks a certificate from scratch: 0 not in the witness, the declared
/// size, and target not in A(A+A) via a full product-of-sumset computation.
inline bool verify_certificate(const FieldCtx& ctx, const SearchCertificate& cert) {
  if (cert.p != ctx.p() || cert.witness.p() != ctx.p()) return false;
  if (cert.witness.contains(0) || cert.witness.size() != cert.size) return false;
  if (cert.target % ctx.p() == 0) return false;
  return !a_aplusa(ctx, cert.witness).contains(cert.target);
}

/// Corollary-2 cap: every feasible A has |A| <= floor((p + 1) / 3).
inline u64 coverage_cap(u64 p) { return (p + 1) / 3; }

namespace detail {

/// Incremental feasibility state for "x not in A(A+A)" over A subset of F_p*.
class AvoidState {
 public:
  AvoidState(const FieldCtx& ctx, elem target)
      : ctx_(ctx), x_(target), in_(ctx.p(), 0), sums_(ctx.p(), 0) {}

  /// Would adding e create a(b + c) = x inside A + {e}?
  bool can_add(elem e) const {
    // e as the multiplier: x/e in (A + e) + (A + e).
    const elem q = ctx_.mul(x_, ctx_.inv(e));
    if (sums_[q] != 0 || in_[ctx_.sub(q, e)] || q == ctx_.add(e, e)) return false;
    // e inside the sum, multiplier a in A: x/a - e in A + {e}.
    for (elem a : members_) {
      const elem t = ctx_.mul(x_, ctx_.inv(a));
      const elem c = ctx_.sub(t, e);
      if (in_[c] || c == e) return false;
    }
    return true;
  }

  void add(elem e) {
    for (elem b : members_) sums_[ctx_.add(b, e)] += 2;
    sums_[ctx_.add(e, e)] += 1;
    members_.push_back(e);
    in_[e] = 1;
  }

  void remove_last() {
    const elem e = members_.back();
    members_.pop_back();
    in_[e] = 0;
    sums_[ctx_.add(e, e)] -= 1;
    for (elem b : members_) sums_[ctx_.add(b, e)] -= 2;
  }

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<elem>& members() const noexcept { return members_; }

 private:
  const FieldCtx& ctx_;
  elem x_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint32_t> sums_;
  std::vector<elem> members_;
};

struct BudgetExceeded {};

}  // namespace detail

/// Largest A subset of F_p* avoiding `target`, by plain depth-first
/// enumeration of every feasible subset (feasibility is inherited by
/// subsets, so infeasible branches are cut). Only practical for small p.
inline SearchCertificate mp_exhaustive_target(const FieldCtx& ctx, elem target) {
  const u64 p = ctx.p();
  if (p > 23) throw Error(ErrorKind::TooLarge, "mp_exhaustive is limited to p <= 23");
  target %= p;
  if (target == 0) throw Error(ErrorKind::ZeroTarget, "mp_exhaustive with target 0");

  detail::AvoidState st(ctx, target);
  std::vector<elem> best;
  u64 nodes = 0;
  auto dfs = [&](auto&& self, elem next) -> void {
    ++nodes;
    if (st.size() > best.size()) best = st.members();
    for (elem e = next; e < p; ++e) {
      if (!st.can_add(e)) continue;
      st.add(e);
      self(self, e + 1);
      st.remove_last();
    }
  };
  dfs(dfs, 1);

  SearchCertificate cert;
  cert.p = p;
  cert.target = target;
  cert.witness = FpSet::from_elements(p, best);
  cert.size = best.size();
  cert.nodes_explored = nodes;
  cert.method = SearchMethod::Exhaustive;
  cert.optimal = true;
  if (!verify_certificate(ctx, cert)) throw Error(ErrorKind::InvariantViolation, "exhaustive witness fails");
  return cert;
}

/// m_p through the square/nonsquare reduction: the better of targets 1 and
/// the least nonsquare. Ties keep target 1.
inline SearchCertificate mp_exhaustive(const FieldCtx& ctx) {
  auto a = mp_exhaustive_target(ctx, 1);
  auto b = mp_exhaustive_target(ctx, least_nonsquare(ctx));
  a.nodes_explored += b.nodes_explored;
  b.nodes_explored = a.nodes_explored;
  return b.size > a.size ? b : a;
}

struct BranchBoundOptions {
  u64 node_budget = 100'000'000;
  /// Prune with floor((p+1)/3) and stop once it is reached.
  bool use_coverage_cap = true;
  /// Feasible starting set; the search only reports strictly better sets.
  std::vector<elem> seed;
};

/// Exact maximum |A| with target not in A(A+A), by include-first depth-first
/// search with forward checking. Residues are branched in decreasing order of
/// how many forbidden triples a(b + c) = target they take part in; a node is
/// pruned when |A| + |still-addable residues| cannot beat the incumbent.
inline SearchCertificate mp_branch_bound(const FieldCtx& ctx, elem target, const BranchBoundOptions& opts = {}) {
  const u64 p = ctx.p();
  target %= p;
  if (target == 0) throw Error(ErrorKind::ZeroTarget, "mp_branch_bound with target 0");

  // Static constraint degree: for each unordered {b, c} with b + c != 0 the
  // forbidden multiplier is a = target (b + c)^-1.
  std::vector<u64> degree(p, 0);
  for (elem b = 1; b < p; ++b) {
    for (elem c = b; c < p; ++c) {
      const elem s = ctx.add(b, c);
      if (s == 0) continue;
      const elem a = ctx.mul(target, ctx.inv(s));
      ++degree[a];
      if (b != a) ++degree[b];
      if (c != a && c != b) ++degree[c];
    }
  }
  std::vector<elem> order;
  {
    // Singletons {e} with 2e^2 = target are infeasible on their own.
    detail::AvoidState empty(ctx, target);
    for (elem e = 1; e < p; ++e) {
      if (empty.can_add(e)) order.push_back(e);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](elem u, elem v) { return degree[u] > degree[v]; });

  const u64 cap = opts.use_coverage_cap ? coverage_cap(p) : p;
  detail::AvoidState st(ctx, target);
  std::vector<elem> best;
  for (elem e : opts.seed) {
    if (e % p == 0 || !st.can_add(e % p)) throw Error(ErrorKind::InvariantViolation, "infeasible seed");
    st.add(e % p);
  }
  best = st.members();
  while (st.size() > 0) st.remove_last();

  u64 nodes = 0;
  bool timed_out = false;
  auto dfs = [&](auto&& self, const std::vector<elem>& cands) -> void {
    if (++nodes > opts.node_budget) throw detail::BudgetExceeded{};
    if (st.size() > best.size()) best = st.members();
    if (best.size() >= cap) return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (st.size() + (cands.size() - i) <= best.size() || best.size() >= cap) return;
      const elem e = cands[i];
      // Include e; every later candidate must stay addable next to it.
      st.add(e);
      std::vector<elem> next;
      next.reserve(cands.size() - i - 1);
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (st.can_add(cands[j])) next.push_back(cands[j]);
      }
      self(self, next);
      st.remove_last();
      // Exclude e: continue the loop with the remaining candidates.
    }
  };
  try {
    dfs(dfs, order);
  } catch (const detail::BudgetExceeded&) {
    timed_out = true;
  }

  SearchCertificate cert;
  cert.p = p;
  cert.target = target;
  cert.witness = FpSet::from_elements(p, best);
  cert.size = best.size();
  cert.nodes_explored = std::min(nodes, opts.node_budget);
  cert.method = SearchMethod::BranchAndBound;
  cert.optimal = !timed_out;
  if (!verify_certificate(ctx, cert)) throw Error(ErrorKind::InvariantViolation, "branch-and-bound witness fails: p=" + std::to_string(p) + " x=" + std::to_string(target) + " A=" + format_set(cert.witness));
  return cert;
}

/// m_p by branch and bound over both reduction targets.
inline SearchCertificate mp_branch_bound(const FieldCtx& ctx, const BranchBoundOptions& opts = {}) {
  auto a = mp_branch_bound(ctx, 1, opts);
  auto b = mp_branch_bound(ctx, least_nonsquare(ctx), opts);
  const u64 total = a.nodes_explored + b.nodes_explored;
  const bool optimal = a.optimal && b.optimal;
  auto& win = b.size > a.size ? b : a;
  win.nodes_explored = total;
  win.optimal = optimal;
  return win;
}

}  // namespace sumprod
