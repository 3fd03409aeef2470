#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minreg/instance.hpp"
#include "minreg/regret.hpp"
#include "minreg/rr.hpp"

namespace minreg {

struct AllocatorResult {
  explicit AllocatorResult(Allocation a) : allocation(std::move(a)) {}

  Allocation allocation;
  std::vector<double> internal_revenue;  // per ad, in the allocator's own units
  std::vector<double> internal_regret;   // per ad, at termination
  std::vector<std::uint64_t> theta;      // per ad; nonzero only for TIRM
  struct Step {
    int ad;
    NodeId node;
    double total_regret_before;
    double total_regret_after;
  };
  std::vector<Step> log;
  std::string termination;
};

/// Budget- and virality-blind baseline: every user gets its kappa_u top ads
/// by delta(u,i) * cpe(i), ties to the lower ad id.
AllocatorResult myopic(const Instance& instance);

/// Budget-aware baseline: per ad, users ranked by CTP descending; ads take
/// turns round-robin, each accruing delta * cpe until its effective budget is
/// reached, skipping attention-exhausted users.
AllocatorResult myopic_plus(const Instance& instance);

/// Algorithm: repeatedly add the (user, ad) pair with the largest strict
/// regret decrease, lazily re-evaluating marginal gains (CELF order).
AllocatorResult greedy(const Instance& instance, const SpreadEstimator& estimator);

struct TirmOptions {
  SampleParams params;
  std::uint64_t seed = 0;
  std::uint64_t pilot_size = 10'000;
  int workers = 1;
};

/// Two-phase iterative regret minimization over RR-set coverage with
/// iteratively grown per-ad seed-size estimates and sample pools.
AllocatorResult tirm(const Instance& instance, const TirmOptions& options);

/// Feasible node with maximum residual coverage in the pool, or nothing when
/// every feasible node has zero residual coverage. Ties to the lower node id.
std::optional<std::pair<NodeId, std::uint64_t>> select_best_node(
    const RrCollection& pool, const std::vector<std::uint8_t>& in_seed_set,
    const std::vector<std::uint32_t>& usage, const std::vector<std::uint32_t>& kappa);

/// Re-attribute newly sampled sets to the logged seeds in selection order
/// (removing them to keep attribution disjoint) and return the revised
/// revenue estimate sum(cpe * n * delta(v) * cov(v) / theta).
double update_estimates(RrCollection& pool,
                        std::vector<std::pair<NodeId, std::uint64_t>>& selection_log,
                        double cpe, const CtpFn& ctp);

}  // namespace minreg
