#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minreg/instance.hpp"
#include "minreg/regret.hpp"

namespace minreg {

/// Exact spread of every seed subset for one ad, indexed by node bitmask.
/// Edge worlds are enumerated once and seed-acceptance coins are collapsed
/// analytically per node, which is an independent algebraic route to the same
/// expectation as exact_spread's joint enumeration.
std::vector<double> brute_spread_table(const AdEdgeView& view, const CtpFn& ctp);

/// Spread estimator backed by precomputed tables (one per ad, matched by the
/// ad's edge-view address). Exact and fast on tiny instances.
SpreadEstimator table_estimator(const Instance& instance,
                                const std::vector<std::vector<double>>& tables);

/// Minimum-total-regret over all valid allocations, by exhaustive enumeration.
double brute_optimal_regret(const Instance& instance,
                            const std::vector<std::vector<double>>& tables);

struct BoundReport {
  enum class Status { kPass, kFail, kPreconditionNotMet };
  struct Check {
    std::string theorem;
    Status status;
    double bound;     // meaningful unless precondition unmet
    double achieved;  // greedy regret under the exact oracle
    std::string note;
  };
  std::vector<Check> checks;        // general-case, one-third, p-max
  std::vector<double> p;            // p_i per ad
  double p_max = 0.0;
  std::vector<std::uint64_t> s_opt; // per ad; 0 means budget unreachable
  double greedy_regret = 0.0;
  double optimal_regret = 0.0;
};

/// Brute-forces p_i, s_opt and the optimal regret, runs greedy with the exact
/// oracle, and evaluates each regret theorem whose preconditions hold.
/// Throws when the instance exceeds the enumeration caps.
BoundReport check_bounds(const Instance& instance);

}  // namespace minreg
