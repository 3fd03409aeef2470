#pragma once

#include <functional>
#include <vector>

#include "minreg/instance.hpp"
#include "minreg/spread.hpp"

namespace minreg {

/// Pluggable spread estimator: exact enumeration, Monte Carlo, or a
/// test-provided table. Estimates are in expected clicks.
using SpreadEstimator = std::function<SpreadEstimate(
    const AdEdgeView&, const CtpFn&, const std::vector<NodeId>&)>;

SpreadEstimator exact_estimator();

/// Each call uses the substream (seed, call#, run#); call order is the
/// deterministic order in which the consumer asks for estimates.
SpreadEstimator mc_estimator(std::uint64_t runs, std::uint64_t seed, int workers = 1);

inline double revenue(const SpreadEstimate& spread, double cpe) { return cpe * spread.mean; }

/// |B' - Pi| + lambda * |S|.
double regret_single(double effective_budget, double pi, double lambda, std::size_t seeds);

struct RegretReport {
  struct Row {
    int ad;
    double effective_budget;
    double revenue;
    double budget_regret;
    std::size_t seeds;
    double seed_regret;
    double regret;
  };
  std::vector<Row> per_ad;
  double total = 0.0;
};

/// Assemble the per-ad and total regret from externally estimated revenues.
RegretReport regret_total(const Instance& instance, const Allocation& alloc,
                          const std::vector<double>& revenues);

/// Pi_i(S u {x}) - Pi_i(S) in money; errors if x is already in S.
double marginal_gain(const AdEdgeView& view, const CtpFn& ctp, const std::vector<NodeId>& seeds,
                     NodeId x, const SpreadEstimator& estimator, double cpe = 1.0);

/// Best single-node revenue as a fraction of each ad's effective budget
/// (the p_i of the greedy regret bounds), with out-of-regime flags.
struct PDiagnostics {
  std::vector<double> p;        // per ad
  std::vector<NodeId> argmax;   // node attaining p_i
  double p_max = 0.0;
  std::vector<int> out_of_regime;  // ads with p_i outside (0,1)
};

PDiagnostics diagnostics_p(const Instance& instance, const SpreadEstimator& estimator);

/// delta(u, ad) as a CtpFn bound to one instance/ad.
inline CtpFn instance_ctp(const Instance& instance, int ad) {
  return [&instance, ad](NodeId u) { return instance.ctp(u, ad); };
}

}  // namespace minreg
