#include "minreg/regret.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace minreg {

SpreadEstimator exact_estimator() {
  return [](const AdEdgeView& view, const CtpFn& ctp, const std::vector<NodeId>& seeds) {
    return exact_spread(view, ctp, seeds);
  };
}

SpreadEstimator mc_estimator(std::uint64_t runs, std::uint64_t seed, int workers) {
  auto call_counter = std::make_shared<std::uint64_t>(0);
  Rng base(seed);
  return [=](const AdEdgeView& view, const CtpFn& ctp, const std::vector<NodeId>& seeds) {
    std::uint64_t call = (*call_counter)++;
    return mc_spread(view, ctp, seeds, runs, base.substream(call).next_u64(), workers);
  };
}

double regret_single(double effective_budget, double pi, double lambda, std::size_t seeds) {
  return std::abs(effective_budget - pi) + lambda * static_cast<double>(seeds);
}

RegretReport regret_total(const Instance& instance, const Allocation& alloc,
                          const std::vector<double>& revenues) {
  if (static_cast<int>(revenues.size()) != instance.ad_count())
    throw std::invalid_argument("regret_total: one revenue per ad required");
  RegretReport report;
  for (int i = 0; i < instance.ad_count(); ++i) {
    RegretReport::Row row;
    row.ad = i;
    row.effective_budget = instance.budget(i);
    row.revenue = revenues[i];
    row.budget_regret = std::abs(row.effective_budget - row.revenue);
    row.seeds = alloc.seeds(i).size();
    row.seed_regret = instance.lambda() * static_cast<double>(row.seeds);
    row.regret = row.budget_regret + row.seed_regret;
    report.total += row.regret;
    report.per_ad.push_back(row);
  }
  return report;
}

double marginal_gain(const AdEdgeView& view, const CtpFn& ctp, const std::vector<NodeId>& seeds,
                     NodeId x, const SpreadEstimator& estimator, double cpe) {
  if (std::find(seeds.begin(), seeds.end(), x) != seeds.end())
    throw std::invalid_argument("marginal_gain: node already in seed set");
  std::vector<NodeId> extended = seeds;
  extended.insert(std::lower_bound(extended.begin(), extended.end(), x), x);
  double with = estimator(view, ctp, extended).mean;
  double without = seeds.empty() ? 0.0 : estimator(view, ctp, seeds).mean;
  return cpe * (with - without);
}

PDiagnostics diagnostics_p(const Instance& instance, const SpreadEstimator& estimator) {
  PDiagnostics d;
  const NodeId n = instance.graph().node_count();
  for (int i = 0; i < instance.ad_count(); ++i) {
    const AdEdgeView& view = instance.view(i);
    CtpFn ctp = instance_ctp(instance, i);
    double best = 0.0;
    NodeId best_node = 0;
    for (NodeId u = 0; u < n; ++u) {
      double pi_u = instance.cpe(i) * estimator(view, ctp, {u}).mean;
      if (pi_u > best) {
        best = pi_u;
        best_node = u;
      }
    }
    double p_i = best / instance.budget(i);
    d.p.push_back(p_i);
    d.argmax.push_back(best_node);
    if (!(p_i > 0.0 && p_i < 1.0)) d.out_of_regime.push_back(i);
  }
  d.p_max = d.p.empty() ? 0.0 : *std::max_element(d.p.begin(), d.p.end());
  return d;
}

}  // namespace minreg
