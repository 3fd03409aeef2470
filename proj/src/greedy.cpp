#include <algorithm>
#include <cmath>
#include <queue>

#include "minreg/allocators.hpp"

namespace minreg {

namespace {

struct Entry {
  double gain;       // cpe * (sigma(S u {u}) - sigma(S)), possibly stale
  NodeId node;
  std::uint32_t at;  // |S_i| at evaluation time; fresh iff == current |S_i|
  double sigma_with; // sigma(S u {u}) at evaluation time
};

struct EntryOrder {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;  // lower node id pops first on equal gain
  }
};

using EntryHeap = std::priority_queue<Entry, std::vector<Entry>, EntryOrder>;

struct AdState {
  EntryHeap heap;
  std::vector<NodeId> seeds;
  std::vector<std::uint8_t> in_seeds;
  double sigma = 0.0;
  bool saturated = false;
};

// Regret drop for one candidate with marginal revenue m, undershoot gap g > 0.
double drop_of(double m, double g, double lambda) {
  return g - std::abs(g - m) - lambda;
}

}  // namespace

AllocatorResult greedy(const Instance& instance, const SpreadEstimator& estimator) {
  const NodeId n = instance.graph().node_count();
  const int h = instance.ad_count();
  AllocatorResult result(instance.make_allocation());
  result.theta.assign(h, 0);

  std::vector<AdState> ads(h);
  std::vector<std::uint32_t> usage(n, 0);

  // Initial bounds: every singleton spread, the largest any marginal can be.
  for (int i = 0; i < h; ++i) {
    AdState& st = ads[i];
    st.in_seeds.assign(n, 0);
    const AdEdgeView& view = instance.view(i);
    CtpFn ctp = instance_ctp(instance, i);
    std::vector<Entry> init;
    init.reserve(n);
    for (NodeId u = 0; u < n; ++u) {
      if (instance.kappa(u) == 0) continue;
      double s1 = estimator(view, ctp, {u}).mean;
      init.push_back({instance.cpe(i) * s1, u, 0, s1});
    }
    st.heap = EntryHeap(EntryOrder{}, std::move(init));
  }

  double total_regret = 0.0;
  for (int i = 0; i < h; ++i) total_regret += instance.budget(i);

  while (true) {
    int best_ad = -1;
    Entry best_entry{0, 0, 0, 0};
    double best_drop = 0.0;  // strict improvement required

    for (int i = 0; i < h; ++i) {
      AdState& st = ads[i];
      if (st.saturated) continue;
      const double g = instance.budget(i) - instance.cpe(i) * st.sigma;
      if (g <= 0.0) {  // at or over budget: no move can reduce regret again
        st.saturated = true;
        continue;
      }
      const AdEdgeView& view = instance.view(i);
      CtpFn ctp = instance_ctp(instance, i);
      const std::uint32_t now = static_cast<std::uint32_t>(st.seeds.size());

      double ad_best_drop = -1.0;
      Entry ad_best{0, 0, 0, 0};
      std::vector<Entry> scratch;
      while (!st.heap.empty()) {
        Entry top = st.heap.top();
        if (st.in_seeds[top.node] || usage[top.node] >= instance.kappa(top.node)) {
          st.heap.pop();  // permanently infeasible for this ad
          continue;
        }
        const double drop_bound = std::min(top.gain, g) - instance.lambda();
        if (drop_bound <= 0.0) break;  // nothing left can strictly improve
        if (ad_best_drop > drop_bound ||
            (ad_best_drop == drop_bound && ad_best.node < top.node))
          break;
        st.heap.pop();
        if (top.at != now) {
          std::vector<NodeId> with = st.seeds;
          with.insert(std::lower_bound(with.begin(), with.end(), top.node), top.node);
          top.sigma_with = estimator(view, ctp, with).mean;
          top.gain = instance.cpe(i) * (top.sigma_with - st.sigma);
          top.at = now;
        }
        double d = drop_of(top.gain, g, instance.lambda());
        if (d > ad_best_drop || (d == ad_best_drop && top.node < ad_best.node)) {
          ad_best_drop = d;
          ad_best = top;
        }
        scratch.push_back(top);
      }
      for (const Entry& e : scratch) st.heap.push(e);

      if (ad_best_drop > best_drop) {
        best_drop = ad_best_drop;
        best_ad = i;
        best_entry = ad_best;
      }
    }

    if (best_ad < 0) break;

    AdState& st = ads[best_ad];
    st.seeds.insert(std::lower_bound(st.seeds.begin(), st.seeds.end(), best_entry.node),
                    best_entry.node);
    st.in_seeds[best_entry.node] = 1;
    st.sigma = best_entry.sigma_with;
    ++usage[best_entry.node];
    result.allocation.add(best_ad, best_entry.node);
    result.log.push_back({best_ad, best_entry.node, total_regret, total_regret - best_drop});
    total_regret -= best_drop;
  }

  result.internal_revenue.resize(h);
  result.internal_regret.resize(h);
  for (int i = 0; i < h; ++i) {
    result.internal_revenue[i] = instance.cpe(i) * ads[i].sigma;
    result.internal_regret[i] =
        regret_single(instance.budget(i), result.internal_revenue[i], instance.lambda(),
                      ads[i].seeds.size());
  }
  result.termination = "no strictly improving pair";
  return result;
}

}  // namespace minreg
