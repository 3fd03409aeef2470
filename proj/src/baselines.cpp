#include <algorithm>
#include <numeric>

#include "minreg/allocators.hpp"

namespace minreg {

AllocatorResult myopic(const Instance& instance) {
  const NodeId n = instance.graph().node_count();
  const int h = instance.ad_count();
  AllocatorResult result(instance.make_allocation());

  std::vector<int> order(h);
  for (NodeId u = 0; u < n; ++u) {
    std::uint32_t take = std::min<std::uint32_t>(instance.kappa(u), h);
    if (take == 0) continue;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return instance.ctp(u, a) * instance.cpe(a) > instance.ctp(u, b) * instance.cpe(b);
    });
    for (std::uint32_t t = 0; t < take; ++t) result.allocation.add(order[t], u);
  }

  result.internal_revenue.assign(h, 0.0);
  for (int i = 0; i < h; ++i)
    for (NodeId u : result.allocation.seeds(i))
      result.internal_revenue[i] += instance.ctp(u, i) * instance.cpe(i);
  result.internal_regret.resize(h);
  for (int i = 0; i < h; ++i)
    result.internal_regret[i] =
        regret_single(instance.budget(i), result.internal_revenue[i], instance.lambda(),
                      result.allocation.seeds(i).size());
  result.theta.assign(h, 0);
  result.termination = "all users assigned";
  return result;
}

AllocatorResult myopic_plus(const Instance& instance) {
  const NodeId n = instance.graph().node_count();
  const int h = instance.ad_count();
  AllocatorResult result(instance.make_allocation());

  // Per-ad CTP ranking, ties to the lower node id.
  std::vector<std::vector<NodeId>> ranking(h);
  for (int i = 0; i < h; ++i) {
    auto& r = ranking[i];
    r.resize(n);
    std::iota(r.begin(), r.end(), 0);
    std::stable_sort(r.begin(), r.end(),
                     [&](NodeId a, NodeId b) { return instance.ctp(a, i) > instance.ctp(b, i); });
  }

  std::vector<std::size_t> cursor(h, 0);
  std::vector<double> accrued(h, 0.0);
  std::vector<int> rotation(h);
  std::iota(rotation.begin(), rotation.end(), 0);

  while (!rotation.empty()) {
    for (std::size_t r = 0; r < rotation.size();) {
      int i = rotation[r];
      bool took = false;
      while (cursor[i] < n) {
        NodeId u = ranking[i][cursor[i]++];
        if (result.allocation.usage(u) >= instance.kappa(u)) continue;
        result.allocation.add(i, u);
        accrued[i] += instance.ctp(u, i) * instance.cpe(i);
        took = true;
        break;
      }
      if (!took || accrued[i] >= instance.budget(i)) {
        rotation.erase(rotation.begin() + r);  // budget reached or no users left
      } else {
        ++r;
      }
    }
  }

  result.internal_revenue = accrued;
  result.internal_regret.resize(h);
  for (int i = 0; i < h; ++i)
    result.internal_regret[i] = regret_single(instance.budget(i), accrued[i], instance.lambda(),
                                              result.allocation.seeds(i).size());
  result.theta.assign(h, 0);
  result.termination = "all budgets reached or users exhausted";
  return result;
}

}  // namespace minreg
