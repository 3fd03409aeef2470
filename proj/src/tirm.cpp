#include <algorithm>
#include <cassert>
#include <cmath>

#include "minreg/allocators.hpp"

namespace minreg {

std::optional<std::pair<NodeId, std::uint64_t>> select_best_node(
    const RrCollection& pool, const std::vector<std::uint8_t>& in_seed_set,
    const std::vector<std::uint32_t>& usage, const std::vector<std::uint32_t>& kappa) {
  const NodeId n = pool.node_count();
  NodeId best = 0;
  std::uint64_t best_cov = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (in_seed_set[v] || usage[v] >= kappa[v]) continue;
    std::uint64_t c = pool.residual_coverage(v);
    if (c > best_cov) {  // strict: ties resolve to the lower node id
      best_cov = c;
      best = v;
    }
  }
  if (best_cov == 0) return std::nullopt;
  return std::make_pair(best, best_cov);
}

double update_estimates(RrCollection& pool,
                        std::vector<std::pair<NodeId, std::uint64_t>>& selection_log,
                        double cpe, const CtpFn& ctp) {
  // Earlier seeds attribute first, so coverage stays disjoint even when a new
  // set contains several logged seeds.
  const double n = static_cast<double>(pool.node_count());
  const double theta = static_cast<double>(pool.theta());
  double pi_hat = 0.0;
  for (auto& [v, cov] : selection_log) {
    cov += pool.remove_covered(v);
    pi_hat += cpe * n * ctp(v) * static_cast<double>(cov) / theta;
  }
  return pi_hat;
}

namespace {

std::uint64_t round_up_to_multiple(std::uint64_t x, std::uint64_t n) {
  return (x + n - 1) / n * n;
}

struct TirmAdState {
  RrCollection pool;
  std::vector<std::uint8_t> in_seeds;
  std::vector<NodeId> seeds;
  std::vector<std::pair<NodeId, std::uint64_t>> selection_log;  // Q_i
  std::uint64_t seed_size_estimate = 1;                         // s_i
  std::uint64_t growth_rounds = 0;
  double pi_hat = 0.0;
  bool saturated = false;
};

}  // namespace

AllocatorResult tirm(const Instance& instance, const TirmOptions& options) {
  const NodeId n = instance.graph().node_count();
  const double nd = static_cast<double>(n);
  const int h = instance.ad_count();
  AllocatorResult result(instance.make_allocation());
  const double lambda = instance.lambda();

  std::vector<std::uint32_t> usage(n, 0);
  std::vector<TirmAdState> ads;
  ads.reserve(h);

  // Phase 1 per ad: conservative seed-size estimate s=1 and a pool sized by
  // the corresponding sample bound. Theta targets are rounded up to complete
  // root-schedule passes.
  for (int i = 0; i < h; ++i) {
    const AdEdgeView& view = instance.view(i);
    TirmAdState st{RrCollection(RrKind::kRr, view, Rng::keyed({options.seed, 0x7477u, (std::uint64_t)i})),
                   std::vector<std::uint8_t>(n, 0)};
    double opt_lb = estimate_opt_lb(
        view, 1, options.pilot_size,
        Rng::keyed({options.seed, 0x706cu, (std::uint64_t)i, st.growth_rounds}));
    std::uint64_t target =
        round_up_to_multiple(theta_bound(1, options.params, n, opt_lb), n);
    st.pool.extend(target, nullptr, options.workers);
    ads.push_back(std::move(st));
  }

  auto regret_of = [&](int i) {
    return std::abs(instance.budget(i) - ads[i].pi_hat) +
           lambda * static_cast<double>(ads[i].seeds.size());
  };
  double total_regret = 0.0;
  for (int i = 0; i < h; ++i) total_regret += regret_of(i);

  while (true) {
    int best_ad = -1;
    NodeId best_node = 0;
    std::uint64_t best_cov = 0;
    double best_drop = 0.0;
    double best_mg = 0.0;

    for (int i = 0; i < h; ++i) {
      TirmAdState& st = ads[i];
      if (st.saturated) continue;
      auto cand = select_best_node(st.pool, st.in_seeds, usage, instance.kappa());
      if (!cand) {
        st.saturated = true;  // coverage and feasibility only shrink
        continue;
      }
      auto [v, cov] = *cand;
      const double mg = instance.cpe(i) * nd * instance.ctp(v, i) *
                        static_cast<double>(cov) / static_cast<double>(st.pool.theta());
      const double before = regret_of(i);
      const double after = std::abs(instance.budget(i) - (st.pi_hat + mg)) +
                           lambda * static_cast<double>(st.seeds.size() + 1);
      const double drop = before - after;
      if (drop > best_drop) {
        best_drop = drop;
        best_ad = i;
        best_node = v;
        best_cov = cov;
        best_mg = mg;
      }
    }

    if (best_ad < 0) {
      result.termination = "no strictly improving pair";
      break;
    }

    TirmAdState& st = ads[best_ad];
    st.seeds.insert(std::lower_bound(st.seeds.begin(), st.seeds.end(), best_node), best_node);
    st.in_seeds[best_node] = 1;
    ++usage[best_node];
    result.allocation.add(best_ad, best_node);
    st.selection_log.emplace_back(best_node, best_cov);
    st.pi_hat += best_mg;
    std::uint64_t flagged = st.pool.remove_covered(best_node);
    assert(flagged == best_cov);
    (void)flagged;
    result.log.push_back({best_ad, best_node, total_regret, total_regret - best_drop});
    total_regret -= best_drop;

    if (st.seeds.size() == st.seed_size_estimate && st.seed_size_estimate < n) {
      // Iterative seed-size estimation: grow s_i by the regret left over
      // divided by the latest seed's marginal revenue, then resample to the
      // bound for the new s_i and refresh the revenue estimates.
      const double latest_f =
          static_cast<double>(best_cov) / static_cast<double>(st.pool.theta());
      const double denom =
          instance.cpe(best_ad) * nd * instance.ctp(best_node, best_ad) * latest_f;
      std::uint64_t inc =
          denom > 0.0 ? static_cast<std::uint64_t>(std::floor(regret_of(best_ad) / denom)) : 0;
      if (inc == 0) {
        // Only force a resampling round if the ad still has a strictly
        // improving move; otherwise |S_i| may never exceed s_i anyway.
        auto cand = select_best_node(st.pool, st.in_seeds, usage, instance.kappa());
        if (cand) {
          double mg = instance.cpe(best_ad) * nd * instance.ctp(cand->first, best_ad) *
                      static_cast<double>(cand->second) /
                      static_cast<double>(st.pool.theta());
          double after = std::abs(instance.budget(best_ad) - (st.pi_hat + mg)) +
                         lambda * static_cast<double>(st.seeds.size() + 1);
          if (regret_of(best_ad) - after > 0.0) inc = 1;
        }
      }
      if (inc > 0) {
        st.seed_size_estimate = std::min<std::uint64_t>(st.seed_size_estimate + inc, n);
        ++st.growth_rounds;
        const AdEdgeView& view = instance.view(best_ad);
        double opt_lb = estimate_opt_lb(view, st.seed_size_estimate, options.pilot_size,
                                        Rng::keyed({options.seed, 0x706cu,
                                                    (std::uint64_t)best_ad, st.growth_rounds}));
        std::uint64_t target = round_up_to_multiple(
            theta_bound(st.seed_size_estimate, options.params, n, opt_lb), n);
        if (target > st.pool.theta()) {
          double before = regret_of(best_ad);
          st.pool.extend(target - st.pool.theta(), nullptr, options.workers);
          st.pi_hat = update_estimates(st.pool, st.selection_log, instance.cpe(best_ad),
                                       instance_ctp(instance, best_ad));
          total_regret += regret_of(best_ad) - before;
        }
      }
    }
  }

  result.internal_revenue.resize(h);
  result.internal_regret.resize(h);
  result.theta.resize(h);
  for (int i = 0; i < h; ++i) {
    result.internal_revenue[i] = ads[i].pi_hat;
    result.internal_regret[i] = regret_of(i);
    result.theta[i] = ads[i].pool.theta();
  }
  if (result.termination.empty()) result.termination = "no strictly improving pair";
  return result;
}

}  // namespace minreg
