#include "minreg/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minreg/allocators.hpp"

namespace minreg {

namespace {

constexpr NodeId kMaxNodes = 14;
constexpr std::size_t kMaxArcs = 16;
constexpr int kMaxJointBits = 24;  // h * n for the allocation enumeration

std::uint32_t mask_of(const std::vector<NodeId>& seeds) {
  std::uint32_t m = 0;
  for (NodeId u : seeds) m |= 1u << u;
  return m;
}

}  // namespace

std::vector<double> brute_spread_table(const AdEdgeView& view, const CtpFn& ctp) {
  const TopicGraph& g = view.graph();
  const NodeId n = g.node_count();
  const std::size_t e = g.arc_count();
  if (n > kMaxNodes || e > kMaxArcs)
    throw std::invalid_argument("brute_spread_table: instance exceeds enumeration caps");

  // failure_prod[mask] = prod_{v in mask} (1 - delta(v))
  std::vector<double> failure_prod(1u << n, 1.0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t low = mask & (mask - 1);
    NodeId v = static_cast<NodeId>(std::countr_zero(mask));
    failure_prod[mask] = failure_prod[low] * (1.0 - ctp(v));
  }

  std::vector<double> table(1u << n, 0.0);
  std::vector<std::uint32_t> reach(n);
  std::vector<NodeId> stack;
  for (std::uint32_t em = 0; em < (1u << e); ++em) {
    double pe = 1.0;
    for (std::size_t a = 0; a < e; ++a)
      pe *= (em >> a & 1) ? view.arc_prob(static_cast<ArcId>(a))
                          : 1.0 - view.arc_prob(static_cast<ArcId>(a));
    if (pe == 0.0) continue;
    // reach[w] = nodes that reach w over live arcs (including w itself).
    for (NodeId w = 0; w < n; ++w) reach[w] = 1u << w;
    for (NodeId v = 0; v < n; ++v) {
      stack.assign(1, v);
      std::uint32_t visited = 1u << v;
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (ArcId a : g.out_arcs(u)) {
          if (!(em >> a & 1)) continue;
          NodeId w = g.arc(a).dst;
          if (visited & (1u << w)) continue;
          visited |= 1u << w;
          reach[w] |= 1u << v;
          stack.push_back(w);
        }
      }
    }
    for (std::uint32_t t = 1; t < (1u << n); ++t) {
      double expect = 0.0;
      for (NodeId w = 0; w < n; ++w) expect += 1.0 - failure_prod[reach[w] & t];
      table[t] += pe * expect;
    }
  }
  return table;
}

SpreadEstimator table_estimator(const Instance& instance,
                                const std::vector<std::vector<double>>& tables) {
  std::vector<const AdEdgeView*> views;
  for (int i = 0; i < instance.ad_count(); ++i) views.push_back(&instance.view(i));
  return [views, &tables](const AdEdgeView& view, const CtpFn&,
                          const std::vector<NodeId>& seeds) -> SpreadEstimate {
    for (std::size_t i = 0; i < views.size(); ++i)
      if (views[i] == &view) return {tables[i][mask_of(seeds)], 0.0, 0};
    throw std::invalid_argument("table_estimator: unknown edge view");
  };
}

double brute_optimal_regret(const Instance& instance,
                            const std::vector<std::vector<double>>& tables) {
  const NodeId n = instance.graph().node_count();
  const int h = instance.ad_count();
  if (h * n > kMaxJointBits)
    throw std::invalid_argument("brute_optimal_regret: allocation space exceeds cap");

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> masks(h, 0);
  // Odometer over per-ad seed masks with validity filtering.
  const std::uint64_t combos = 1ull << (h * n);
  for (std::uint64_t joint = 0; joint < combos; ++joint) {
    for (int i = 0; i < h; ++i)
      masks[i] = static_cast<std::uint32_t>(joint >> (i * n)) & ((1u << n) - 1);
    bool valid = true;
    for (NodeId u = 0; u < n && valid; ++u) {
      std::uint32_t usage = 0;
      for (int i = 0; i < h; ++i) usage += masks[i] >> u & 1;
      valid = usage <= instance.kappa(u);
    }
    if (!valid) continue;
    double total = 0.0;
    for (int i = 0; i < h; ++i) {
      double pi = instance.cpe(i) * tables[i][masks[i]];
      total += std::abs(instance.budget(i) - pi) +
               instance.lambda() * std::popcount(masks[i]);
    }
    best = std::min(best, total);
  }
  return best;
}

BoundReport check_bounds(const Instance& instance) {
  const NodeId n = instance.graph().node_count();
  const int h = instance.ad_count();
  if (n > kMaxNodes || instance.graph().arc_count() > kMaxArcs || h * n > kMaxJointBits)
    throw std::invalid_argument("check_bounds: instance exceeds enumeration caps");

  std::vector<std::vector<double>> tables;
  for (int i = 0; i < h; ++i)
    tables.push_back(brute_spread_table(instance.view(i), instance_ctp(instance, i)));

  BoundReport report;

  // p_i = max_u Pi_i({u}) / B'_i and s_opt by exhaustive subset search.
  for (int i = 0; i < h; ++i) {
    double best_single = 0.0;
    for (NodeId u = 0; u < n; ++u)
      best_single = std::max(best_single, instance.cpe(i) * tables[i][1u << u]);
    report.p.push_back(best_single / instance.budget(i));

    std::uint64_t s_opt = 0;
    for (std::uint32_t size = 1; size <= n && s_opt == 0; ++size)
      for (std::uint32_t t = 1; t < (1u << n); ++t)
        if (static_cast<std::uint32_t>(std::popcount(t)) == size &&
            instance.cpe(i) * tables[i][t] >= instance.budget(i)) {
          s_opt = size;
          break;
        }
    report.s_opt.push_back(s_opt);
  }
  report.p_max = *std::max_element(report.p.begin(), report.p.end());

  report.optimal_regret = brute_optimal_regret(instance, tables);
  AllocatorResult greedy_run = greedy(instance, table_estimator(instance, tables));
  report.greedy_regret = 0.0;
  for (double r : greedy_run.internal_regret) report.greedy_regret += r;

  double total_budget = 0.0;
  for (int i = 0; i < h; ++i) total_budget += instance.budget(i);
  const bool p_in_regime =
      std::all_of(report.p.begin(), report.p.end(), [](double p) { return p > 0 && p < 1; });

  auto judge = [&](double bound) {
    return report.greedy_regret <= bound + 1e-9 ? BoundReport::Status::kPass
                                                : BoundReport::Status::kFail;
  };

  // General-case bound (regret vs budgets with seed penalty).
  {
    BoundReport::Check check{"general-case", BoundReport::Status::kPreconditionNotMet, 0, 0, ""};
    bool kappa_ok = true;
    for (NodeId u = 0; u < n; ++u) kappa_ok &= instance.kappa(u) >= static_cast<std::uint32_t>(h);
    double min_direct = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h; ++i)
      for (NodeId u = 0; u < n; ++u)
        min_direct = std::min(min_direct, instance.ctp(u, i) * instance.cpe(i));
    bool s_opt_ok = std::all_of(report.s_opt.begin(), report.s_opt.end(),
                                [](std::uint64_t s) { return s > 0; });
    bool log_ok = true;
    double bound = 0.0;
    for (int i = 0; i < h; ++i) {
      double arg = report.p[i] / 2.0 - instance.lambda() / (2.0 * instance.budget(i));
      if (arg <= 0.0) {
        log_ok = false;
        break;
      }
      bound += (report.p[i] * instance.budget(i) + instance.lambda()) / 2.0 +
               instance.lambda() *
                   (1.0 + static_cast<double>(report.s_opt[i]) * std::ceil(std::log(1.0 / arg)));
    }
    if (!kappa_ok)
      check.note = "kappa_u >= h violated";
    else if (instance.lambda() > min_direct)
      check.note = "lambda exceeds min delta*cpe";
    else if (!p_in_regime)
      check.note = "p_i outside (0,1)";
    else if (!s_opt_ok)
      check.note = "budget unreachable for some ad";
    else if (!log_ok)
      check.note = "log term undefined";
    else {
      check.bound = bound;
      check.achieved = report.greedy_regret;
      check.status = judge(bound);
    }
    report.checks.push_back(check);
  }

  // One-third-of-budget bound (lambda = 0 instances admitting regret <= B/3).
  {
    BoundReport::Check check{"one-third", BoundReport::Status::kPreconditionNotMet, 0, 0, ""};
    double bound = total_budget / 3.0;
    if (instance.lambda() != 0.0)
      check.note = "lambda != 0";
    else if (report.optimal_regret > bound)
      check.note = "no allocation within B/3";
    else {
      check.bound = bound;
      check.achieved = report.greedy_regret;
      check.status = judge(bound);
    }
    report.checks.push_back(check);
  }

  // p_max bound: min{p_max/2, 1 - p_max} * B.
  {
    BoundReport::Check check{"p-max", BoundReport::Status::kPreconditionNotMet, 0, 0, ""};
    double bound = std::min(report.p_max / 2.0, 1.0 - report.p_max) * total_budget;
    if (instance.lambda() != 0.0)
      check.note = "lambda != 0";
    else if (!p_in_regime)
      check.note = "p_i outside (0,1)";
    else if (report.optimal_regret > bound)
      check.note = "no allocation within the p_max bound";
    else {
      check.bound = bound;
      check.achieved = report.greedy_regret;
      check.status = judge(bound);
    }
    report.checks.push_back(check);
  }

  return report;
}

}  // namespace minreg
