#include "minreg/spread.hpp"

#include <cmath>
#include <stdexcept>

#include "minreg/workers.hpp"

namespace minreg {

SpreadEstimate exact_spread(const AdEdgeView& view, const CtpFn& ctp,
                            const std::vector<NodeId>& seeds) {
  const TopicGraph& g = view.graph();
  const int e = static_cast<int>(g.arc_count());
  const int s = static_cast<int>(seeds.size());
  if (e + s > kExactSpreadCoinCap)
    throw std::invalid_argument("exact_spread: |E|+|S| = " + std::to_string(e + s) +
                                " exceeds the enumeration cap of " +
                                std::to_string(kExactSpreadCoinCap));
  if (s == 0) return {0.0, 0.0, 0};

  std::vector<double> arc_p(e), seed_p(s);
  for (int a = 0; a < e; ++a) arc_p[a] = view.arc_prob(static_cast<ArcId>(a));
  for (int j = 0; j < s; ++j) seed_p[j] = ctp(seeds[j]);

  const NodeId n = g.node_count();
  std::vector<std::uint8_t> reached(n);
  std::vector<NodeId> stack;
  stack.reserve(n);

  double total = 0.0;
  for (std::uint32_t em = 0; em < (1u << e); ++em) {
    double pe = 1.0;
    for (int a = 0; a < e; ++a) pe *= (em >> a & 1) ? arc_p[a] : 1.0 - arc_p[a];
    if (pe == 0.0) continue;
    for (std::uint32_t sm = 0; sm < (1u << s); ++sm) {
      double ps = 1.0;
      for (int j = 0; j < s; ++j) ps *= (sm >> j & 1) ? seed_p[j] : 1.0 - seed_p[j];
      if (ps == 0.0) continue;
      std::fill(reached.begin(), reached.end(), 0);
      stack.clear();
      for (int j = 0; j < s; ++j)
        if ((sm >> j & 1) && !reached[seeds[j]]) {
          reached[seeds[j]] = 1;
          stack.push_back(seeds[j]);
        }
      std::uint32_t count = static_cast<std::uint32_t>(stack.size());
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (ArcId a : g.out_arcs(u)) {
          if (!(em >> a & 1)) continue;
          NodeId v = g.arc(a).dst;
          if (!reached[v]) {
            reached[v] = 1;
            ++count;
            stack.push_back(v);
          }
        }
      }
      total += pe * ps * count;
    }
  }
  return {total, 0.0, 0};
}

std::uint32_t cascade_once(const AdEdgeView& view, const CtpFn& ctp,
                           const std::vector<NodeId>& seeds, Rng& rng,
                           std::vector<NodeId>& frontier, std::vector<std::uint8_t>& active) {
  const TopicGraph& g = view.graph();
  frontier.clear();
  std::uint32_t count = 0;
  for (NodeId u : seeds)
    if (rng.bernoulli(ctp(u)) && !active[u]) {
      active[u] = 1;
      frontier.push_back(u);
      ++count;
    }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    NodeId u = frontier[head];
    for (ArcId a : g.out_arcs(u)) {
      NodeId v = g.arc(a).dst;
      if (active[v]) continue;
      if (rng.bernoulli(view.arc_prob(a))) {
        active[v] = 1;
        frontier.push_back(v);
        ++count;
      }
    }
  }
  for (NodeId u : frontier) active[u] = 0;  // reset for reuse
  return count;
}

SpreadEstimate mc_spread(const AdEdgeView& view, const CtpFn& ctp,
                         const std::vector<NodeId>& seeds, std::uint64_t runs,
                         std::uint64_t seed, int workers) {
  if (runs < 1) throw std::invalid_argument("mc_spread: runs must be >= 1");
  if (seeds.empty()) return {0.0, 0.0, runs};

  const Rng base(seed);
  std::vector<std::uint32_t> counts(runs);
  workers = resolve_workers(workers);

  if (workers <= 1) {
    std::vector<NodeId> frontier;
    std::vector<std::uint8_t> active(view.node_count(), 0);
    for (std::uint64_t r = 0; r < runs; ++r) {
      Rng rng = base.substream(r);
      counts[r] = cascade_once(view, ctp, seeds, rng, frontier, active);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        std::vector<NodeId> frontier;
        std::vector<std::uint8_t> active(view.node_count(), 0);
        for (std::uint64_t r = w; r < runs; r += workers) {
          Rng rng = base.substream(r);
          counts[r] = cascade_once(view, ctp, seeds, rng, frontier, active);
        }
      });
    for (auto& t : pool) t.join();
  }

  // Merge in index order so the result is bit-identical for any worker count.
  double sum = 0.0;
  for (std::uint64_t r = 0; r < runs; ++r) sum += counts[r];
  double mean = sum / static_cast<double>(runs);
  double ss = 0.0;
  for (std::uint64_t r = 0; r < runs; ++r) {
    double d = counts[r] - mean;
    ss += d * d;
  }
  double se = runs > 1 ? std::sqrt(ss / (static_cast<double>(runs) - 1.0) /
                                   static_cast<double>(runs))
                       : 0.0;
  return {mean, se, runs};
}

}  // namespace minreg
