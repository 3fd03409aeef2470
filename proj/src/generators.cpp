#include "minreg/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "minreg/rng.hpp"

namespace minreg {

namespace {

std::vector<TopicGraph::Arc> random_arcs(NodeId n, std::uint64_t m, Rng& rng) {
  if (n < 2) throw std::invalid_argument("graph generator: need at least 2 nodes");
  const std::uint64_t max_arcs = static_cast<std::uint64_t>(n) * (n - 1);
  if (m > max_arcs) throw std::invalid_argument("graph generator: too many arcs requested");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<TopicGraph::Arc> arcs;
  arcs.reserve(m);
  while (arcs.size() < m) {
    NodeId u = static_cast<NodeId>(rng.next_below(n));
    NodeId v = static_cast<NodeId>(rng.next_below(n));
    if (u == v) continue;
    if (!seen.insert(static_cast<std::uint64_t>(u) * n + v).second) continue;
    arcs.push_back({u, v});
  }
  return arcs;
}

}  // namespace

TopicGraph gen_weighted_cascade(NodeId n, std::uint64_t m, int topics, std::uint64_t seed) {
  Rng rng = Rng::keyed({seed, 0x7763u});
  auto arcs = random_arcs(n, m, rng);
  std::vector<std::uint32_t> indeg(n, 0);
  for (const auto& a : arcs) ++indeg[a.dst];
  std::vector<double> probs;
  probs.reserve(arcs.size() * topics);
  for (const auto& a : arcs) {
    double p = 1.0 / static_cast<double>(indeg[a.dst]);
    for (int z = 0; z < topics; ++z) probs.push_back(p);
  }
  return TopicGraph(n, topics, std::move(arcs), std::move(probs));
}

TopicGraph gen_topical(NodeId n, std::uint64_t m, int topics, double mean, std::uint64_t seed) {
  if (!(mean > 0)) throw std::invalid_argument("gen_topical: mean must be positive");
  Rng rng = Rng::keyed({seed, 0x6578u});
  auto arcs = random_arcs(n, m, rng);
  std::vector<double> probs;
  probs.reserve(arcs.size() * topics);
  for (std::size_t a = 0; a < arcs.size(); ++a)
    for (int z = 0; z < topics; ++z)
      probs.push_back(std::min(1.0, rng.exponential(mean)));
  return TopicGraph(n, topics, std::move(arcs), std::move(probs));
}

}  // namespace minreg
