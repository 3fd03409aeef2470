#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "minreg/rng.hpp"
#include "minreg/topic_graph.hpp"

namespace minreg {

/// Per-node click-through probability accessor for one fixed ad.
using CtpFn = std::function<double(NodeId)>;

inline CtpFn constant_ctp(double v) {
  return [v](NodeId) { return v; };
}

struct SpreadEstimate {
  double mean = 0.0;    // expected clicks
  double stderr_ = 0.0; // standard error of the mean; 0 for exact
  std::uint64_t runs = 0;  // 0 for exact
};

/// Exact expected spread under IC with seed-acceptance coins, by joint
/// enumeration of all arc live/blocked and seed accept/reject outcomes.
/// Accepting seeds count as activated; a rejecting seed may still be
/// activated through live arcs. Refuses instances with |E| + |S| > 24.
SpreadEstimate exact_spread(const AdEdgeView& view, const CtpFn& ctp,
                            const std::vector<NodeId>& seeds);

inline constexpr int kExactSpreadCoinCap = 24;

/// Monte-Carlo spread estimate. Run r draws its randomness from a substream
/// keyed by (seed, r), so results are identical for any worker count.
SpreadEstimate mc_spread(const AdEdgeView& view, const CtpFn& ctp,
                         const std::vector<NodeId>& seeds, std::uint64_t runs,
                         std::uint64_t seed, int workers = 1);

/// One forward cascade; returns the number of activated nodes.
std::uint32_t cascade_once(const AdEdgeView& view, const CtpFn& ctp,
                           const std::vector<NodeId>& seeds, Rng& rng,
                           std::vector<NodeId>& frontier_buf,
                           std::vector<std::uint8_t>& active_buf);

}  // namespace minreg
