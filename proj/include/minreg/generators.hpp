#pragma once

#include <cstdint>

#include "minreg/topic_graph.hpp"

namespace minreg {

/// Random simple directed graph with m arcs; every topic's probability on
/// (u,v) is 1/indegree(v) (weighted-cascade assignment). Deterministic in seed.
TopicGraph gen_weighted_cascade(NodeId n, std::uint64_t m, int topics, std::uint64_t seed);

/// Random simple directed graph with m arcs; each per-arc per-topic
/// probability is an exponential draw with the given mean, clipped to [0,1].
TopicGraph gen_topical(NodeId n, std::uint64_t m, int topics, double mean, std::uint64_t seed);

}  // namespace minreg
