#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minreg/campaign.hpp"
#include "minreg/topic_graph.hpp"

namespace minreg {

class Instance;

/// Per-ad seed sets with usage bookkeeping. Set semantics: adding a node to
/// an ad it already seeds is a no-op.
class Allocation {
 public:
  Allocation(NodeId node_count, int ad_count)
      : usage_(node_count, 0), seeds_(ad_count) {}

  int ad_count() const { return static_cast<int>(seeds_.size()); }
  const std::vector<NodeId>& seeds(int ad) const { return seeds_[ad]; }
  std::uint32_t usage(NodeId u) const { return usage_[u]; }
  bool contains(int ad, NodeId u) const;
  std::size_t total_seeds() const;
  std::size_t distinct_nodes() const;

  /// Returns false (and changes nothing) if u is already a seed of `ad`.
  bool add(int ad, NodeId u);

 private:
  std::vector<std::uint32_t> usage_;
  std::vector<std::vector<NodeId>> seeds_;  // kept sorted
};

struct AttentionViolation {
  NodeId node;
  std::uint32_t count;
  std::uint32_t kappa;
};

/// A full problem instance: graph, ads, attention bounds and seed penalty.
/// Budget boost is folded in here: budget(i) always returns B' = (1+beta)B.
/// Immutable after construction; safe for concurrent reads.
class Instance {
 public:
  Instance(const TopicGraph& graph, std::vector<AdSpec> ads, std::uint32_t kappa,
           double lambda);
  Instance(const TopicGraph& graph, std::vector<AdSpec> ads, std::vector<std::uint32_t> kappa,
           double lambda);
  Instance(const TopicGraph& graph, std::vector<AdSpec> ads, const AttentionSpec& attention,
           double lambda);

  const TopicGraph& graph() const { return *graph_; }
  int ad_count() const { return static_cast<int>(ads_.size()); }
  const AdSpec& ad(int i) const { return ads_[i]; }
  double budget(int i) const { return effective_budget_[i]; }
  double cpe(int i) const { return ads_[i].cpe; }
  double lambda() const { return lambda_; }
  std::uint32_t kappa(NodeId u) const { return kappa_[u]; }
  const std::vector<std::uint32_t>& kappa() const { return kappa_; }

  /// Click-through probability delta(u, i).
  double ctp(NodeId u, int ad) const;

  /// The ad's collapsed edge view, built lazily once per ad.
  const AdEdgeView& view(int ad) const;

  Allocation make_allocation() const {
    return Allocation(graph_->node_count(), ad_count());
  }

 private:
  void validate() const;

  const TopicGraph* graph_;
  std::vector<AdSpec> ads_;
  std::vector<double> effective_budget_;
  std::vector<std::uint32_t> kappa_;
  double lambda_;
  mutable std::vector<AdEdgeView> views_;  // built in constructor
};

/// Empty result iff the allocation respects every attention bound.
std::vector<AttentionViolation> validate_allocation(const Instance& instance,
                                                    const Allocation& alloc);

/// Allocation file: one `ad_id: node node ...` line per ad.
void save_allocation(const Allocation& alloc, const std::string& path);
std::string allocation_to_string(const Allocation& alloc);
Allocation load_allocation(const Instance& instance, const std::string& path);

}  // namespace minreg
