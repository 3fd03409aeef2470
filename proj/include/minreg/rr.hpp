#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minreg/rng.hpp"
#include "minreg/spread.hpp"
#include "minreg/topic_graph.hpp"

namespace minreg {

enum class RrKind : std::uint8_t { kRr = 0, kRrc = 1 };

struct RrSet {
  NodeId root;
  std::vector<NodeId> members;
};

struct SampleParams {
  double epsilon = 0.1;
  double ell = 1.0;
};

/// One plain RR-set: reverse BFS from a uniformly random root; every dequeued
/// node (including the root) is a member. Each in-arc is flipped at most once.
RrSet sample_rr(const AdEdgeView& view, Rng& rng);

/// RRC variant: membership additionally requires the node's CTP coin. A node
/// whose coin fails is still traversed, since its in-neighbors may be seeds;
/// the root joins members only if its own coin succeeds.
RrSet sample_rrc(const AdEdgeView& view, const CtpFn& ctp, Rng& rng);

/// TIM sample-size bound L(s, epsilon); natural logarithms, ln C(n,s) via
/// log-gamma. The *_raw variant returns the bound before the final ceil.
double theta_bound_raw(std::uint64_t s, const SampleParams& params, std::uint64_t n,
                       double opt_lb);
std::uint64_t theta_bound(std::uint64_t s, const SampleParams& params, std::uint64_t n,
                          double opt_lb);

/// Self-contained lower bound for OPT_s under plain IC: pilot-sample RR sets,
/// greedily max-cover with s nodes, deflate by 1.5, floor at s, cap at n.
double estimate_opt_lb(const AdEdgeView& view, std::uint64_t s, std::uint64_t pilot_size,
                       Rng rng);

/// A pool of sampled RR/RRC sets for one ad with an inverted node->set index.
///
/// Roots are dealt from a seeded permutation of V, one full pass per theta/n
/// sets, so root counts stay balanced as the pool grows; set k depends only on
/// (stream key, k). Removal is a flag plus lazy compaction of the postings;
/// coverage_fraction deliberately ignores removal flags (removal is allocator
/// bookkeeping, not an estimator change).
class RrCollection {
 public:
  RrCollection(RrKind kind, const AdEdgeView& view, Rng stream);

  RrKind kind() const { return kind_; }
  std::uint64_t theta() const { return theta_; }
  NodeId node_count() const { return n_; }

  /// Append `additional` fresh sets. `ctp` must be given for RRC pools and
  /// must be absent for plain RR pools.
  void extend(std::uint64_t additional, const CtpFn* ctp = nullptr, int workers = 1);

  /// Fraction of all theta sampled sets (removed included) that intersect S.
  double coverage_fraction(const std::vector<NodeId>& seeds) const;

  /// Non-removed sets containing v; O(1).
  std::uint64_t residual_coverage(NodeId v) const { return residual_count_[v]; }

  /// Flag every non-removed set containing v as removed and return how many
  /// were flagged (v's disjoint coverage attribution).
  std::uint64_t remove_covered(NodeId v);

  std::uint64_t set_count() const { return roots_.size(); }
  NodeId set_root(std::uint64_t sid) const { return roots_[sid]; }
  std::span<const NodeId> set_members(std::uint64_t sid) const {
    return {member_data_.data() + offsets_[sid],
            static_cast<std::size_t>(offsets_[sid + 1] - offsets_[sid])};
  }
  bool is_removed(std::uint64_t sid) const { return removed_[sid] != 0; }

  void dump(const std::string& path) const;
  static RrCollection load(const std::string& path, const AdEdgeView& view);

 private:
  RrKind kind_;
  const AdEdgeView* view_;
  NodeId n_;
  Rng stream_;
  std::vector<NodeId> root_schedule_;  // seeded permutation of V

  std::uint64_t theta_ = 0;
  std::vector<NodeId> roots_;
  std::vector<std::uint32_t> offsets_;  // size theta+1; member count stays < 2^32
  std::vector<NodeId> member_data_;
  std::vector<std::uint8_t> removed_;
  std::vector<std::vector<std::uint32_t>> postings_;  // node -> set ids, lazily compacted
  std::vector<std::uint64_t> residual_count_;
};

}  // namespace minreg
