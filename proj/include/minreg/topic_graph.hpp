#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace minreg {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

/// Directed social graph with K per-topic influence probabilities on each arc.
/// Immutable after construction; adjacency is CSR-indexed both ways so that
/// forward cascades and reverse-reachable sampling are array walks.
class TopicGraph {
 public:
  struct Arc {
    NodeId src;
    NodeId dst;
  };

  /// `probs` is arc-major: probs[a * K + z]. Throws std::invalid_argument on
  /// out-of-range ids, probabilities outside [0,1], or duplicate (src,dst).
  TopicGraph(NodeId node_count, int topic_count, std::vector<Arc> arcs,
             std::vector<double> probs);

  NodeId node_count() const { return node_count_; }
  int topic_count() const { return topic_count_; }
  std::size_t arc_count() const { return arcs_.size(); }

  const Arc& arc(ArcId a) const { return arcs_[a]; }
  /// Per-topic probabilities of one arc, length K.
  std::span<const double> arc_probs(ArcId a) const {
    return {probs_.data() + static_cast<std::size_t>(a) * topic_count_,
            static_cast<std::size_t>(topic_count_)};
  }

  /// Arc ids leaving / entering a node.
  std::span<const ArcId> out_arcs(NodeId u) const {
    return {out_ids_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
  }
  std::span<const ArcId> in_arcs(NodeId u) const {
    return {in_ids_.data() + in_off_[u], in_off_[u + 1] - in_off_[u]};
  }

  std::uint32_t in_degree(NodeId u) const {
    return static_cast<std::uint32_t>(in_off_[u + 1] - in_off_[u]);
  }

  /// Original labels when the source file used non-dense ids; empty otherwise.
  const std::vector<std::string>& node_labels() const { return node_labels_; }
  void set_node_labels(std::vector<std::string> labels) { node_labels_ = std::move(labels); }

 private:
  NodeId node_count_;
  int topic_count_;
  std::vector<Arc> arcs_;      // file order
  std::vector<double> probs_;  // arc-major, K per arc
  std::vector<std::size_t> out_off_, in_off_;
  std::vector<ArcId> out_ids_, in_ids_;
  std::vector<std::string> node_labels_;
};

/// Read-only per-ad view of the graph: each arc carries the topic-collapsed
/// probability sum_z gamma[z] * p[z] (the ad's effective IC probability).
class AdEdgeView {
 public:
  AdEdgeView(const TopicGraph& graph, std::vector<double> collapsed)
      : graph_(&graph), p_(std::move(collapsed)) {}

  const TopicGraph& graph() const { return *graph_; }
  NodeId node_count() const { return graph_->node_count(); }
  double arc_prob(ArcId a) const { return p_[a]; }

 private:
  const TopicGraph* graph_;
  std::vector<double> p_;
};

/// Collapse per-topic probabilities with a topic mixture (length must be K).
AdEdgeView collapse(const TopicGraph& graph, std::span<const double> gamma);

/// Parse the text edge-list format: header `nodes=<N> topics=<K>` followed by
/// one `<src> <dst> <p_1> ... <p_K>` line per arc. Non-integer or out-of-range
/// ids are remapped densely in order of first appearance and the labels are
/// kept on the returned graph. Errors name the offending line.
TopicGraph load_graph(const std::string& path);
TopicGraph parse_graph(std::istream& in, const std::string& origin);

void save_graph(const TopicGraph& graph, const std::string& path);

}  // namespace minreg
