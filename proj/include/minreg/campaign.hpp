#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minreg/topic_graph.hpp"

namespace minreg {

/// Where an ad's click-through probabilities come from.
///   kConstant   one value for every user
///   kTable      a direct per-user value
///   kTopicTable per-user per-topic host probabilities, collapsed with gamma
///   kUniform    value in [lo,hi) derived from hash(seed, user, ad)
struct CtpSource {
  enum Kind { kConstant, kTable, kTopicTable, kUniform } kind = kConstant;
  double value = 0.0;                 // kConstant
  std::vector<double> table;          // kTable: n entries; kTopicTable: n*K, user-major
  double lo = 0.0, hi = 0.0;          // kUniform
  std::uint64_t seed = 0;             // kUniform derivation seed

  static CtpSource constant(double v) { return {kConstant, v, {}, 0, 0, 0}; }
  static CtpSource per_node(std::vector<double> values) {
    return {kTable, 0, std::move(values), 0, 0, 0};
  }
  static CtpSource topic_table(std::vector<double> values) {
    return {kTopicTable, 0, std::move(values), 0, 0, 0};
  }
  static CtpSource uniform_range(double lo, double hi, std::uint64_t seed) {
    return {kUniform, 0, {}, lo, hi, seed};
  }
};

/// One advertiser: topic mixture, budget, cost per engagement, CTP source and
/// optional budget boost. Validated on construction of an Instance.
struct AdSpec {
  int id = 0;
  std::vector<double> gamma;
  double budget = 0.0;
  double cpe = 0.0;
  CtpSource ctp;
  double boost_beta = 0.0;

  double effective_budget() const { return (1.0 + boost_beta) * budget; }
};

std::vector<AdSpec> load_campaign(const std::string& path);
std::vector<AdSpec> parse_campaign(const std::string& json_text, const std::string& origin);
void save_campaign(const std::vector<AdSpec>& ads, const std::string& path);

/// Attention-bound file: lines `<node> <kappa>`, with an optional
/// `default <kappa>` (or `* <kappa>`) line applying to unlisted nodes.
struct AttentionSpec {
  std::uint32_t default_kappa = 1;
  std::vector<std::pair<NodeId, std::uint32_t>> overrides;
};

AttentionSpec load_attention(const std::string& path);

}  // namespace minreg
