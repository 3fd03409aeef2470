#include "minreg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "minreg/rng.hpp"

namespace minreg {

bool Allocation::contains(int ad, NodeId u) const {
  const auto& s = seeds_[ad];
  return std::binary_search(s.begin(), s.end(), u);
}

bool Allocation::add(int ad, NodeId u) {
  auto& s = seeds_[ad];
  auto it = std::lower_bound(s.begin(), s.end(), u);
  if (it != s.end() && *it == u) return false;
  s.insert(it, u);
  ++usage_[u];
  return true;
}

std::size_t Allocation::total_seeds() const {
  std::size_t t = 0;
  for (const auto& s : seeds_) t += s.size();
  return t;
}

std::size_t Allocation::distinct_nodes() const {
  std::size_t t = 0;
  for (auto c : usage_)
    if (c > 0) ++t;
  return t;
}

Instance::Instance(const TopicGraph& graph, std::vector<AdSpec> ads, std::uint32_t kappa,
                   double lambda)
    : Instance(graph, std::move(ads), std::vector<std::uint32_t>(graph.node_count(), kappa),
               lambda) {}

Instance::Instance(const TopicGraph& graph, std::vector<AdSpec> ads, const AttentionSpec& att,
                   double lambda)
    : Instance(graph, std::move(ads),
               [&] {
                 std::vector<std::uint32_t> k(graph.node_count(), att.default_kappa);
                 for (auto [u, v] : att.overrides) {
                   if (u >= graph.node_count())
                     throw std::invalid_argument("attention override for unknown node");
                   k[u] = v;
                 }
                 return k;
               }(),
               lambda) {}

Instance::Instance(const TopicGraph& graph, std::vector<AdSpec> ads,
                   std::vector<std::uint32_t> kappa, double lambda)
    : graph_(&graph), ads_(std::move(ads)), kappa_(std::move(kappa)), lambda_(lambda) {
  validate();
  effective_budget_.reserve(ads_.size());
  for (const AdSpec& ad : ads_) effective_budget_.push_back(ad.effective_budget());
  views_.reserve(ads_.size());
  for (const AdSpec& ad : ads_) views_.push_back(collapse(*graph_, ad.gamma));
}

void Instance::validate() const {
  if (lambda_ < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (kappa_.size() != graph_->node_count())
    throw std::invalid_argument("kappa vector length must equal node count");
  const NodeId n = graph_->node_count();
  const int k = graph_->topic_count();
  for (const AdSpec& ad : ads_) {
    if (static_cast<int>(ad.gamma.size()) != k)
      throw std::invalid_argument("ad gamma length does not match topic count");
    double sum = std::accumulate(ad.gamma.begin(), ad.gamma.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("ad gamma must sum to 1");
    for (double g : ad.gamma)
      if (g < 0) throw std::invalid_argument("ad gamma must be nonnegative");
    if (!(ad.budget > 0)) throw std::invalid_argument("budget must be positive");
    if (!(ad.cpe > 0)) throw std::invalid_argument("cpe must be positive");
    if (ad.boost_beta < 0) throw std::invalid_argument("boost_beta must be nonnegative");
    switch (ad.ctp.kind) {
      case CtpSource::kConstant:
        if (ad.ctp.value < 0 || ad.ctp.value > 1)
          throw std::invalid_argument("ctp out of [0,1]");
        break;
      case CtpSource::kTable:
        if (ad.ctp.table.size() != n)
          throw std::invalid_argument("ctp table length must equal node count");
        for (double v : ad.ctp.table)
          if (v < 0 || v > 1) throw std::invalid_argument("ctp out of [0,1]");
        break;
      case CtpSource::kTopicTable:
        if (ad.ctp.table.size() != static_cast<std::size_t>(n) * k)
          throw std::invalid_argument("ctp topic table must be node_count x topics");
        for (double v : ad.ctp.table)
          if (v < 0 || v > 1) throw std::invalid_argument("ctp out of [0,1]");
        break;
      case CtpSource::kUniform:
        if (ad.ctp.lo < 0 || ad.ctp.hi > 1 || ad.ctp.lo > ad.ctp.hi)
          throw std::invalid_argument("ctp uniform range invalid");
        break;
    }
  }
}

double Instance::ctp(NodeId u, int ad) const {
  if (u >= graph_->node_count() || ad < 0 || ad >= ad_count())
    throw std::out_of_range("ctp query out of range");
  const CtpSource& c = ads_[ad].ctp;
  switch (c.kind) {
    case CtpSource::kConstant:
      return c.value;
    case CtpSource::kTable:
      return c.table[u];
    case CtpSource::kTopicTable: {
      const int k = graph_->topic_count();
      const double* row = c.table.data() + static_cast<std::size_t>(u) * k;
      double acc = 0.0;
      for (int z = 0; z < k; ++z) acc += ads_[ad].gamma[z] * row[z];
      return acc;
    }
    case CtpSource::kUniform:
      return c.lo + (c.hi - c.lo) * hash_to_unit(c.seed, u, static_cast<std::uint64_t>(ad));
  }
  return 0.0;
}

const AdEdgeView& Instance::view(int ad) const { return views_[ad]; }

std::vector<AttentionViolation> validate_allocation(const Instance& instance,
                                                    const Allocation& alloc) {
  std::vector<AttentionViolation> out;
  const NodeId n = instance.graph().node_count();
  std::vector<std::uint32_t> count(n, 0);
  for (int i = 0; i < alloc.ad_count(); ++i)
    for (NodeId u : alloc.seeds(i)) {
      if (u >= n) throw std::out_of_range("allocation references unknown node");
      ++count[u];
    }
  for (NodeId u = 0; u < n; ++u)
    if (count[u] > instance.kappa(u)) out.push_back({u, count[u], instance.kappa(u)});
  return out;
}

std::string allocation_to_string(const Allocation& alloc) {
  std::ostringstream out;
  for (int i = 0; i < alloc.ad_count(); ++i) {
    out << i << ':';
    for (NodeId u : alloc.seeds(i)) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

void save_allocation(const Allocation& alloc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write allocation file: " + path);
  out << allocation_to_string(alloc);
}

Allocation load_allocation(const Instance& instance, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open allocation file: " + path);
  Allocation alloc = instance.make_allocation();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'ad: nodes'");
    int ad = std::stoi(line.substr(0, colon));
    if (ad < 0 || ad >= alloc.ad_count())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown ad id");
    std::istringstream ls(line.substr(colon + 1));
    unsigned long long u;
    while (ls >> u) alloc.add(ad, static_cast<NodeId>(u));
  }
  return alloc;
}

}  // namespace minreg
