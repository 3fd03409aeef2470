#include "minreg/topic_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace minreg {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

TopicGraph::TopicGraph(NodeId node_count, int topic_count, std::vector<Arc> arcs,
                       std::vector<double> probs)
    : node_count_(node_count),
      topic_count_(topic_count),
      arcs_(std::move(arcs)),
      probs_(std::move(probs)) {
  if (topic_count_ <= 0) throw std::invalid_argument("topic count must be positive");
  if (probs_.size() != arcs_.size() * static_cast<std::size_t>(topic_count_))
    throw std::invalid_argument("probability array does not match arcs * topics");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(arcs_.size() * 2);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.src >= node_count_ || arc.dst >= node_count_)
      throw std::invalid_argument("arc endpoint out of range");
    if (!seen.insert(static_cast<std::uint64_t>(arc.src) * node_count_ + arc.dst).second)
      throw std::invalid_argument("duplicate arc (" + std::to_string(arc.src) + "," +
                                  std::to_string(arc.dst) + ")");
    for (int z = 0; z < topic_count_; ++z) {
      double p = probs_[a * topic_count_ + z];
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability out of range");
    }
  }

  out_off_.assign(node_count_ + 1, 0);
  in_off_.assign(node_count_ + 1, 0);
  for (const Arc& arc : arcs_) {
    ++out_off_[arc.src + 1];
    ++in_off_[arc.dst + 1];
  }
  for (NodeId u = 0; u < node_count_; ++u) {
    out_off_[u + 1] += out_off_[u];
    in_off_[u + 1] += in_off_[u];
  }
  out_ids_.resize(arcs_.size());
  in_ids_.resize(arcs_.size());
  std::vector<std::size_t> ocur(out_off_.begin(), out_off_.end() - 1);
  std::vector<std::size_t> icur(in_off_.begin(), in_off_.end() - 1);
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    out_ids_[ocur[arcs_[a].src]++] = a;
    in_ids_[icur[arcs_[a].dst]++] = a;
  }
}

AdEdgeView collapse(const TopicGraph& graph, std::span<const double> gamma) {
  if (static_cast<int>(gamma.size()) != graph.topic_count())
    throw std::invalid_argument("topic mixture length does not match graph topic count");
  std::vector<double> p(graph.arc_count());
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    auto probs = graph.arc_probs(a);
    double acc = 0.0;
    for (int z = 0; z < graph.topic_count(); ++z) acc += gamma[z] * probs[z];
    p[a] = acc;
  }
  return AdEdgeView(graph, std::move(p));
}

TopicGraph parse_graph(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t lineno = 0;

  NodeId n = 0;
  int k = 0;
  // Header: first non-empty, non-comment line.
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    unsigned long long nv = 0;
    int kv = 0;
    if (std::sscanf(line.c_str(), "nodes=%llu topics=%d", &nv, &kv) != 2)
      fail(origin, lineno, "expected header 'nodes=<N> topics=<K>'");
    if (kv <= 0) fail(origin, lineno, "topic count must be positive");
    n = static_cast<NodeId>(nv);
    k = kv;
    break;
  }
  if (k == 0) fail(origin, lineno, "missing header");

  std::vector<TopicGraph::Arc> arcs;
  std::vector<double> probs;
  std::vector<std::string> raw_src, raw_dst;
  bool needs_remap = false;

  auto parse_id = [&](const std::string& tok, NodeId* out) {
    unsigned long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v >= n) return false;
    *out = static_cast<NodeId>(v);
    return true;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string stok, dtok;
    if (!(ls >> stok >> dtok)) fail(origin, lineno, "malformed arc line");
    NodeId s = 0, d = 0;
    if (!needs_remap && (!parse_id(stok, &s) || !parse_id(dtok, &d))) needs_remap = true;
    raw_src.push_back(stok);
    raw_dst.push_back(dtok);
    arcs.push_back({s, d});
    for (int z = 0; z < k; ++z) {
      double p;
      if (!(ls >> p)) fail(origin, lineno, "expected " + std::to_string(k) + " probabilities");
      if (!(p >= 0.0 && p <= 1.0)) fail(origin, lineno, "probability out of range");
      probs.push_back(p);
    }
    std::string extra;
    if (ls >> extra) fail(origin, lineno, "trailing tokens after probabilities");
  }

  std::vector<std::string> labels;
  if (needs_remap) {
    std::unordered_map<std::string, NodeId> ids;
    ids.reserve(arcs.size() * 2);
    auto remap = [&](const std::string& tok, std::size_t at_line) {
      auto it = ids.find(tok);
      if (it != ids.end()) return it->second;
      if (ids.size() >= n) fail(origin, at_line, "more distinct node ids than declared nodes");
      NodeId id = static_cast<NodeId>(ids.size());
      ids.emplace(tok, id);
      labels.push_back(tok);
      return id;
    };
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      arcs[a].src = remap(raw_src[a], 0);
      arcs[a].dst = remap(raw_dst[a], 0);
    }
  }

  try {
    TopicGraph g(n, k, std::move(arcs), std::move(probs));
    g.set_node_labels(std::move(labels));
    return g;
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
}

TopicGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  TopicGraph g = parse_graph(in, path);
  if (!g.node_labels().empty()) {
    // Persist the dense-id mapping next to the source file.
    std::ofstream map(path + ".ids");
    for (NodeId u = 0; u < g.node_labels().size(); ++u)
      map << u << ' ' << g.node_labels()[u] << '\n';
  }
  return g;
}

void save_graph(const TopicGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << "nodes=" << graph.node_count() << " topics=" << graph.topic_count() << '\n';
  out.precision(17);
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    const auto& arc = graph.arc(a);
    out << arc.src << ' ' << arc.dst;
    for (double p : graph.arc_probs(a)) out << ' ' << p;
    out << '\n';
  }
}

}  // namespace minreg
