#include "minreg/rr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "minreg/workers.hpp"

namespace minreg {

namespace {

/// Reverse BFS shared by both set kinds. `stamp`/`mark` implement O(1) reset
/// of the visited array across calls.
void reverse_bfs(const AdEdgeView& view, NodeId root, const CtpFn* ctp, Rng& rng,
                 std::vector<NodeId>& queue, std::vector<std::uint32_t>& mark,
                 std::uint32_t stamp, std::vector<NodeId>& members) {
  const TopicGraph& g = view.graph();
  queue.clear();
  members.clear();
  mark[root] = stamp;
  queue.push_back(root);
  if (ctp == nullptr) {
    members.push_back(root);
  } else if (rng.bernoulli((*ctp)(root))) {
    members.push_back(root);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (ArcId a : g.in_arcs(u)) {
      NodeId v = g.arc(a).src;
      if (mark[v] == stamp) continue;
      if (!rng.bernoulli(view.arc_prob(a))) continue;
      mark[v] = stamp;
      queue.push_back(v);
      if (ctp == nullptr || rng.bernoulli((*ctp)(v))) members.push_back(v);
    }
  }
}

}  // namespace

RrSet sample_rr(const AdEdgeView& view, Rng& rng) {
  if (view.node_count() == 0) throw std::invalid_argument("sample_rr: empty graph");
  NodeId root = static_cast<NodeId>(rng.next_below(view.node_count()));
  std::vector<NodeId> queue;
  std::vector<std::uint32_t> mark(view.node_count(), 0);
  RrSet set{root, {}};
  reverse_bfs(view, root, nullptr, rng, queue, mark, 1, set.members);
  return set;
}

RrSet sample_rrc(const AdEdgeView& view, const CtpFn& ctp, Rng& rng) {
  if (view.node_count() == 0) throw std::invalid_argument("sample_rrc: empty graph");
  NodeId root = static_cast<NodeId>(rng.next_below(view.node_count()));
  std::vector<NodeId> queue;
  std::vector<std::uint32_t> mark(view.node_count(), 0);
  RrSet set{root, {}};
  reverse_bfs(view, root, &ctp, rng, queue, mark, 1, set.members);
  return set;
}

double theta_bound_raw(std::uint64_t s, const SampleParams& params, std::uint64_t n,
                       double opt_lb) {
  if (opt_lb <= 0.0) throw std::invalid_argument("theta_bound: opt_lb must be positive");
  if (s < 1 || s > n) throw std::invalid_argument("theta_bound: s must be in [1, n]");
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0) || !(params.ell > 0.0))
    throw std::invalid_argument("theta_bound: invalid sample params");
  const double nd = static_cast<double>(n);
  const double ln_choose = std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(s) + 1.0) -
                           std::lgamma(nd - static_cast<double>(s) + 1.0);
  const double numer = params.ell * std::log(nd) + ln_choose + std::log(2.0);
  return (8.0 + 2.0 * params.epsilon) * nd * numer /
         (opt_lb * params.epsilon * params.epsilon);
}

std::uint64_t theta_bound(std::uint64_t s, const SampleParams& params, std::uint64_t n,
                          double opt_lb) {
  return static_cast<std::uint64_t>(std::ceil(theta_bound_raw(s, params, n, opt_lb)));
}

double estimate_opt_lb(const AdEdgeView& view, std::uint64_t s, std::uint64_t pilot_size,
                       Rng rng) {
  if (pilot_size < 1) throw std::invalid_argument("estimate_opt_lb: pilot_size must be >= 1");
  const NodeId n = view.node_count();
  if (s < 1 || s > n) throw std::invalid_argument("estimate_opt_lb: s must be in [1, n]");

  std::vector<std::vector<std::uint32_t>> postings(n);
  std::vector<std::uint64_t> count(n, 0);
  std::vector<NodeId> queue, members;
  std::vector<std::uint32_t> mark(n, 0);
  std::vector<std::vector<NodeId>> sets(pilot_size);
  for (std::uint64_t k = 0; k < pilot_size; ++k) {
    Rng sub = rng.substream(k);
    NodeId root = static_cast<NodeId>(sub.next_below(n));
    reverse_bfs(view, root, nullptr, sub, queue, mark, static_cast<std::uint32_t>(k + 1),
                members);
    sets[k] = members;
    for (NodeId v : members) {
      postings[v].push_back(static_cast<std::uint32_t>(k));
      ++count[v];
    }
  }

  // Greedy max cover with s nodes.
  std::vector<std::uint8_t> covered(pilot_size, 0);
  std::uint64_t covered_total = 0;
  for (std::uint64_t round = 0; round < s; ++round) {
    NodeId best = 0;
    std::uint64_t best_count = 0;
    for (NodeId v = 0; v < n; ++v)
      if (count[v] > best_count) {
        best_count = count[v];
        best = v;
      }
    if (best_count == 0) break;
    for (std::uint32_t sid : postings[best]) {
      if (covered[sid]) continue;
      covered[sid] = 1;
      ++covered_total;
      for (NodeId w : sets[sid]) --count[w];
    }
  }
  double fraction = static_cast<double>(covered_total) / static_cast<double>(pilot_size);
  double lb = std::max(static_cast<double>(s), static_cast<double>(n) * fraction / 1.5);
  return std::min(lb, static_cast<double>(n));
}

RrCollection::RrCollection(RrKind kind, const AdEdgeView& view, Rng stream)
    : kind_(kind), view_(&view), n_(view.node_count()), stream_(stream) {
  if (n_ == 0) throw std::invalid_argument("RrCollection: empty graph");
  offsets_.push_back(0);
  postings_.resize(n_);
  residual_count_.assign(n_, 0);
  // Seeded permutation dealt cyclically as the root schedule.
  root_schedule_.resize(n_);
  for (NodeId u = 0; u < n_; ++u) root_schedule_[u] = u;
  Rng perm_rng = stream_.substream(~std::uint64_t{0});
  for (NodeId u = n_ - 1; u > 0; --u)
    std::swap(root_schedule_[u], root_schedule_[perm_rng.next_below(u + 1)]);
}

void RrCollection::extend(std::uint64_t additional, const CtpFn* ctp, int workers) {
  if (kind_ == RrKind::kRrc && ctp == nullptr)
    throw std::invalid_argument("extend: RRC collection requires a CTP accessor");
  if (kind_ == RrKind::kRr && ctp != nullptr)
    throw std::invalid_argument("extend: plain RR collection takes no CTP accessor");
  if (additional == 0) return;

  std::vector<std::vector<NodeId>> batch(additional);
  std::vector<NodeId> batch_root(additional);
  workers = resolve_workers(workers);

  auto sample_one = [&](std::uint64_t i, std::vector<NodeId>& queue,
                        std::vector<std::uint32_t>& mark, std::uint32_t& stamp) {
    const std::uint64_t k = theta_ + i;
    Rng sub = stream_.substream(k);
    NodeId root = root_schedule_[k % n_];
    reverse_bfs(*view_, root, ctp, sub, queue, mark, ++stamp, batch[i]);
    batch_root[i] = root;
  };

  if (workers <= 1) {
    std::vector<NodeId> queue;
    std::vector<std::uint32_t> mark(n_, 0);
    std::uint32_t stamp = 0;
    for (std::uint64_t i = 0; i < additional; ++i) sample_one(i, queue, mark, stamp);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        std::vector<NodeId> queue;
        std::vector<std::uint32_t> mark(n_, 0);
        std::uint32_t stamp = 0;
        for (std::uint64_t i = w; i < additional; i += workers)
          sample_one(i, queue, mark, stamp);
      });
    for (auto& t : pool) t.join();
  }

  // Serial merge in set-id order keeps the index deterministic.
  for (std::uint64_t i = 0; i < additional; ++i) {
    const std::uint32_t sid = static_cast<std::uint32_t>(roots_.size());
    roots_.push_back(batch_root[i]);
    removed_.push_back(0);
    for (NodeId v : batch[i]) {
      member_data_.push_back(v);
      postings_[v].push_back(sid);
      ++residual_count_[v];
    }
    if (member_data_.size() > 0xffffffffull)
      throw std::length_error("RrCollection: member storage exceeds 32-bit addressing");
    offsets_.push_back(static_cast<std::uint32_t>(member_data_.size()));
  }
  theta_ += additional;
}

double RrCollection::coverage_fraction(const std::vector<NodeId>& seeds) const {
  if (theta_ == 0) throw std::invalid_argument("coverage_fraction: empty collection");
  if (seeds.empty()) return 0.0;
  std::vector<std::uint8_t> in_s(n_, 0);
  for (NodeId u : seeds) in_s[u] = 1;
  std::uint64_t covered = 0;
  for (std::uint64_t sid = 0; sid < set_count(); ++sid)
    for (NodeId v : set_members(sid))
      if (in_s[v]) {
        ++covered;
        break;
      }
  return static_cast<double>(covered) / static_cast<double>(theta_);
}

std::uint64_t RrCollection::remove_covered(NodeId v) {
  std::uint64_t flagged = 0;
  auto& list = postings_[v];
  for (std::uint32_t sid : list) {
    if (removed_[sid]) continue;
    removed_[sid] = 1;
    ++flagged;
    for (NodeId w : set_members(sid)) --residual_count_[w];
  }
  list.clear();  // every listed set is now removed; compact eagerly
  list.shrink_to_fit();
  return flagged;
}

namespace {
constexpr char kMagic[4] = {'M', 'R', 'R', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("RR dump: truncated file");
  return v;
}
}  // namespace

void RrCollection::dump(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write RR dump: " + path);
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint8_t>(kind_));
  put(out, n_);
  put(out, theta_);
  for (std::uint64_t sid = 0; sid < set_count(); ++sid) {
    put(out, roots_[sid]);
    put(out, removed_[sid]);
    auto members = set_members(sid);
    put(out, static_cast<std::uint32_t>(members.size()));
    out.write(reinterpret_cast<const char*>(members.data()), members.size() * sizeof(NodeId));
  }
}

RrCollection RrCollection::load(const std::string& path, const AdEdgeView& view) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open RR dump: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("RR dump: bad magic header");
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("RR dump: unknown version");
  RrKind kind = static_cast<RrKind>(get<std::uint8_t>(in));
  NodeId n = get<NodeId>(in);
  if (n != view.node_count()) throw std::runtime_error("RR dump: node count mismatch");
  std::uint64_t theta = get<std::uint64_t>(in);

  RrCollection coll(kind, view, Rng(0));
  for (std::uint64_t sid = 0; sid < theta; ++sid) {
    NodeId root = get<NodeId>(in);
    std::uint8_t removed = get<std::uint8_t>(in);
    std::uint32_t len = get<std::uint32_t>(in);
    coll.roots_.push_back(root);
    coll.removed_.push_back(removed);
    for (std::uint32_t j = 0; j < len; ++j) {
      NodeId v = get<NodeId>(in);
      coll.member_data_.push_back(v);
      if (!removed) {
        coll.postings_[v].push_back(static_cast<std::uint32_t>(sid));
        ++coll.residual_count_[v];
      }
    }
    coll.offsets_.push_back(static_cast<std::uint32_t>(coll.member_data_.size()));
  }
  coll.theta_ = theta;
  return coll;
}

}  // namespace minreg
