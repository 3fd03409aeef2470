#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minreg/campaign.hpp"
#include "minreg/topic_graph.hpp"

namespace minreg {

/// Generator settings used when the sweep builds its own synthetic graph.
struct GeneratorSpec {
  std::string model = "topical";  // "topical" | "weighted-cascade"
  NodeId nodes = 1000;
  std::uint64_t arcs = 5000;
  int topics = 1;
  double mean = 1.0 / 30.0;  // topical only
};

struct ExperimentConfig {
  std::string graph_path;      // empty -> use generator
  GeneratorSpec generator;
  std::string campaign_path;   // required
  std::vector<std::string> allocators;  // subset of myopic|myopic+|greedy-mc|tirm
  double epsilon = 0.1;
  double ell = 1.0;
  std::uint64_t greedy_mc_runs = 1000;
  std::vector<double> lambdas = {0.0};
  std::vector<std::uint32_t> kappas = {1};
  std::string attention_path;  // optional per-user bounds; overrides kappas
  std::uint64_t evaluation_runs = 10'000;
  std::uint64_t master_seed = 0;
  std::string output_dir = ".";
  int workers = 1;
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Cartesian product of allocators x kappa x lambda. Writes report.csv,
/// summary.txt and one allocation file per cell into output_dir; returns the
/// paths written. Idempotent for a fixed config.
std::vector<std::string> run_sweep(const ExperimentConfig& config);

}  // namespace minreg
