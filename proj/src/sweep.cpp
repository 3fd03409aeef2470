#include "minreg/sweep.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "minreg/allocators.hpp"
#include "minreg/evaluate.hpp"
#include "minreg/generators.hpp"
#include "minreg/instance.hpp"

namespace minreg {

namespace {

using nlohmann::json;

AllocatorResult run_allocator(const std::string& name, const Instance& instance,
                              const ExperimentConfig& cfg, std::uint64_t cell_seed) {
  if (name == "myopic") return myopic(instance);
  if (name == "myopic+") return myopic_plus(instance);
  if (name == "greedy-mc")
    return greedy(instance, mc_estimator(cfg.greedy_mc_runs, cell_seed, cfg.workers));
  if (name == "tirm") {
    TirmOptions opt;
    opt.params = {cfg.epsilon, cfg.ell};
    opt.seed = cell_seed;
    opt.workers = cfg.workers;
    return tirm(instance, opt);
  }
  throw std::invalid_argument("unknown allocator: " + name);
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j = json::parse(in);
  ExperimentConfig cfg;
  cfg.graph_path = j.value("graph", "");
  if (j.contains("generator")) {
    const json& g = j["generator"];
    cfg.generator.model = g.value("model", cfg.generator.model);
    cfg.generator.nodes = g.value("nodes", cfg.generator.nodes);
    cfg.generator.arcs = g.value("arcs", cfg.generator.arcs);
    cfg.generator.topics = g.value("topics", cfg.generator.topics);
    cfg.generator.mean = g.value("mean", cfg.generator.mean);
  }
  cfg.campaign_path = j.at("campaign").get<std::string>();
  cfg.allocators = j.at("allocators").get<std::vector<std::string>>();
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.ell = j.value("ell", cfg.ell);
  cfg.greedy_mc_runs = j.value("greedy_mc_runs", cfg.greedy_mc_runs);
  if (j.contains("lambdas")) cfg.lambdas = j["lambdas"].get<std::vector<double>>();
  if (j.contains("kappas")) cfg.kappas = j["kappas"].get<std::vector<std::uint32_t>>();
  cfg.attention_path = j.value("attention", "");
  cfg.evaluation_runs = j.value("evaluation_runs", cfg.evaluation_runs);
  cfg.master_seed = j.value("seed", cfg.master_seed);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.workers = j.value("workers", cfg.workers);
  if (cfg.evaluation_runs < 1) throw std::invalid_argument("evaluation_runs must be >= 1");
  if (cfg.allocators.empty()) throw std::invalid_argument("no allocators listed");
  if (!cfg.graph_path.empty() && j.contains("generator"))
    throw std::invalid_argument("config gives both a graph path and a generator");
  return cfg;
}

std::vector<std::string> run_sweep(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  TopicGraph graph =
      !cfg.graph_path.empty()
          ? load_graph(cfg.graph_path)
          : (cfg.generator.model == "weighted-cascade"
                 ? gen_weighted_cascade(cfg.generator.nodes, cfg.generator.arcs,
                                        cfg.generator.topics, cfg.master_seed)
                 : gen_topical(cfg.generator.nodes, cfg.generator.arcs, cfg.generator.topics,
                               cfg.generator.mean, cfg.master_seed));
  std::vector<AdSpec> ads = load_campaign(cfg.campaign_path);

  std::vector<std::string> written;
  const std::string csv_path = (fs::path(cfg.output_dir) / "report.csv").string();
  const std::string summary_path = (fs::path(cfg.output_dir) / "summary.txt").string();
  std::ofstream csv(csv_path);
  std::ofstream summary(summary_path);
  if (!csv || !summary) throw std::runtime_error("cannot write into " + cfg.output_dir);
  csv << report_csv_header() << '\n';
  summary << "allocator kappa lambda total_regret distinct_targeted_nodes total_seeds\n";

  std::uint64_t cell_index = 0;
  for (const std::string& name : cfg.allocators) {
    for (std::uint32_t kappa : cfg.kappas) {
      for (double lambda : cfg.lambdas) {
        Instance instance =
            cfg.attention_path.empty()
                ? Instance(graph, ads, kappa, lambda)
                : Instance(graph, ads, load_attention(cfg.attention_path), lambda);
        const std::uint64_t cell_seed =
            Rng::keyed({cfg.master_seed, 0x6377u, cell_index}).next_u64();

        auto t0 = std::chrono::steady_clock::now();
        AllocatorResult result = run_allocator(name, instance, cfg, cell_seed);
        auto t1 = std::chrono::steady_clock::now();
        double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::vector<ReportRow> rows = evaluate(instance, result.allocation,
                                               cfg.evaluation_runs, cell_seed, cfg.workers);
        double total_regret = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          rows[i].allocator = name;
          rows[i].theta = result.theta[i];
          rows[i].wall_ms = wall_ms;
          total_regret += rows[i].budget_regret +
                          lambda * static_cast<double>(rows[i].seeds);
          csv << report_csv_row(rows[i]) << '\n';
        }

        std::ostringstream alloc_name;
        alloc_name << "alloc_" << name << "_k" << kappa << "_l" << lambda << ".txt";
        const std::string alloc_path = (fs::path(cfg.output_dir) / alloc_name.str()).string();
        save_allocation(result.allocation, alloc_path);
        written.push_back(alloc_path);

        summary << name << ' ' << kappa << ' ' << lambda << ' ' << total_regret << ' '
                << result.allocation.distinct_nodes() << ' '
                << result.allocation.total_seeds() << '\n';
        ++cell_index;
      }
    }
  }
  written.push_back(csv_path);
  written.push_back(summary_path);
  return written;
}

}  // namespace minreg
