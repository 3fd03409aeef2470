#include "minreg/evaluate.hpp"

#include <sstream>

namespace minreg {

std::vector<ReportRow> evaluate(const Instance& instance, const Allocation& alloc,
                                std::uint64_t runs, std::uint64_t seed, int workers) {
  std::vector<ReportRow> rows;
  for (int i = 0; i < instance.ad_count(); ++i) {
    std::uint64_t ad_seed = Rng::keyed({seed, 0x6576u, (std::uint64_t)i}).next_u64();
    SpreadEstimate spread = mc_spread(instance.view(i), instance_ctp(instance, i),
                                      alloc.seeds(i), runs, ad_seed, workers);
    ReportRow row;
    row.ad = i;
    row.effective_budget = instance.budget(i);
    row.revenue = revenue(spread, instance.cpe(i));
    row.stderr_ = instance.cpe(i) * spread.stderr_;
    row.budget_regret = std::abs(row.effective_budget - row.revenue);
    row.seeds = alloc.seeds(i).size();
    rows.push_back(row);
  }
  return rows;
}

std::string report_csv_header() {
  return "allocator,ad,budget,revenue,stderr,budget_regret,seeds,theta,wall_ms";
}

std::string report_csv_row(const ReportRow& row) {
  std::ostringstream out;
  out.precision(10);
  out << row.allocator << ',' << row.ad << ',' << row.effective_budget << ',' << row.revenue
      << ',' << row.stderr_ << ',' << row.budget_regret << ',' << row.seeds << ',' << row.theta
      << ',' << row.wall_ms;
  return out.str();
}

}  // namespace minreg
