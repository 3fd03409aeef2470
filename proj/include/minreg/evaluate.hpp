#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minreg/instance.hpp"
#include "minreg/regret.hpp"

namespace minreg {

struct ReportRow {
  std::string allocator;
  int ad = 0;
  double effective_budget = 0.0;
  double revenue = 0.0;       // cpe * MC spread mean
  double stderr_ = 0.0;       // cpe * MC spread stderr
  double budget_regret = 0.0;
  std::size_t seeds = 0;
  std::uint64_t theta = 0;    // TIRM sample count, 0 otherwise
  double wall_ms = 0.0;
};

/// Neutral MC evaluation of a final allocation: ads propagate independently;
/// competition exists only through attention bounds at allocation time.
/// Run seeds derive from (seed, ad), so rows are reproducible.
std::vector<ReportRow> evaluate(const Instance& instance, const Allocation& alloc,
                                std::uint64_t runs, std::uint64_t seed, int workers = 1);

std::string report_csv_header();
std::string report_csv_row(const ReportRow& row);

}  // namespace minreg
