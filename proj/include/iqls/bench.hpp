#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iqls/search.hpp"

namespace iqls {

// One solver run on one instance. ERROR rows (unreadable instances) carry
// the failure message and no run data.
struct BenchRecord {
  std::string instance;
  std::string category;
  std::uint64_t seed = 0;
  double time_limit = 0.0;
  std::string status;  // FEASIBLE | NA | ERROR
  double objective = 0.0;  // original sense; valid only when FEASIBLE
  bool maximize = false;   // original sense, so "best" aggregates correctly
  double time_to_best = 0.0;
  std::uint64_t iterations = 0;
  std::string error;
};

struct BenchConfig {
  std::vector<std::uint64_t> seeds = {1};
  std::vector<double> time_limits = {10.0};
  SolverConfig solver;  // seed and time_limit are overridden per run
  int jobs = 1;
};

// Runs every (instance, time limit, seed) combination. Instances are parsed
// once up front; a file that fails to parse contributes a single ERROR row
// and the sweep continues. With jobs > 1 the runs execute on that many
// OpenMP workers, each with its own solver state; records always come back
// ordered by (input position, time limit, seed).
std::vector<BenchRecord> run_bench(const std::vector<std::string>& paths,
                                   const BenchConfig& cfg);

// CSV rendering: one row per record in order, plus one SUMMARY row per
// (instance, time limit) group with the feasible-run count and the
// best/mean/stddev objective and its coefficient of variation.
std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace iqls
