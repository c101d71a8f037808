#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "iqls/scoring.hpp"

namespace iqls {

struct SolverConfig {
  double time_limit = 10.0;  // seconds of search, parse time excluded
  std::uint64_t seed = 1;
  int t = 100;              // BMS sample count
  std::int64_t zeta = 100;  // objective weight cap
  bool disable_exp = false;
  bool disable_inc = false;
  bool disable_free = false;
  bool literal_both_theta = false;
  std::uint64_t step_limit = 0;  // stop after N iterations; 0 = time only
  // Stop early once the best objective (original sense) reaches this value.
  double target_obj = std::numeric_limits<double>::quiet_NaN();
};

enum class SolveStatus { FEASIBLE, NA };

struct SolveStats {
  std::uint64_t iterations = 0;
  std::uint64_t mode_switches = 0;
  std::uint64_t weight_updates = 0;
  std::uint64_t iterations_to_best = 0;
  double time_to_best = 0.0;
  double time_total = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NA;
  double best_obj = 0.0;  // original sense; meaningless when NA
  std::vector<Value> best_assignment;  // empty when NA
  SolveStats stats;
};

// Two-mode local search: satisfy violated constraints first, then chase the
// objective through feasibility-preserving moves, with weighting to escape
// local minima. Exposes the per-mode steps for white-box tests.
class Searcher {
 public:
  Searcher(const Problem& p, const SolverConfig& cfg);

  SolveResult run();

  void satisfying_step();
  void optimization_step();
  SolverState& state() { return s_; }

 private:
  struct ComboCount {
    std::int64_t exp = 0;   // one per inequality containing the variable
    std::int64_t inc = 0;   // one per (equality, partner) pair
    std::int64_t free = 0;  // 1 when the variable is constraint-free
    std::int64_t total() const { return exp + inc + free; }
  };

  void draw_sat(std::vector<Move>& out);
  void draw_sat_in(int con, std::vector<Move>& out);
  void draw_opt(std::vector<Move>& out);
  void draw_opt_for(int j, std::vector<Move>& out);
  void emit_combo(int j, std::int64_t u, std::vector<Move>& out);
  void commit(const ScoredMove& sm);
  bool random_walk(int j);

  const Problem& p_;
  SolverConfig cfg_;
  SolverState s_;
  std::vector<ComboCount> counts_;  // indexed by variable id, V(f) members
};

SolveResult solve(const Problem& p, const SolverConfig& cfg);

}  // namespace iqls
