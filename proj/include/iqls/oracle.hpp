#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iqls/model.hpp"

namespace iqls {

enum class OracleStatus { OPTIMAL, INFEASIBLE, TOO_LARGE };

struct OracleResult {
  OracleStatus status = OracleStatus::TOO_LARGE;
  double opt_obj = 0.0;  // original sense
  std::vector<Value> opt_assignment;
  std::uint64_t enumerated_count = 0;
};

inline constexpr std::uint64_t kOracleMaxPoints = 1'000'000;

// Exhaustive scan of the integer grid with direct, non-incremental
// evaluation. Ties on the optimum go to the lexicographically smallest
// assignment. Throws UnboundedDomain when any bound is infinite.
// The serial version is the reference; brute_force partitions the grid
// across OpenMP threads (threads = 0 picks the runtime default) and must
// return bit-identical results.
OracleResult brute_force_serial(const Problem& p,
                                std::uint64_t max_points = kOracleMaxPoints);
OracleResult brute_force(const Problem& p,
                         std::uint64_t max_points = kOracleMaxPoints,
                         int threads = 0);

enum class Category { QUBO, LCQP, QCLP, QCQP, LP };

const char* category_name(Category c);

// Where quadratic terms live: QUBO = unconstrained quadratic objective,
// LCQP = linear constraints / quadratic objective, QCLP = quadratic
// constraints / linear objective, QCQP = quadratic on both sides.
Category categorize(const Problem& p);

struct GenConfig {
  Category category = Category::QCQP;
  int n = 5;
  int m = 3;
  Value bound_width = 10;  // variable bounds [-w, w]; QUBO forces {0,1}
  int coeff_max = 5;       // coefficients uniform in [-c, c] minus zero
  double density = 0.4;    // fraction of variables touched per expression
  std::uint64_t seed = 1;
  double eq_prob = 0.25;   // probability a constraint is an equality
};

// Deterministic random instance, anchored so most instances are feasible:
// equality right-hand sides are taken from a hidden in-bounds point.
Problem gen_random(const GenConfig& cfg);

}  // namespace iqls
