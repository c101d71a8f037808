#pragma once

#include <cstdint>
#include <vector>

#include "iqls/common.hpp"
#include "iqls/model.hpp"

namespace iqls {

enum class MoveKind { SAT, EXP, INC, FREE, WALK };

// A proposed modification of one variable (plus an optional second one for
// paired equality moves). Operators emit these; apply_move commits them.
struct Move {
  MoveKind kind = MoveKind::SAT;
  int var = -1;
  Value value = 0;
  int var2 = -1;  // second variable of a pair move, -1 when absent
  Value value2 = 0;
  int origin = -1;  // constraint the move was generated from, -1 for free moves

  bool is_pair() const { return var2 >= 0; }
};

struct Weights {
  std::vector<std::int64_t> con;  // per-constraint, starts at 1, only grows
  std::int64_t obj = 1;
  std::int64_t zeta = 100;  // cap for obj only
};

// Full recomputation interval: washes out float drift on long runs.
inline constexpr std::uint64_t kRecomputeInterval = 1'000'000;

struct SolverState {
  const Problem* problem = nullptr;
  std::vector<Value> alpha;
  std::vector<double> activity;  // per-constraint body value at alpha
  IndexSet violated;
  double obj_value = 0.0;
  double best_obj = kInfObj;  // internal (minimization) sense
  std::vector<Value> best_alpha;  // empty until a feasible point is seen
  Weights weights;
  std::uint64_t iteration = 0;
  std::uint64_t moves_applied = 0;
  std::uint64_t weight_updates = 0;
  std::uint64_t iteration_of_best = 0;
  double time_of_best = 0.0;
  Rng rng;

  bool feasible() const { return violated.empty(); }
};

// Violation magnitude of one constraint at the given body value:
// LE -> max(0, act - rhs), EQ -> |act - rhs|, zeroed below the tolerance.
double con_violation(const Constraint& c, double act);

SolverState init_state(const Problem& p, std::uint64_t seed);

double violation(const SolverState& s, int con);

// Commits a move: activities updated incrementally from the pre-update
// assignment, pair moves applied one variable at a time (var then var2),
// best solution captured on strict feasible improvement. Returns false and
// leaves the state untouched when the move is out of bounds or a no-op.
bool apply_move(SolverState& s, const Move& m);

// From-scratch recomputation of activities, objective and the violated set.
void recompute_all(SolverState& s);

}  // namespace iqls
