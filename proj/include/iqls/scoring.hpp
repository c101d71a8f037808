#pragma once

#include <optional>
#include <vector>

#include "iqls/evaluator.hpp"

namespace iqls {

struct ScoredMove {
  Move move;
  double score = 0.0;
  bool decreasing = false;  // score > 0
};

// Penalty of one constraint at the probed body value. In the infeasible
// regime a violated constraint costs its full weight; in the feasible
// regime the weight scales the violation magnitude.
double penalty(const SolverState& s, int con, double act,
               bool infeasible_regime);

// Scores a move by delta probing (no state mutation): weighted penalty
// drop over touched constraints plus the objective term of the regime.
ScoredMove score_move(const SolverState& s, const Move& m);

// Bumps every violated constraint's weight; bumps the objective weight
// (capped at zeta) while the current point is worse than the best known.
void update_weights(SolverState& s);

// Best-from-multiple-selections: `draw` appends zero or more candidate
// moves per call; t draws with replacement, best score wins, first drawn
// wins ties. With require_decreasing only positive-score moves qualify.
template <typename DrawFn>
std::optional<ScoredMove> bms_select(SolverState& s, DrawFn&& draw, int t,
                                     bool require_decreasing) {
  std::optional<ScoredMove> best;
  std::vector<Move> scratch;
  scratch.reserve(4);
  for (int k = 0; k < t; ++k) {
    scratch.clear();
    draw(scratch);
    for (const Move& m : scratch) {
      ScoredMove sm = score_move(s, m);
      if (require_decreasing && !sm.decreasing) continue;
      if (!best || sm.score > best->score) best = sm;
    }
  }
  return best;
}

}  // namespace iqls
