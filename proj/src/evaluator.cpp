#include "iqls/evaluator.hpp"

#include <cmath>

namespace iqls {

double con_violation(const Constraint& c, double act) {
  double over = c.sense == Sense::LE ? act - c.rhs : std::abs(act - c.rhs);
  return over <= feas_eps(c.rhs) ? 0.0 : over;
}

SolverState init_state(const Problem& p, std::uint64_t seed) {
  SolverState s;
  s.problem = &p;
  s.alpha.resize(p.num_vars());
  for (int j = 0; j < p.num_vars(); ++j) s.alpha[j] = p.variables[j].clamp(0);
  s.activity.resize(p.num_cons());
  s.violated.reset(p.num_cons());
  s.weights.con.assign(p.num_cons(), 1);
  s.weights.obj = 1;
  s.rng.seed(seed);
  recompute_all(s);
  return s;
}

double violation(const SolverState& s, int con) {
  return con_violation(s.problem->constraints[con], s.activity[con]);
}

namespace {

void refresh_violated(SolverState& s, int con) {
  bool bad = violation(s, con) > 0.0;
  if (bad && !s.violated.contains(con)) s.violated.insert(con);
  if (!bad && s.violated.contains(con)) s.violated.erase(con);
}

// Shifts one variable, updating activities and objective from the
// pre-update assignment.
void apply_single(SolverState& s, int j, Value nv) {
  const Problem& p = *s.problem;
  Value old = s.alpha[j];
  double delta = static_cast<double>(nv) - static_cast<double>(old);
  double sq_delta = static_cast<double>(nv) * static_cast<double>(nv) -
                    static_cast<double>(old) * static_cast<double>(old);
  for (const OccRef& ref : p.occurrence[j]) {
    const VarSlot& slot = p.con_tables[ref.con].slots[ref.slot];
    s.activity[ref.con] += slot.lin_at(s.alpha) * delta + slot.quad * sq_delta;
    refresh_violated(s, ref.con);
  }
  if (p.obj_slot[j] >= 0) {
    const VarSlot& slot = p.obj_table.slots[p.obj_slot[j]];
    s.obj_value += slot.lin_at(s.alpha) * delta + slot.quad * sq_delta;
  }
  s.alpha[j] = nv;
}

}  // namespace

bool apply_move(SolverState& s, const Move& m) {
  const Problem& p = *s.problem;
  if (!p.variables[m.var].contains(m.value)) return false;
  bool changes = m.value != s.alpha[m.var];
  if (m.is_pair()) {
    if (!p.variables[m.var2].contains(m.value2)) return false;
    changes = changes || m.value2 != s.alpha[m.var2];
  }
  if (!changes) return false;

  apply_single(s, m.var, m.value);
  if (m.is_pair()) apply_single(s, m.var2, m.value2);

  if (++s.moves_applied % kRecomputeInterval == 0) recompute_all(s);

  if (s.violated.empty() && s.obj_value < s.best_obj) {
    s.best_obj = s.obj_value;
    s.best_alpha = s.alpha;
    s.iteration_of_best = s.iteration;
  }
  return true;
}

void recompute_all(SolverState& s) {
  const Problem& p = *s.problem;
  s.obj_value = p.objective.value_at(s.alpha);
  s.violated.reset(p.num_cons());
  for (int i = 0; i < p.num_cons(); ++i) {
    s.activity[i] = p.constraints[i].body.value_at(s.alpha);
    if (violation(s, i) > 0.0) s.violated.insert(i);
  }
}

}  // namespace iqls
