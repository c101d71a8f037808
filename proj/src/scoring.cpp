#include "iqls/scoring.hpp"

#include <cmath>
#include <limits>

namespace iqls {

double penalty(const SolverState& s, int con, double act,
               bool infeasible_regime) {
  double viol = con_violation(s.problem->constraints[con], act);
  double w = static_cast<double>(s.weights.con[con]);
  if (infeasible_regime) return viol > 0.0 ? w : 0.0;
  return w * viol;
}

ScoredMove score_move(const SolverState& s, const Move& m) {
  const Problem& p = *s.problem;
  bool infeasible = !s.violated.empty();

  double ov1 = static_cast<double>(s.alpha[m.var]);
  double nv1 = static_cast<double>(m.value);
  double ov2 = 0.0, nv2 = 0.0;
  if (m.is_pair()) {
    ov2 = static_cast<double>(s.alpha[m.var2]);
    nv2 = static_cast<double>(m.value2);
  }

  double score = 0.0;

  // Merge-walk both occurrence lists (sorted by constraint id) so shared
  // constraints are probed once with both deltas applied.
  static const std::vector<OccRef> kNone;
  const std::vector<OccRef>& occ1 = p.occurrence[m.var];
  const std::vector<OccRef>& occ2 =
      m.is_pair() ? p.occurrence[m.var2] : kNone;
  std::size_t i1 = 0, i2 = 0;
  constexpr int kDone = std::numeric_limits<int>::max();
  while (i1 < occ1.size() || i2 < occ2.size()) {
    int c1 = i1 < occ1.size() ? occ1[i1].con : kDone;
    int c2 = i2 < occ2.size() ? occ2[i2].con : kDone;
    int con = std::min(c1, c2);
    double act = s.activity[con];
    double na = act;
    if (c1 == con) {
      const VarSlot& slot = p.con_tables[con].slots[occ1[i1].slot];
      na += slot.lin_at(s.alpha) * (nv1 - ov1) +
            slot.quad * (nv1 * nv1 - ov1 * ov1);
      ++i1;
    }
    if (c2 == con) {
      const VarSlot& slot = p.con_tables[con].slots[occ2[i2].slot];
      // var already sits at its new value when var2 moves
      na += slot.lin_at_override(s.alpha, m.var, nv1) * (nv2 - ov2) +
            slot.quad * (nv2 * nv2 - ov2 * ov2);
      ++i2;
    }
    score += penalty(s, con, act, infeasible) - penalty(s, con, na, infeasible);
  }

  double dobj = 0.0;  // obj(alpha') - obj(alpha)
  if (p.obj_slot[m.var] >= 0) {
    const VarSlot& slot = p.obj_table.slots[p.obj_slot[m.var]];
    dobj += slot.lin_at(s.alpha) * (nv1 - ov1) +
            slot.quad * (nv1 * nv1 - ov1 * ov1);
  }
  if (m.is_pair() && p.obj_slot[m.var2] >= 0) {
    const VarSlot& slot = p.obj_table.slots[p.obj_slot[m.var2]];
    dobj += slot.lin_at_override(s.alpha, m.var, nv1) * (nv2 - ov2) +
            slot.quad * (nv2 * nv2 - ov2 * ov2);
  }
  double delta_obj = -dobj;
  double w_obj = static_cast<double>(s.weights.obj);
  if (infeasible) {
    if (std::abs(delta_obj) >= kObjZeroTol)
      score += delta_obj > 0.0 ? w_obj : -w_obj;
  } else {
    score += w_obj * delta_obj;
  }

  return {m, score, score > 0.0};
}

void update_weights(SolverState& s) {
  for (int con : s.violated.items()) ++s.weights.con[con];
  if (s.obj_value > s.best_obj && s.weights.obj < s.weights.zeta)
    ++s.weights.obj;
  ++s.weight_updates;
}

}  // namespace iqls
