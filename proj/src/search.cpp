#include "iqls/search.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "iqls/operators.hpp"

namespace iqls {

Searcher::Searcher(const Problem& p, const SolverConfig& cfg)
    : p_(p), cfg_(cfg), s_(init_state(p, cfg.seed)) {
  check(cfg.t >= 1, "sample count must be positive");
  check(cfg.zeta >= 1, "objective weight cap must be positive");
  s_.weights.zeta = cfg.zeta;

  counts_.resize(p.num_vars());
  for (int j : p.vf) {
    ComboCount& cc = counts_[j];
    for (const OccRef& ref : p.occurrence[j]) {
      const Constraint& c = p.constraints[ref.con];
      if (c.sense == Sense::LE) {
        if (!cfg_.disable_exp) ++cc.exp;
      } else if (!cfg_.disable_inc) {
        cc.inc += static_cast<std::int64_t>(p.con_vars(ref.con).size()) - 1;
      }
    }
    if (p.is_free[j] && !cfg_.disable_free) cc.free = 1;
  }
}

void Searcher::draw_sat(std::vector<Move>& out) {
  draw_sat_in(s_.violated.pick(s_.rng), out);
}

void Searcher::draw_sat_in(int con, std::vector<Move>& out) {
  const auto& slots = p_.con_tables[con].slots;
  int j = slots[rand_index(s_.rng, slots.size())].var;
  SatMoves mv = sat_moves(s_, con, j);
  for (int k = 0; k < mv.n; ++k) out.push_back(mv.m[k]);
}

void Searcher::draw_opt(std::vector<Move>& out) {
  if (p_.vf.empty()) return;
  draw_opt_for(p_.vf[rand_index(s_.rng, p_.vf.size())], out);
}

void Searcher::draw_opt_for(int j, std::vector<Move>& out) {
  std::int64_t total = counts_[j].total();
  if (total == 0) return;
  emit_combo(j, static_cast<std::int64_t>(rand_index(
                    s_.rng, static_cast<std::size_t>(total))),
             out);
}

void Searcher::emit_combo(int j, std::int64_t u, std::vector<Move>& out) {
  for (const OccRef& ref : p_.occurrence[j]) {
    const Constraint& c = p_.constraints[ref.con];
    if (c.sense == Sense::LE) {
      if (cfg_.disable_exp) continue;
      if (u == 0) {
        if (auto mv = exp_move(s_, ref.con, j)) out.push_back(*mv);
        return;
      }
      --u;
    } else {
      if (cfg_.disable_inc) continue;
      const auto& slots = p_.con_tables[ref.con].slots;
      std::int64_t pairs = static_cast<std::int64_t>(slots.size()) - 1;
      if (u < pairs) {
        for (const VarSlot& slot : slots) {
          if (slot.var == j) continue;
          if (u == 0) {
            if (auto mv = inc_move(s_, ref.con, j, slot.var,
                                   cfg_.literal_both_theta))
              out.push_back(*mv);
            return;
          }
          --u;
        }
      }
      u -= pairs;
    }
  }
  check(counts_[j].free == 1 && u == 0, "combo index out of range");
  if (auto mv = free_move(s_, j)) out.push_back(*mv);
}

void Searcher::commit(const ScoredMove& sm) {
  check(apply_move(s_, sm.move), "scored move must be applicable");
}

// Walk range for variables without a finite bound on one side.
constexpr Value kWalkSpan = 10;

// Chance that a weighted fallback hops a variable at random instead of
// forcing the best-scored candidate. Weighting alone cannot break cycles
// where the candidate values never change; the occasional hop can.
constexpr double kWalkProb = 0.2;

// Reassigns x_j to a uniform random in-bounds value different from the
// current one. False when the domain is a single point.
bool Searcher::random_walk(int j) {
  const Variable& var = p_.variables[j];
  Value cur = s_.alpha[j];
  Value lo = var.lb_finite() ? var.lb : cur - kWalkSpan;
  Value hi = var.ub_finite() ? var.ub : cur + kWalkSpan;
  if (hi <= lo) return false;
  Value nv = rand_value(s_.rng, lo, hi - 1);
  if (nv >= cur) ++nv;
  return apply_move(s_, Move{MoveKind::WALK, j, nv, -1, 0, -1});
}

void Searcher::satisfying_step() {
  check(!s_.violated.empty(), "satisfying step needs a violated constraint");
  auto draw = [this](std::vector<Move>& out) { draw_sat(out); };
  if (auto best = bms_select(s_, draw, cfg_.t, true)) {
    commit(*best);
    return;
  }
  update_weights(s_);
  int tries = p_.num_cons();
  if (!std::bernoulli_distribution(kWalkProb)(s_.rng)) {
    for (int a = 0; a < tries; ++a) {
      int con = s_.violated.pick(s_.rng);
      auto scoped = [this, con](std::vector<Move>& out) {
        draw_sat_in(con, out);
      };
      if (auto best = bms_select(s_, scoped, cfg_.t, false)) {
        commit(*best);
        return;
      }
    }
  }
  // Either the walk coin came up, or no threshold move exists anywhere
  // (e.g. a violated equality with no integral single-variable fix). Hop
  // one variable of a violated constraint so the search cannot freeze.
  for (int a = 0; a < tries; ++a) {
    const auto& slots = p_.con_tables[s_.violated.pick(s_.rng)].slots;
    if (random_walk(slots[rand_index(s_.rng, slots.size())].var)) return;
  }
}

void Searcher::optimization_step() {
  check(s_.violated.empty(), "optimization step needs feasibility");
  auto draw = [this](std::vector<Move>& out) { draw_opt(out); };
  if (auto best = bms_select(s_, draw, cfg_.t, true)) {
    commit(*best);
    return;
  }
  update_weights(s_);
  // With every operator ablated away there is nothing to escape from;
  // leave the loop as a pure weight updater.
  if (cfg_.disable_exp && cfg_.disable_inc && cfg_.disable_free) return;
  std::size_t tries = p_.vf.size();
  if (!std::bernoulli_distribution(kWalkProb)(s_.rng)) {
    for (std::size_t a = 0; a < tries; ++a) {
      int j = p_.vf[rand_index(s_.rng, p_.vf.size())];
      auto scoped = [this, j](std::vector<Move>& out) {
        draw_opt_for(j, out);
      };
      if (auto best = bms_select(s_, scoped, cfg_.t, false)) {
        commit(*best);
        return;
      }
    }
  }
  // Either the walk coin came up, or every objective variable sits at its
  // operators' fixed point (a local optimum none of them can leave). Hop
  // one at random; the best found assignment is already saved, so this
  // only ever explores.
  for (std::size_t a = 0; a < tries; ++a) {
    if (random_walk(p_.vf[rand_index(s_.rng, p_.vf.size())])) return;
  }
}

SolveResult Searcher::run() {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  double target = std::numeric_limits<double>::quiet_NaN();
  if (!std::isnan(cfg_.target_obj))
    target = p_.maximize_original ? -cfg_.target_obj : cfg_.target_obj;

  // The start point may already be feasible; Algorithm-style best tracking
  // must see it before the first move.
  if (s_.violated.empty() && s_.obj_value < s_.best_obj) {
    s_.best_obj = s_.obj_value;
    s_.best_alpha = s_.alpha;
    s_.iteration_of_best = 0;
  }
  double last_best = s_.best_obj;
  double time_to_best = 0.0;

  int prev_mode = -1;
  std::uint64_t switches = 0;
  while (elapsed() < cfg_.time_limit) {
    if (cfg_.step_limit && s_.iteration >= cfg_.step_limit) break;
    if (!std::isnan(target) &&
        s_.best_obj <= target + 1e-9 * (1.0 + std::abs(target)))
      break;
    ++s_.iteration;
    int mode = s_.violated.empty() ? 1 : 0;
    if (prev_mode >= 0 && mode != prev_mode) ++switches;
    prev_mode = mode;
    if (mode == 0)
      satisfying_step();
    else
      optimization_step();
    if (s_.best_obj < last_best) {
      last_best = s_.best_obj;
      time_to_best = elapsed();
    }
  }

  SolveResult res;
  res.stats.iterations = s_.iteration;
  res.stats.mode_switches = switches;
  res.stats.weight_updates = s_.weight_updates;
  res.stats.time_total = elapsed();
  if (!s_.best_alpha.empty()) {
    // From-scratch audit of the recorded best: exact objective, and every
    // constraint must hold without the incremental machinery.
    for (const Constraint& c : p_.constraints)
      check(con_violation(c, c.body.value_at(s_.best_alpha)) == 0.0,
            "recorded best fails a from-scratch feasibility check");
    double exact = p_.objective.value_at(s_.best_alpha);
    res.status = SolveStatus::FEASIBLE;
    res.best_obj = p_.maximize_original ? -exact : exact;
    res.best_assignment = s_.best_alpha;
    res.stats.iterations_to_best = s_.iteration_of_best;
    res.stats.time_to_best = time_to_best;
  }
  return res;
}

SolveResult solve(const Problem& p, const SolverConfig& cfg) {
  return Searcher(p, cfg).run();
}

}  // namespace iqls
