#include "doctest.h"
#include "iqls/evaluator.hpp"

#include <cmath>
#include <random>

using namespace iqls;

namespace {

RawVariable var(const std::string& name, double lb, double ub) {
  RawVariable v;
  v.name = name;
  v.lb = lb;
  v.ub = ub;
  return v;
}

// obj x^2 + y^2, con0: x^2 <= 9, con1: x + y = 4
Problem small_problem() {
  RawProblem raw;
  raw.variables.push_back(var("x", -5, 5));
  raw.variables.push_back(var("y", -5, 5));
  raw.objective.quadratic.push_back({0, 0, 1.0});
  raw.objective.quadratic.push_back({1, 1, 1.0});
  RawConstraint c0;
  c0.sense = RawSense::LE;
  c0.rhs = 9.0;
  c0.body.quadratic.push_back({0, 0, 1.0});
  RawConstraint c1;
  c1.sense = RawSense::EQ;
  c1.rhs = 4.0;
  c1.body.linear[0] = 1.0;
  c1.body.linear[1] = 1.0;
  raw.constraints = {c0, c1};
  return normalize(raw);
}

}  // namespace

TEST_CASE("init_state clamps the zero start into the variable box") {
  RawProblem raw;
  raw.variables.push_back(var("a", -5, 5));
  raw.variables.push_back(var("b", 2, 9));
  raw.variables.push_back(var("c", -9, -3));
  raw.objective.linear[0] = 1.0;
  raw.objective.linear[1] = 1.0;
  raw.objective.linear[2] = 1.0;
  Problem p = normalize(raw);
  SolverState s = init_state(p, 1);
  CHECK(s.alpha[0] == 0);
  CHECK(s.alpha[1] == 2);
  CHECK(s.alpha[2] == -3);
  CHECK(s.best_alpha.empty());
  CHECK(s.best_obj == kInfObj);
}

TEST_CASE("violation magnitudes follow the sense rules") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);

  s.activity[0] = 8.0;  // pretend body value
  Constraint le = p.constraints[0];
  CHECK(con_violation(le, 8.0 + le.rhs - 5.0) ==
        doctest::Approx(3.0));  // activity 8 vs rhs 5 shape
  Constraint eq = p.constraints[1];
  CHECK(con_violation(eq, 4.0) == 0.0);
  CHECK(con_violation(eq, 6.5) == doctest::Approx(2.5));
  CHECK(con_violation(le, le.rhs + 1e-9) == 0.0);  // within tolerance
}

TEST_CASE("apply_move updates activity and violation incrementally") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);
  // start (0,0): con0 activity 0 ok; con1 activity 0 != 4 violated
  CHECK(s.activity[0] == 0.0);
  CHECK(s.violated.contains(1));
  CHECK_FALSE(s.violated.contains(0));

  Move up{MoveKind::SAT, 0, 5, -1, 0, 0};
  REQUIRE(apply_move(s, up));
  CHECK(s.activity[0] == doctest::Approx(25.0));
  CHECK(violation(s, 0) == doctest::Approx(16.0));
  CHECK(s.violated.contains(0));

  Move down{MoveKind::SAT, 0, 3, -1, 0, 0};
  REQUIRE(apply_move(s, down));
  CHECK(s.activity[0] == doctest::Approx(9.0));
  CHECK(violation(s, 0) == 0.0);
  CHECK_FALSE(s.violated.contains(0));
}

TEST_CASE("pair moves update the objective sequentially") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);
  REQUIRE(apply_move(s, Move{MoveKind::SAT, 0, 3, -1, 0, 1}));
  REQUIRE(apply_move(s, Move{MoveKind::SAT, 1, 1, -1, 0, 1}));
  CHECK(s.obj_value == doctest::Approx(10.0));
  CHECK(s.feasible());
  double best_before = s.best_obj;
  CHECK(best_before == doctest::Approx(10.0));

  Move pair{MoveKind::INC, 0, 2, 1, 2, 1};
  REQUIRE(apply_move(s, pair));
  CHECK(s.obj_value == doctest::Approx(8.0));
  CHECK(s.feasible());
  CHECK(s.best_obj == doctest::Approx(8.0));  // strict improvement captured
  REQUIRE(s.best_alpha.size() == 2);
  CHECK(s.best_alpha[0] == 2);
  CHECK(s.best_alpha[1] == 2);
}

TEST_CASE("apply_move rejects out-of-bounds and no-op moves") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);
  std::vector<Value> before = s.alpha;
  CHECK_FALSE(apply_move(s, Move{MoveKind::SAT, 0, 6, -1, 0, 0}));
  CHECK_FALSE(apply_move(s, Move{MoveKind::SAT, 0, 0, -1, 0, 0}));  // no-op
  CHECK_FALSE(apply_move(s, Move{MoveKind::INC, 0, 0, 1, 0, 1}));   // pair no-op
  CHECK_FALSE(apply_move(s, Move{MoveKind::INC, 0, 1, 1, -9, 1}));  // aux oob
  CHECK(s.alpha == before);
  CHECK(s.moves_applied == 0);
}

TEST_CASE("best objective only moves down and requires feasibility") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);
  CHECK(s.best_obj == kInfObj);
  REQUIRE(apply_move(s, Move{MoveKind::SAT, 0, 1, -1, 0, 1}));
  CHECK(s.best_obj == kInfObj);  // still infeasible (1 + 0 != 4)
  REQUIRE(apply_move(s, Move{MoveKind::SAT, 1, 3, -1, 0, 1}));
  CHECK(s.best_obj == doctest::Approx(10.0));
  // Worse feasible point: best must not move.
  REQUIRE(apply_move(s, Move{MoveKind::INC, 0, 0, 1, 4, 1}));
  CHECK(s.obj_value == doctest::Approx(16.0));
  CHECK(s.best_obj == doctest::Approx(10.0));
}

TEST_CASE("incremental state matches recomputation over random move storms") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> cdist(-5.0, 5.0);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    RawProblem raw;
    for (int j = 0; j < n; ++j)
      raw.variables.push_back(var("x" + std::to_string(j), -10, 10));
    for (int t = 0; t < n; ++t) {
      raw.objective.quadratic.push_back(
          {static_cast<int>(rng() % n), static_cast<int>(rng() % n),
           cdist(rng)});
      raw.objective.linear[t % n] += cdist(rng);
    }
    int m = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < m; ++c) {
      RawConstraint rc;
      rc.sense = (rng() % 2) ? RawSense::LE : RawSense::EQ;
      rc.rhs = cdist(rng) * 10;
      rc.body.linear[static_cast<int>(rng() % n)] += cdist(rng);
      rc.body.quadratic.push_back(
          {static_cast<int>(rng() % n), static_cast<int>(rng() % n),
           cdist(rng)});
      raw.constraints.push_back(rc);
    }
    Problem p = normalize(raw);
    SolverState s = init_state(p, 5);
    double last_best = s.best_obj;

    const int kMoves = 100000;
    for (int k = 0; k < kMoves; ++k) {
      Move mv;
      mv.var = static_cast<int>(rng() % n);
      mv.value = rand_value(s.rng, -10, 10);
      if (rng() % 4 == 0) {
        mv.var2 = static_cast<int>(rng() % n);
        if (mv.var2 == mv.var) mv.var2 = -1;
        mv.value2 = rand_value(s.rng, -10, 10);
      }
      apply_move(s, mv);
      CHECK(s.best_obj <= last_best);
      last_best = s.best_obj;

      if (k % 10000 == 9999 || k + 1 == kMoves) {
        for (int i = 0; i < p.num_cons(); ++i) {
          double exact = p.constraints[i].body.value_at(s.alpha);
          REQUIRE(std::abs(s.activity[i] - exact) <=
                  1e-6 * (1.0 + std::abs(exact)));
          REQUIRE(s.violated.contains(i) ==
                  (con_violation(p.constraints[i], exact) > 0.0));
        }
        double exact_obj = p.objective.value_at(s.alpha);
        REQUIRE(std::abs(s.obj_value - exact_obj) <=
                1e-6 * (1.0 + std::abs(exact_obj)));
      }
    }
  }
}

TEST_CASE("periodic full recomputation triggers on the move counter") {
  Problem p = small_problem();
  SolverState s = init_state(p, 1);
  s.moves_applied = kRecomputeInterval - 1;
  s.activity[0] = 12345.0;  // inject drift; the crossing must wash it out
  REQUIRE(apply_move(s, Move{MoveKind::SAT, 1, 2, -1, 0, 1}));
  CHECK(s.moves_applied == kRecomputeInterval);
  CHECK(s.activity[0] == doctest::Approx(0.0));
  CHECK(s.activity[1] == doctest::Approx(2.0));
}
