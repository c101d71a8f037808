#pragma once

#include <array>
#include <optional>

#include "iqls/evaluator.hpp"

namespace iqls {

enum class DomainShape { LEFT_RAY, RIGHT_RAY, INTERVAL, TWO_RAYS, ALL, EMPTY };

// Solution set of one variable's slice of a satisfied inequality:
// LEFT_RAY (-inf, x1], RIGHT_RAY [x1, +inf), INTERVAL [x1, x2],
// TWO_RAYS (-inf, x1] U [x2, +inf).
struct FeasibleDomain {
  DomainShape shape = DomainShape::ALL;
  double x1 = 0.0;
  double x2 = 0.0;

  bool contains(double v) const;
  bool bounded_above() const {
    return shape == DomainShape::LEFT_RAY || shape == DomainShape::INTERVAL ||
           shape == DomainShape::EMPTY;
  }
  bool bounded_below() const {
    return shape == DomainShape::RIGHT_RAY || shape == DomainShape::INTERVAL ||
           shape == DomainShape::EMPTY;
  }
};

// Domain of {v : A v^2 + H v + I <= rhs}.
FeasibleDomain feasible_domain(double A, double H, double I, double rhs);

// Up to two candidate values, heap-free for the sampling loop.
struct SatMoves {
  std::array<Move, 2> m{};
  int n = 0;
};

// Values of x_j that make a violated constraint satisfied (threshold move).
SatMoves sat_moves(const SolverState& s, int con, int j);

// Objective-improving value of x_j inside the feasible domain of a
// satisfied inequality.
std::optional<Move> exp_move(const SolverState& s, int con, int j);

// Unit step on x_j plus a compensating integral root for xp that keeps a
// satisfied equality satisfied. `literal_both_theta` restricts the
// acceptance test to monomials containing both variables.
std::optional<Move> inc_move(const SolverState& s, int con, int j, int xp,
                             bool literal_both_theta = false);

// Closed-form objective step for a variable outside all constraints.
std::optional<Move> free_move(const SolverState& s, int j);

}  // namespace iqls
