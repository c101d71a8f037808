#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iqls/common.hpp"

namespace iqls {

struct Variable {
  int index = 0;
  std::string name;
  Value lb = kMinusInf;
  Value ub = kPlusInf;

  bool lb_finite() const { return lb != kMinusInf; }
  bool ub_finite() const { return ub != kPlusInf; }
  bool contains(Value v) const {
    return (!lb_finite() || v >= lb) && (!ub_finite() || v <= ub);
  }
  Value clamp(Value v) const {
    if (lb_finite() && v < lb) return lb;
    if (ub_finite() && v > ub) return ub;
    return v;
  }
};

// Monomial coefficient of x_i * x_j; for i == j the coefficient of x_i^2.
struct QuadTerm {
  int i = 0;
  int j = 0;
  double coeff = 0.0;
};

inline bool operator==(const QuadTerm& a, const QuadTerm& b) {
  return a.i == b.i && a.j == b.j && a.coeff == b.coeff;
}

// Sparse quadratic expression: constant + sum lin_j x_j + sum c_ij x_i x_j.
// Normalized expressions keep quadratic sorted by (i, j) with i <= j, no
// duplicates and no zero coefficients; raw (pre-normalize) expressions may
// break those rules.
struct QuadExpr {
  double constant = 0.0;
  std::map<int, double> linear;
  std::vector<QuadTerm> quadratic;

  double value_at(std::span<const Value> x) const {
    double v = constant;
    for (const auto& [j, c] : linear) v += c * static_cast<double>(x[j]);
    for (const auto& t : quadratic)
      v += t.coeff * static_cast<double>(x[t.i]) * static_cast<double>(x[t.j]);
    return v;
  }
  bool empty() const { return linear.empty() && quadratic.empty(); }
  bool has_quadratic() const { return !quadratic.empty(); }
};

inline bool operator==(const QuadExpr& a, const QuadExpr& b) {
  return a.constant == b.constant && a.linear == b.linear &&
         a.quadratic == b.quadratic;
}

enum class Sense { LE, EQ };
enum class RawSense { LE, GE, EQ };

struct Constraint {
  int index = 0;
  std::string name;
  QuadExpr body;  // constant always 0 after normalize (folded into rhs)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

// Per-variable slice of one expression: the coefficient of x_j^2, the
// x_j-linear part split into a constant and cross terms, so that under an
// assignment the expression equals quad * x_j^2 + lin(alpha) * x_j + rest.
struct CrossTerm {
  int var = 0;
  double coeff = 0.0;
};

struct VarSlot {
  int var = 0;
  double quad = 0.0;
  double lin = 0.0;  // constant part of the x_j coefficient polynomial
  std::vector<CrossTerm> cross;

  double lin_at(std::span<const Value> x) const {
    double h = lin;
    for (const auto& t : cross) h += t.coeff * static_cast<double>(x[t.var]);
    return h;
  }

  // Same, with one variable's value overridden (x stays untouched).
  double lin_at_override(std::span<const Value> x, int ov, double ov_val)
      const {
    double h = lin;
    for (const auto& t : cross)
      h += t.coeff * (t.var == ov ? ov_val : static_cast<double>(x[t.var]));
    return h;
  }
};

// Compiled lookup of an expression by occurring variable.
struct ExprTable {
  std::vector<VarSlot> slots;  // sorted by var id

  int find(int var) const {
    std::size_t lo = 0, hi = slots.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (slots[mid].var < var)
        lo = mid + 1;
      else
        hi = mid;
    }
    return (lo < slots.size() && slots[lo].var == var) ? static_cast<int>(lo)
                                                       : -1;
  }
};

struct OccRef {
  int con = 0;   // constraint id
  int slot = 0;  // index into that constraint's ExprTable
};

struct Problem {
  std::string name;
  bool maximize_original = false;  // recorded only; internally minimization
  std::vector<Variable> variables;
  QuadExpr objective;
  std::vector<Constraint> constraints;

  // Derived structure (filled by normalize).
  ExprTable obj_table;
  std::vector<ExprTable> con_tables;
  std::vector<std::vector<OccRef>> occurrence;  // per var, sorted by con id
  std::vector<int> obj_slot;                    // per var; -1 if absent
  std::vector<int> vf;                          // objective variables, sorted
  std::vector<int> free_vars;  // objective variables in no constraint
  std::vector<char> in_vf;
  std::vector<char> is_free;

  int num_vars() const { return static_cast<int>(variables.size()); }
  int num_cons() const { return static_cast<int>(constraints.size()); }
  const std::vector<VarSlot>& con_vars(int con) const {
    return con_tables[con].slots;
  }
};

// Expression slice for one variable under one assignment. For a constraint
// body: quad*x^2 + lin*x + rest equals the body value. For the objective the
// same identity holds against the full objective; slice_value gives just the
// terms involving the variable.
struct CoeffView {
  double quad = 0.0;
  double lin = 0.0;
  double rest = 0.0;

  double slice_value(double v) const { return (quad * v + lin) * v; }
  double value_at(double v) const { return slice_value(v) + rest; }
};

struct RawVariable {
  std::string name;
  double lb = -std::numeric_limits<double>::infinity();
  double ub = std::numeric_limits<double>::infinity();
};

struct RawConstraint {
  std::string name;
  RawSense sense = RawSense::LE;
  double rhs = 0.0;
  QuadExpr body;
};

// Pre-normalization problem as read from any front end. May carry a max
// sense, GE rows, duplicate monomials, i > j entries and body constants.
struct RawProblem {
  std::string name;
  bool maximize = false;
  std::vector<RawVariable> variables;
  QuadExpr objective;
  std::vector<RawConstraint> constraints;
};

// Canonicalizes a raw problem: minimization sense, LE/EQ senses only, merged
// monomials, constants folded into rhs, occurrence/vf/free_vars computed.
// Throws ModelError on out-of-range indices, crossed bounds or non-finite
// coefficients.
Problem normalize(const RawProblem& raw);

// Original-sense view of a normalized problem; normalize(to_raw(p)) == p.
RawProblem to_raw(const Problem& p);

CoeffView coeff_view_constraint(const Problem& p, int con, int var,
                                std::span<const Value> alpha);
CoeffView coeff_view_objective(const Problem& p, int var,
                               std::span<const Value> alpha);

// ctx < 0 selects the objective, otherwise the constraint with that id.
inline CoeffView coeff_view(const Problem& p, int ctx, int var,
                            std::span<const Value> alpha) {
  return ctx < 0 ? coeff_view_objective(p, var, alpha)
                 : coeff_view_constraint(p, ctx, var, alpha);
}

bool structurally_equal(const Problem& a, const Problem& b);

}  // namespace iqls
