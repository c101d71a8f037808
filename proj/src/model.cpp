#include "iqls/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace iqls {

namespace {

// Bounds beyond what an int64 grid could ever use are treated as infinite.
constexpr double kInfThreshold = 1e18;

Value lower_bound_from(double lb, const std::string& name) {
  if (std::isnan(lb)) throw ModelError("NaN lower bound on variable " + name);
  if (lb <= -kInfThreshold) return kMinusInf;
  if (lb >= kInfThreshold)
    throw ModelError("infinite lower bound above any upper bound on " + name);
  return static_cast<Value>(std::ceil(lb));
}

Value upper_bound_from(double ub, const std::string& name) {
  if (std::isnan(ub)) throw ModelError("NaN upper bound on variable " + name);
  if (ub >= kInfThreshold) return kPlusInf;
  if (ub <= -kInfThreshold)
    throw ModelError("infinite upper bound below any lower bound on " + name);
  return static_cast<Value>(std::floor(ub));
}

void check_coeff(double c, const std::string& where) {
  if (!std::isfinite(c)) throw ModelError("non-finite coefficient in " + where);
}

// Merges duplicate monomials, canonicalizes index order, drops zeros.
QuadExpr canonicalize(const QuadExpr& in, int n, bool negate,
                      const std::string& where) {
  QuadExpr out;
  out.constant = negate ? -in.constant : in.constant;
  check_coeff(in.constant, where);
  std::map<int, double> lin;
  for (const auto& [j, c] : in.linear) {
    if (j < 0 || j >= n)
      throw ModelError("variable index out of range in " + where);
    check_coeff(c, where);
    lin[j] += negate ? -c : c;
  }
  std::map<std::pair<int, int>, double> quad;
  for (const auto& t : in.quadratic) {
    if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n)
      throw ModelError("variable index out of range in " + where);
    check_coeff(t.coeff, where);
    quad[{std::min(t.i, t.j), std::max(t.i, t.j)}] += negate ? -t.coeff
                                                             : t.coeff;
  }
  for (const auto& [j, c] : lin)
    if (c != 0.0) out.linear.emplace(j, c);
  for (const auto& [ij, c] : quad)
    if (c != 0.0) out.quadratic.push_back({ij.first, ij.second, c});
  return out;
}

ExprTable build_table(const QuadExpr& e) {
  std::map<int, VarSlot> slots;
  auto slot_of = [&](int v) -> VarSlot& {
    auto [it, fresh] = slots.try_emplace(v);
    if (fresh) it->second.var = v;
    return it->second;
  };
  for (const auto& [j, c] : e.linear) slot_of(j).lin += c;
  for (const auto& t : e.quadratic) {
    if (t.i == t.j) {
      slot_of(t.i).quad += t.coeff;
    } else {
      slot_of(t.i).cross.push_back({t.j, t.coeff});
      slot_of(t.j).cross.push_back({t.i, t.coeff});
    }
  }
  ExprTable table;
  table.slots.reserve(slots.size());
  for (auto& [v, slot] : slots) table.slots.push_back(std::move(slot));
  return table;
}

// Expression value with every term involving `skip` removed.
double value_without(const QuadExpr& e, int skip, std::span<const Value> x) {
  double v = e.constant;
  for (const auto& [j, c] : e.linear)
    if (j != skip) v += c * static_cast<double>(x[j]);
  for (const auto& t : e.quadratic)
    if (t.i != skip && t.j != skip)
      v += t.coeff * static_cast<double>(x[t.i]) * static_cast<double>(x[t.j]);
  return v;
}

CoeffView view_from(const ExprTable& table, const QuadExpr& expr, int var,
                    std::span<const Value> alpha) {
  int s = table.find(var);
  if (s < 0) throw ModelError("variable does not occur in the expression");
  const VarSlot& slot = table.slots[s];
  CoeffView view;
  view.quad = slot.quad;
  view.lin = slot.lin_at(alpha);
  view.rest = value_without(expr, var, alpha);
  return view;
}

}  // namespace

Problem normalize(const RawProblem& raw) {
  Problem p;
  p.name = raw.name;
  p.maximize_original = raw.maximize;
  const int n = static_cast<int>(raw.variables.size());

  p.variables.reserve(n);
  for (int j = 0; j < n; ++j) {
    const RawVariable& rv = raw.variables[j];
    Variable v;
    v.index = j;
    v.name = rv.name.empty() ? "x" + std::to_string(j) : rv.name;
    v.lb = lower_bound_from(rv.lb, v.name);
    v.ub = upper_bound_from(rv.ub, v.name);
    if (v.lb_finite() && v.ub_finite() && v.lb > v.ub)
      throw ModelError("lower bound exceeds upper bound on variable " +
                       v.name);
    p.variables.push_back(std::move(v));
  }

  p.objective = canonicalize(raw.objective, n, raw.maximize, "objective");

  for (const RawConstraint& rc : raw.constraints) {
    bool negate = rc.sense == RawSense::GE;
    std::string where =
        "constraint " + (rc.name.empty()
                             ? "#" + std::to_string(p.constraints.size())
                             : rc.name);
    QuadExpr body = canonicalize(rc.body, n, negate, where);
    if (!std::isfinite(rc.rhs))
      throw ModelError("non-finite right-hand side in " + where);
    double rhs = (negate ? -rc.rhs : rc.rhs) - body.constant;
    body.constant = 0.0;
    Sense sense = rc.sense == RawSense::EQ ? Sense::EQ : Sense::LE;
    if (body.empty()) {
      bool ok = sense == Sense::LE ? 0.0 <= rhs + feas_eps(rhs)
                                   : std::abs(rhs) <= feas_eps(rhs);
      if (!ok)
        throw ModelError(where + " is constant and can never be satisfied");
      continue;  // trivially true row
    }
    Constraint c;
    c.index = static_cast<int>(p.constraints.size());
    c.name = rc.name.empty() ? "c" + std::to_string(c.index) : rc.name;
    c.body = std::move(body);
    c.sense = sense;
    c.rhs = rhs;
    p.constraints.push_back(std::move(c));
  }

  p.obj_table = build_table(p.objective);
  p.con_tables.reserve(p.constraints.size());
  for (const Constraint& c : p.constraints)
    p.con_tables.push_back(build_table(c.body));

  p.occurrence.assign(n, {});
  for (int i = 0; i < p.num_cons(); ++i) {
    const ExprTable& table = p.con_tables[i];
    for (int s = 0; s < static_cast<int>(table.slots.size()); ++s)
      p.occurrence[table.slots[s].var].push_back({i, s});
  }

  p.obj_slot.assign(n, -1);
  p.in_vf.assign(n, 0);
  p.is_free.assign(n, 0);
  for (int s = 0; s < static_cast<int>(p.obj_table.slots.size()); ++s) {
    int v = p.obj_table.slots[s].var;
    p.obj_slot[v] = s;
    p.in_vf[v] = 1;
    p.vf.push_back(v);
  }
  for (int v : p.vf) {
    if (p.occurrence[v].empty()) {
      p.is_free[v] = 1;
      p.free_vars.push_back(v);
    }
  }
  return p;
}

RawProblem to_raw(const Problem& p) {
  RawProblem raw;
  raw.name = p.name;
  raw.maximize = p.maximize_original;
  raw.variables.reserve(p.variables.size());
  for (const Variable& v : p.variables) {
    RawVariable rv;
    rv.name = v.name;
    rv.lb = v.lb_finite() ? static_cast<double>(v.lb)
                          : -std::numeric_limits<double>::infinity();
    rv.ub = v.ub_finite() ? static_cast<double>(v.ub)
                          : std::numeric_limits<double>::infinity();
    raw.variables.push_back(std::move(rv));
  }
  raw.objective = p.objective;
  if (p.maximize_original) {
    raw.objective.constant = -raw.objective.constant;
    for (auto& [j, c] : raw.objective.linear) c = -c;
    for (auto& t : raw.objective.quadratic) t.coeff = -t.coeff;
  }
  for (const Constraint& c : p.constraints) {
    RawConstraint rc;
    rc.name = c.name;
    rc.sense = c.sense == Sense::EQ ? RawSense::EQ : RawSense::LE;
    rc.rhs = c.rhs;
    rc.body = c.body;
    raw.constraints.push_back(std::move(rc));
  }
  return raw;
}

CoeffView coeff_view_constraint(const Problem& p, int con, int var,
                                std::span<const Value> alpha) {
  return view_from(p.con_tables[con], p.constraints[con].body, var, alpha);
}

CoeffView coeff_view_objective(const Problem& p, int var,
                               std::span<const Value> alpha) {
  return view_from(p.obj_table, p.objective, var, alpha);
}

bool structurally_equal(const Problem& a, const Problem& b) {
  if (a.name != b.name || a.maximize_original != b.maximize_original)
    return false;
  if (a.variables.size() != b.variables.size()) return false;
  for (std::size_t j = 0; j < a.variables.size(); ++j) {
    const Variable &va = a.variables[j], &vb = b.variables[j];
    if (va.name != vb.name || va.lb != vb.lb || va.ub != vb.ub) return false;
  }
  if (!(a.objective == b.objective)) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const Constraint &ca = a.constraints[i], &cb = b.constraints[i];
    if (ca.name != cb.name || ca.sense != cb.sense || ca.rhs != cb.rhs ||
        !(ca.body == cb.body))
      return false;
  }
  return a.vf == b.vf && a.free_vars == b.free_vars;
}

}  // namespace iqls
