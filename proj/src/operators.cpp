#include "iqls/operators.hpp"

#include <algorithm>
#include <cmath>

namespace iqls {

namespace {

// Doubles beyond this cannot be trusted to round-trip through Value.
constexpr double kValueGuard = 9.0e18;

// Closed comparisons with a hair of slack so exact roots stay members.
bool leq(double a, double b) { return a <= b + 1e-9 * (1.0 + std::abs(b)); }

bool to_value(double d, Value& out) {
  if (!(std::abs(d) <= kValueGuard)) return false;
  out = static_cast<Value>(std::llround(d));
  return true;
}

bool near_integer(double r, Value& out) {
  double rr = std::round(r);
  if (std::abs(r - rr) > kRootIntTol) return false;
  return to_value(rr, out);
}

// Numerically stable roots of a x^2 + b x + c for disc = b^2 - 4ac > 0.
std::pair<double, double> quad_roots(double a, double b, double c,
                                     double disc) {
  double sq = std::sqrt(disc);
  double q = -0.5 * (b + std::copysign(sq, b));
  double r1 = q != 0.0 ? q / a : 0.0;
  double r2 = q != 0.0 ? c / q : -b / a;
  return {std::min(r1, r2), std::max(r1, r2)};
}

// Slice (A, H, I) of one constraint for x_j, anchored on the maintained
// activity so the cost is O(deg j), not O(|body|).
struct Slice {
  double A, H, I;
  double at(double v) const { return (A * v + H) * v + I; }
};

Slice con_slice(const SolverState& s, int con, int j) {
  const Problem& p = *s.problem;
  int si = p.con_tables[con].find(j);
  check(si >= 0, "operator target variable not in constraint");
  const VarSlot& slot = p.con_tables[con].slots[si];
  double A = slot.quad;
  double H = slot.lin_at(s.alpha);
  double aj = static_cast<double>(s.alpha[j]);
  return {A, H, s.activity[con] - (A * aj + H) * aj};
}

}  // namespace

bool FeasibleDomain::contains(double v) const {
  switch (shape) {
    case DomainShape::ALL:
      return true;
    case DomainShape::EMPTY:
      return false;
    case DomainShape::LEFT_RAY:
      return leq(v, x1);
    case DomainShape::RIGHT_RAY:
      return leq(x1, v);
    case DomainShape::INTERVAL:
      return leq(x1, v) && leq(v, x2);
    case DomainShape::TWO_RAYS:
      return leq(v, x1) || leq(x2, v);
  }
  return false;
}

FeasibleDomain feasible_domain(double A, double H, double I, double rhs) {
  double C = I - rhs;
  if (A == 0.0) {
    if (H == 0.0) return {DomainShape::ALL};
    double x0 = -C / H;
    return H > 0.0 ? FeasibleDomain{DomainShape::LEFT_RAY, x0, x0}
                   : FeasibleDomain{DomainShape::RIGHT_RAY, x0, x0};
  }
  double disc = H * H - 4.0 * A * C;
  if (A > 0.0) {
    if (disc < 0.0) return {DomainShape::EMPTY};
    if (disc == 0.0) {
      double x0 = -H / (2.0 * A);
      return {DomainShape::INTERVAL, x0, x0};
    }
    auto [x1, x2] = quad_roots(A, H, C, disc);
    return {DomainShape::INTERVAL, x1, x2};
  }
  if (disc <= 0.0) return {DomainShape::ALL};
  auto [x1, x2] = quad_roots(A, H, C, disc);
  return {DomainShape::TWO_RAYS, x1, x2};
}

SatMoves sat_moves(const SolverState& s, int con, int j) {
  const Problem& p = *s.problem;
  const Constraint& c = p.constraints[con];
  Slice sl = con_slice(s, con, j);
  bool is_eq = c.sense == Sense::EQ;

  Value cand[2];
  int nc = 0;
  auto push_real = [&](double d, bool toward_up) {
    Value v;
    bool ok = is_eq ? near_integer(d, v)
                    : to_value(toward_up ? std::ceil(d) : std::floor(d), v);
    if (ok) cand[nc++] = v;
  };

  if (sl.A == 0.0) {
    if (sl.H != 0.0) {
      double nu = (c.rhs - sl.I) / sl.H;
      // H > 0 demands x <= nu, so round down; H < 0 rounds up.
      push_real(nu, sl.H < 0.0);
    }
  } else {
    double disc = sl.H * sl.H - 4.0 * sl.A * (sl.I - c.rhs);
    if (disc == 0.0) {
      Value v;
      if (near_integer(-sl.H / (2.0 * sl.A), v)) cand[nc++] = v;
    } else if (disc > 0.0) {
      auto [x1, x2] = quad_roots(sl.A, sl.H, sl.I - c.rhs, disc);
      bool up_first = sl.A > 0.0;  // A>0: ceil(x1), floor(x2); A<0 mirrored
      push_real(x1, up_first);
      push_real(x2, !up_first);
    }
  }

  SatMoves out;
  double eps = feas_eps(c.rhs);
  for (int k = 0; k < nc; ++k) {
    Value v = cand[k];
    if (!p.variables[j].contains(v) || v == s.alpha[j]) continue;
    if (k == 1 && out.n == 1 && out.m[0].value == v) continue;
    double resid = sl.at(static_cast<double>(v)) - c.rhs;
    if (is_eq ? std::abs(resid) > eps : resid > eps) continue;
    out.m[out.n++] = Move{MoveKind::SAT, j, v, -1, 0, con};
  }
  return out;
}

std::optional<Move> exp_move(const SolverState& s, int con, int j) {
  const Problem& p = *s.problem;
  const Constraint& c = p.constraints[con];
  check(c.sense == Sense::LE, "exploration move needs an inequality");
  check(p.obj_slot[j] >= 0, "exploration move target not in objective");
  Slice sl = con_slice(s, con, j);
  FeasibleDomain dom = feasible_domain(sl.A, sl.H, sl.I, c.rhs);
  if (dom.shape == DomainShape::EMPTY) return std::nullopt;

  const Variable& var = p.variables[j];
  double lbd = var.lb_finite() ? static_cast<double>(var.lb)
                               : -std::numeric_limits<double>::infinity();
  double ubd = var.ub_finite() ? static_cast<double>(var.ub)
                               : std::numeric_limits<double>::infinity();
  auto member = [&](double v) {
    return dom.contains(v) && lbd <= v && v <= ubd;
  };

  const VarSlot& os = p.obj_table.slots[p.obj_slot[j]];
  double W = os.quad;
  double K = os.lin_at(s.alpha);
  auto theta = [&](double v) { return (W * v + K) * v; };

  // Endpoint candidates of dom intersected with the box: every piece
  // boundary is one of these five values.
  double ends[4];
  int ne = 0;
  auto push_end = [&](double e) {
    if (std::isfinite(e) && member(e)) ends[ne++] = e;
  };
  if (dom.shape != DomainShape::ALL) {
    push_end(dom.x1);
    if (dom.shape == DomainShape::INTERVAL ||
        dom.shape == DomainShape::TWO_RAYS)
      push_end(dom.x2);
  }
  push_end(lbd);
  push_end(ubd);
  std::sort(ends, ends + ne);

  bool above = var.ub_finite() || dom.bounded_above();
  bool below = var.lb_finite() || dom.bounded_below();

  double x_min;
  if (W == 0.0) {
    if (K == 0.0) return std::nullopt;
    bool down = K > 0.0;  // theta = K v decreases toward -inf when K > 0
    if ((down && !below) || (!down && !above)) return std::nullopt;
    if (ne == 0) return std::nullopt;
    x_min = down ? ends[0] : ends[ne - 1];
  } else if (W > 0.0) {
    double xi = K / (-2.0 * W);
    if (member(xi)) {
      x_min = xi;
    } else {
      if (ne == 0) return std::nullopt;
      x_min = ends[0];
      for (int k = 1; k < ne; ++k)
        if (theta(ends[k]) < theta(x_min)) x_min = ends[k];
    }
  } else {
    if (!above || !below || ne == 0) return std::nullopt;
    x_min = ends[0];
    for (int k = 1; k < ne; ++k)
      if (theta(ends[k]) < theta(x_min)) x_min = ends[k];
  }

  double chosen = std::ceil(x_min);
  if (!member(chosen)) chosen = std::floor(x_min);
  if (!member(chosen)) return std::nullopt;
  Value nv;
  if (!to_value(chosen, nv) || !var.contains(nv) || nv == s.alpha[j])
    return std::nullopt;
  if (!(theta(static_cast<double>(nv)) <
        theta(static_cast<double>(s.alpha[j]))))
    return std::nullopt;
  if (sl.at(static_cast<double>(nv)) > c.rhs + feas_eps(c.rhs))
    return std::nullopt;
  return Move{MoveKind::EXP, j, nv, -1, 0, con};
}

std::optional<Move> inc_move(const SolverState& s, int con, int j, int xp,
                             bool literal_both_theta) {
  const Problem& p = *s.problem;
  const Constraint& c = p.constraints[con];
  check(c.sense == Sense::EQ, "paired step needs an equality");
  check(xp != j, "paired step needs two distinct variables");
  check(p.obj_slot[j] >= 0, "paired step target not in objective");

  const VarSlot& os = p.obj_table.slots[p.obj_slot[j]];
  double Wj = os.quad;
  double Kj = os.lin_at(s.alpha);
  auto theta_j = [&](double v) { return (Wj * v + Kj) * v; };
  Value aj = s.alpha[j];
  double th0 = theta_j(static_cast<double>(aj));

  Value x_inc = aj;
  double th_inc = th0;
  for (Value step : {Value{-1}, Value{1}}) {
    Value v = aj + step;
    if (!p.variables[j].contains(v)) continue;
    double th = theta_j(static_cast<double>(v));
    if (th < th0 && th < th_inc) {  // tie keeps the -1 direction
      x_inc = v;
      th_inc = th;
    }
  }
  if (x_inc == aj) return std::nullopt;

  // Slice of xp with x_j pinned at x_inc.
  Slice sj = con_slice(s, con, j);
  double body_mod =
      s.activity[con] + sj.at(static_cast<double>(x_inc)) -
      sj.at(static_cast<double>(aj));
  int si = p.con_tables[con].find(xp);
  check(si >= 0, "paired step partner not in constraint");
  const VarSlot& ps = p.con_tables[con].slots[si];
  double A = ps.quad;
  double H = ps.lin_at_override(s.alpha, j, static_cast<double>(x_inc));
  double ap = static_cast<double>(s.alpha[xp]);
  double I = body_mod - (A * ap + H) * ap;

  Value roots[2];
  int nr = 0;
  if (A == 0.0) {
    if (H != 0.0) {
      Value r;
      if (near_integer((c.rhs - I) / H, r)) roots[nr++] = r;
    }
  } else {
    double disc = H * H - 4.0 * A * (I - c.rhs);
    if (disc == 0.0) {
      Value r;
      if (near_integer(-H / (2.0 * A), r)) roots[nr++] = r;
    } else if (disc > 0.0) {
      auto [x1, x2] = quad_roots(A, H, I - c.rhs, disc);
      Value r;
      if (near_integer(x1, r)) roots[nr++] = r;
      if (near_integer(x2, r) && (nr == 0 || roots[0] != r)) roots[nr++] = r;
    }
  }
  std::sort(roots, roots + nr);

  double eps = feas_eps(c.rhs);
  double d1 = th_inc - th0;  // objective delta from moving x_j
  const VarSlot* pos =
      p.obj_slot[xp] >= 0 ? &p.obj_table.slots[p.obj_slot[xp]] : nullptr;
  for (int k = 0; k < nr; ++k) {
    Value r = roots[k];
    if (!p.variables[xp].contains(r)) continue;
    double rd = static_cast<double>(r);
    if (std::abs((A * rd + H) * rd + I - c.rhs) > eps) continue;
    double accept_delta;
    if (literal_both_theta) {
      // Only monomials containing both variables count.
      double joint = 0.0;
      for (const CrossTerm& t : os.cross)
        if (t.var == xp) joint += t.coeff;
      accept_delta = joint * (static_cast<double>(x_inc) * rd -
                              static_cast<double>(aj) * ap);
    } else {
      double d2 = 0.0;
      if (pos) {
        double Kp = pos->lin_at_override(s.alpha, j,
                                        static_cast<double>(x_inc));
        d2 = Kp * (rd - ap) + pos->quad * (rd * rd - ap * ap);
      }
      accept_delta = d1 + d2;
    }
    if (accept_delta < -kObjZeroTol)
      return Move{MoveKind::INC, j, x_inc, xp, r, con};
  }
  return std::nullopt;
}

std::optional<Move> free_move(const SolverState& s, int j) {
  const Problem& p = *s.problem;
  check(p.is_free[j] != 0, "free step target is constrained");
  const Variable& var = p.variables[j];
  const VarSlot& os = p.obj_table.slots[p.obj_slot[j]];
  double W = os.quad;
  double K = os.lin_at(s.alpha);

  Value nv;
  if (W > 0.0) {
    double xi = K / (-2.0 * W);
    if (!(std::abs(xi) <= kValueGuard)) return std::nullopt;
    Value lo = var.clamp(static_cast<Value>(std::floor(xi)));
    Value hi = var.clamp(static_cast<Value>(std::ceil(xi)));
    auto theta = [&](Value v) {
      return (W * static_cast<double>(v) + K) * static_cast<double>(v);
    };
    nv = theta(hi) < theta(lo) ? hi : lo;  // tie keeps the lower value
  } else if (W == 0.0 && K != 0.0) {
    if (K > 0.0)
      nv = var.lb_finite() ? var.lb : s.alpha[j] - 1;
    else
      nv = var.ub_finite() ? var.ub : s.alpha[j] + 1;
  } else {
    return std::nullopt;
  }
  if (!var.contains(nv) || nv == s.alpha[j]) return std::nullopt;
  return Move{MoveKind::FREE, j, nv, -1, 0, -1};
}

}  // namespace iqls
