#include "iqls/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iqls {

namespace {

struct Grid {
  std::vector<Value> lb;
  std::vector<std::uint64_t> dim;
  std::uint64_t total = 0;
  bool too_large = false;
};

Grid make_grid(const Problem& p, std::uint64_t max_points) {
  Grid g;
  g.total = 1;
  for (const Variable& v : p.variables) {
    if (!v.lb_finite() || !v.ub_finite())
      throw UnboundedDomain("variable " + v.name +
                            " has an infinite bound; the grid scan needs a "
                            "finite box");
    std::uint64_t span =
        static_cast<std::uint64_t>(v.ub - v.lb) + 1;  // ub >= lb guaranteed
    g.lb.push_back(v.lb);
    g.dim.push_back(span);
    if (g.total > max_points / span) {
      g.too_large = true;
      g.total = 0;
      return g;
    }
    g.total *= span;
  }
  if (g.total > max_points) {
    g.too_large = true;
    g.total = 0;
  }
  return g;
}

// Variable 0 is the most significant digit, so flat order == lex order.
void decode(const Grid& g, std::uint64_t idx, std::vector<Value>& point) {
  for (int j = static_cast<int>(g.dim.size()) - 1; j >= 0; --j) {
    point[j] = g.lb[j] + static_cast<Value>(idx % g.dim[j]);
    idx /= g.dim[j];
  }
}

// Direct feasibility test, deliberately independent of the incremental
// activity machinery.
bool point_feasible(const Problem& p, std::span<const Value> point) {
  for (const Constraint& c : p.constraints) {
    double body = c.body.value_at(point);
    double eps = feas_eps(c.rhs);
    bool ok = c.sense == Sense::LE ? body <= c.rhs + eps
                                   : std::abs(body - c.rhs) <= eps;
    if (!ok) return false;
  }
  return true;
}

struct BestPoint {
  double obj = std::numeric_limits<double>::infinity();
  std::uint64_t idx = std::numeric_limits<std::uint64_t>::max();
  bool found = false;

  void offer(double o, std::uint64_t i) {
    if (!found || o < obj || (o == obj && i < idx)) {
      obj = o;
      idx = i;
      found = true;
    }
  }
  void merge(const BestPoint& other) {
    if (other.found) offer(other.obj, other.idx);
  }
};

OracleResult finish(const Problem& p, const Grid& g, const BestPoint& best) {
  OracleResult res;
  res.enumerated_count = g.total;
  if (!best.found) {
    res.status = OracleStatus::INFEASIBLE;
    return res;
  }
  res.status = OracleStatus::OPTIMAL;
  res.opt_assignment.resize(p.num_vars());
  decode(g, best.idx, res.opt_assignment);
  res.opt_obj = p.maximize_original ? -best.obj : best.obj;
  return res;
}

}  // namespace

OracleResult brute_force_serial(const Problem& p, std::uint64_t max_points) {
  Grid g = make_grid(p, max_points);
  if (g.too_large) return OracleResult{};
  BestPoint best;
  std::vector<Value> point(p.num_vars());
  for (std::uint64_t i = 0; i < g.total; ++i) {
    decode(g, i, point);
    if (!point_feasible(p, point)) continue;
    best.offer(p.objective.value_at(point), i);
  }
  return finish(p, g, best);
}

OracleResult brute_force(const Problem& p, std::uint64_t max_points,
                         int threads) {
  Grid g = make_grid(p, max_points);
  if (g.too_large) return OracleResult{};
  BestPoint best;
#ifdef _OPENMP
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
  {
    BestPoint local;
    std::vector<Value> point(p.num_vars());
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(g.total); ++i) {
      decode(g, static_cast<std::uint64_t>(i), point);
      if (!point_feasible(p, point)) continue;
      local.offer(p.objective.value_at(point),
                  static_cast<std::uint64_t>(i));
    }
#pragma omp critical
    best.merge(local);
  }
#else
  (void)threads;
  std::vector<Value> point(p.num_vars());
  for (std::uint64_t i = 0; i < g.total; ++i) {
    decode(g, i, point);
    if (!point_feasible(p, point)) continue;
    best.offer(p.objective.value_at(point), i);
  }
#endif
  return finish(p, g, best);
}

const char* category_name(Category c) {
  switch (c) {
    case Category::QUBO:
      return "QUBO";
    case Category::LCQP:
      return "LCQP";
    case Category::QCLP:
      return "QCLP";
    case Category::QCQP:
      return "QCQP";
    case Category::LP:
      return "LP";
  }
  return "?";
}

Category categorize(const Problem& p) {
  bool obj_quad = p.objective.has_quadratic();
  bool con_quad = false;
  for (const Constraint& c : p.constraints)
    con_quad = con_quad || c.body.has_quadratic();
  if (p.num_cons() == 0) return obj_quad ? Category::QUBO : Category::LP;
  if (con_quad) return obj_quad ? Category::QCQP : Category::QCLP;
  return obj_quad ? Category::LCQP : Category::LP;
}

Problem gen_random(const GenConfig& cfg) {
  if (cfg.n < 1) throw ModelError("generator needs at least one variable");
  if (cfg.category == Category::QUBO && cfg.m != 0)
    throw ModelError("QUBO instances are unconstrained; m must be 0");
  if (cfg.category != Category::QUBO && cfg.m < 1)
    throw ModelError("constrained categories need at least one constraint");
  if (cfg.category == Category::LP)
    throw ModelError("all-linear instances are outside the generator's scope");
  if (cfg.coeff_max < 1 || cfg.bound_width < 1)
    throw ModelError("generator ranges must be positive");

  Rng rng(cfg.seed);
  auto coeff = [&](Rng& r) {
    double c = static_cast<double>(rand_value(r, 1, cfg.coeff_max));
    return (r() & 1) ? c : -c;
  };

  RawProblem raw;
  raw.name = std::string("rand_") + category_name(cfg.category) + "_n" +
             std::to_string(cfg.n) + "_m" + std::to_string(cfg.m) + "_s" +
             std::to_string(cfg.seed);
  bool binary = cfg.category == Category::QUBO;
  for (int j = 0; j < cfg.n; ++j) {
    RawVariable v;
    v.name = "x" + std::to_string(j);
    v.lb = binary ? 0.0 : -static_cast<double>(cfg.bound_width);
    v.ub = binary ? 1.0 : static_cast<double>(cfg.bound_width);
    raw.variables.push_back(std::move(v));
  }

  int per_expr = std::max(1, static_cast<int>(std::lround(
                                 cfg.density * static_cast<double>(cfg.n))));
  bool obj_quad =
      cfg.category != Category::QCLP;  // quadratic objective elsewhere

  // Distinct monomial keys so merged terms can never cancel to zero.
  std::set<std::pair<int, int>> used;
  int quad_terms = obj_quad ? std::max(1, per_expr) : 0;
  for (int t = 0; t < quad_terms; ++t) {
    int i = static_cast<int>(rand_index(rng, cfg.n));
    int j = static_cast<int>(rand_index(rng, cfg.n));
    auto key = std::minmax(i, j);
    if (!used.insert({key.first, key.second}).second) continue;
    raw.objective.quadratic.push_back({key.first, key.second, coeff(rng)});
  }
  if (obj_quad && raw.objective.quadratic.empty())
    raw.objective.quadratic.push_back({0, 0, coeff(rng)});
  int lin_terms = std::min(
      cfg.n, cfg.category == Category::QCLP ? std::max(1, per_expr)
                                            : per_expr / 2);
  std::set<int> lin_vars;
  while (static_cast<int>(lin_vars.size()) < lin_terms)
    lin_vars.insert(static_cast<int>(rand_index(rng, cfg.n)));
  for (int v : lin_vars) raw.objective.linear[v] = coeff(rng);

  // Hidden anchor keeps the equality side of the instance satisfiable.
  std::vector<Value> anchor(cfg.n);
  for (int j = 0; j < cfg.n; ++j)
    anchor[j] = binary ? rand_value(rng, 0, 1)
                       : rand_value(rng, -cfg.bound_width, cfg.bound_width);

  bool con_quad = cfg.category == Category::QCLP ||
                  cfg.category == Category::QCQP;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < cfg.m; ++c) {
    RawConstraint rc;
    rc.name = "c" + std::to_string(c);
    rc.sense = unit(rng) < cfg.eq_prob ? RawSense::EQ : RawSense::LE;
    int vars_here = std::min(cfg.n, std::max(2, per_expr));
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < vars_here)
      chosen.insert(static_cast<int>(rand_index(rng, cfg.n)));
    std::vector<int> vlist(chosen.begin(), chosen.end());
    if (con_quad) {
      int i = vlist[rand_index(rng, vlist.size())];
      int j = vlist[rand_index(rng, vlist.size())];
      rc.body.quadratic.push_back(
          {std::min(i, j), std::max(i, j), coeff(rng)});
    }
    for (int v : vlist) rc.body.linear[v] += coeff(rng);
    double at_anchor = rc.body.value_at(anchor);
    rc.rhs = rc.sense == RawSense::EQ
                 ? at_anchor
                 : at_anchor + static_cast<double>(rand_value(rng, -2, 6));
    raw.constraints.push_back(std::move(rc));
  }

  return normalize(raw);
}

}  // namespace iqls
