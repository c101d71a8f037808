#include "iqls/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace iqls {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr double kDoubleInf = std::numeric_limits<double>::infinity();

long long to_int(const std::string& tok, int line, const std::string& what) {
  const char* begin = tok.c_str();
  if (!tok.empty() && tok[0] == '+') ++begin;  // from_chars rejects '+'
  long long v = 0;
  auto [p, ec] = std::from_chars(begin, tok.c_str() + tok.size(), v);
  if (ec != std::errc{} || p != tok.c_str() + tok.size())
    throw ParseError("expected an integer for " + what + ", got '" + tok + "'",
                     line);
  return v;
}

double to_double(const std::string& tok, int line, const std::string& what) {
  const char* begin = tok.c_str();
  if (!tok.empty() && tok[0] == '+') ++begin;
  double v = 0;
  auto [p, ec] = std::from_chars(begin, tok.c_str() + tok.size(), v);
  if (ec != std::errc{} || p != tok.c_str() + tok.size())
    throw ParseError("expected a number for " + what + ", got '" + tok + "'",
                     line);
  return v;
}

// ----------------------------------------------------------------- QPLIB --

// Record stream over the file: blank lines and '!'/'#'/'%' comment lines
// are skipped, a trailing comment after the data tokens is stripped.
class Records {
 public:
  explicit Records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      ++total_;
      std::vector<std::string> toks;
      std::istringstream row(line);
      std::string t;
      while (row >> t) {
        if (t[0] == '!' || t[0] == '#' || t[0] == '%') break;
        toks.push_back(std::move(t));
      }
      if (!toks.empty()) rows_.push_back({total_, std::move(toks)});
    }
  }

  const std::vector<std::string>& take(const std::string& what) {
    if (next_ >= rows_.size())
      throw ParseError("file ends before " + what, total_ + 1);
    line_ = rows_[next_].first;
    return rows_[next_++].second;
  }
  bool exhausted() const { return next_ >= rows_.size(); }
  int line() const { return line_; }
  int line_of_next() const {
    return next_ < rows_.size() ? rows_[next_].first : total_ + 1;
  }

 private:
  std::vector<std::pair<int, std::vector<std::string>>> rows_;
  std::size_t next_ = 0;
  int line_ = 0;
  int total_ = 0;
};

}  // namespace

RawProblem parse_qplib(const std::string& text) {
  Records rec(text);

  auto tok1 = [&](const std::string& what) -> const std::string& {
    return rec.take(what)[0];
  };
  auto int1 = [&](const std::string& what) {
    const std::string& t = tok1(what);  // sequenced before rec.line()
    return to_int(t, rec.line(), what);
  };
  auto num1 = [&](const std::string& what) {
    const std::string& t = tok1(what);
    return to_double(t, rec.line(), what);
  };
  auto want = [&](const std::vector<std::string>& t, std::size_t k,
                  const std::string& what) {
    if (t.size() < k)
      throw ParseError(what + " needs " + std::to_string(k) +
                           " fields, found " + std::to_string(t.size()),
                       rec.line());
  };

  RawProblem raw;
  raw.name = tok1("the problem name");

  std::string type = tok1("the problem type");
  for (char& ch : type) ch = static_cast<char>(std::toupper(ch));
  if (type.size() != 3)
    throw ParseError("problem type must be three characters, got '" + type +
                         "'",
                     rec.line());
  char obj_c = type[0], var_c = type[1], con_c = type[2];
  if (std::string("LDCQ").find(obj_c) == std::string::npos)
    throw ParseError(std::string("unknown objective code '") + obj_c + "'",
                     rec.line());
  if (std::string("CBMIG").find(var_c) == std::string::npos)
    throw ParseError(std::string("unknown variable code '") + var_c + "'",
                     rec.line());
  if (std::string("NBLDCQ").find(con_c) == std::string::npos)
    throw ParseError(std::string("unknown constraint code '") + con_c + "'",
                     rec.line());
  if (var_c == 'C')
    throw UnsupportedInstance(
        "all variables are continuous; this solver is integer-only");
  bool obj_quad = obj_c != 'L';
  bool constrained = con_c != 'N' && con_c != 'B';
  bool con_quad = con_c == 'D' || con_c == 'C' || con_c == 'Q';
  if (!obj_quad && !con_quad)
    throw UnsupportedInstance("type " + type +
                              " has no quadratic part; nothing here for a "
                              "quadratic solver");

  std::string sense = tok1("the optimization sense");
  for (char& ch : sense) ch = static_cast<char>(std::tolower(ch));
  if (sense == "maximize")
    raw.maximize = true;
  else if (sense != "minimize")
    throw ParseError("expected 'minimize' or 'maximize', got '" + sense + "'",
                     rec.line());

  long long n = int1("the variable count");
  if (n < 1) throw ParseError("variable count must be positive", rec.line());
  if (n > 50'000'000)
    throw ParseError("implausible variable count", rec.line());
  long long m = 0;
  if (constrained) {
    m = int1("the constraint count");
    if (m < 0 || m > 50'000'000)
      throw ParseError("implausible constraint count", rec.line());
  }

  auto var_index = [&](long long j, const std::string& what) -> int {
    if (j < 1 || j > n)
      throw ParseError(what + " index " + std::to_string(j) + " outside 1.." +
                           std::to_string(n),
                       rec.line());
    return static_cast<int>(j - 1);
  };
  auto con_index = [&](long long i, const std::string& what) -> int {
    if (i < 1 || i > m)
      throw ParseError(what + " index " + std::to_string(i) + " outside 1.." +
                           std::to_string(m),
                       rec.line());
    return static_cast<int>(i - 1);
  };
  auto entry_count = [&](long long limit, const std::string& what) {
    long long c = int1(what);
    if (c < 0 || c > limit)
      throw ParseError(what + " outside 0.." + std::to_string(limit),
                       rec.line());
    return c;
  };

  // The format stores the lower triangle of Q in 1/2 x'Qx: a diagonal entry
  // v contributes (v/2) x_j^2, an off-diagonal entry v contributes v x_i x_j.
  if (obj_quad) {
    long long nq = entry_count(n * n, "the objective quadratic entry count");
    for (long long k = 0; k < nq; ++k) {
      const auto& t = rec.take("an objective quadratic entry");
      want(t, 3, "an objective quadratic entry");
      int i = var_index(to_int(t[0], rec.line(), "a quadratic row"),
                        "objective quadratic row");
      int j = var_index(to_int(t[1], rec.line(), "a quadratic column"),
                        "objective quadratic column");
      double v = to_double(t[2], rec.line(), "a quadratic coefficient");
      raw.objective.quadratic.push_back(
          {std::min(i, j), std::max(i, j), i == j ? v / 2 : v});
    }
  }

  double b_def = num1("the default objective linear coefficient");
  if (b_def != 0.0)
    for (long long j = 0; j < n; ++j)
      raw.objective.linear[static_cast<int>(j)] = b_def;
  long long nb = entry_count(n, "the objective linear entry count");
  for (long long k = 0; k < nb; ++k) {
    const auto& t = rec.take("an objective linear entry");
    want(t, 2, "an objective linear entry");
    int j = var_index(to_int(t[0], rec.line(), "a linear index"),
                      "objective linear");
    raw.objective.linear[j] =
        to_double(t[1], rec.line(), "a linear coefficient");
  }
  raw.objective.constant = num1("the objective constant");

  std::vector<QuadExpr> bodies(static_cast<std::size_t>(m));
  if (con_quad) {
    long long nqc =
        entry_count(m * n * n, "the constraint quadratic entry count");
    for (long long k = 0; k < nqc; ++k) {
      const auto& t = rec.take("a constraint quadratic entry");
      want(t, 4, "a constraint quadratic entry");
      int c = con_index(to_int(t[0], rec.line(), "a constraint index"),
                        "constraint quadratic");
      int i = var_index(to_int(t[1], rec.line(), "a quadratic row"),
                        "constraint quadratic row");
      int j = var_index(to_int(t[2], rec.line(), "a quadratic column"),
                        "constraint quadratic column");
      double v = to_double(t[3], rec.line(), "a quadratic coefficient");
      bodies[c].quadratic.push_back(
          {std::min(i, j), std::max(i, j), i == j ? v / 2 : v});
    }
  }
  if (constrained) {
    long long nbc = entry_count(m * n, "the constraint linear entry count");
    for (long long k = 0; k < nbc; ++k) {
      const auto& t = rec.take("a constraint linear entry");
      want(t, 3, "a constraint linear entry");
      int c = con_index(to_int(t[0], rec.line(), "a constraint index"),
                        "constraint linear");
      int j = var_index(to_int(t[1], rec.line(), "a linear index"),
                        "constraint linear");
      bodies[c].linear[j] +=
          to_double(t[2], rec.line(), "a linear coefficient");
    }
  }

  double inf_val = num1("the infinity threshold");
  if (!(inf_val > 0))
    throw ParseError("infinity threshold must be positive", rec.line());
  auto fix_inf = [&](double b) {
    if (b >= inf_val) return kDoubleInf;
    if (b <= -inf_val) return -kDoubleInf;
    return b;
  };

  // Default value, exception count, then "index value" exception lines.
  auto dense_group = [&](long long size, bool index_is_var,
                         const std::string& what) {
    double def = num1("the default " + what);
    std::vector<double> vals(static_cast<std::size_t>(size), def);
    long long cnt = entry_count(size, "the " + what + " entry count");
    for (long long k = 0; k < cnt; ++k) {
      const auto& t = rec.take("a " + what + " entry");
      want(t, 2, "a " + what + " entry");
      long long idx = to_int(t[0], rec.line(), "a " + what + " index");
      int i = index_is_var ? var_index(idx, what) : con_index(idx, what);
      vals[i] = to_double(t[1], rec.line(), "a " + what + " value");
    }
    return vals;
  };

  std::vector<double> cl, cu;
  if (constrained) {
    cl = dense_group(m, false, "constraint left limit");
    cu = dense_group(m, false, "constraint right limit");
  }

  std::vector<double> lb(static_cast<std::size_t>(n), 0.0);
  std::vector<double> ub(static_cast<std::size_t>(n), 1.0);
  if (var_c != 'B') {
    lb = dense_group(n, true, "variable lower bound");
    ub = dense_group(n, true, "variable upper bound");
  }

  // Variable type codes: 0 continuous, 1 binary, 2 general integer.
  std::vector<char> binary(static_cast<std::size_t>(n), var_c == 'B' ? 1 : 0);
  if (var_c == 'M' || var_c == 'G') {
    auto type_code = [&](long long code) {
      if (code < 0 || code > 2)
        throw ParseError("variable type code must be 0, 1 or 2, got " +
                             std::to_string(code),
                         rec.line());
      return static_cast<char>(code);
    };
    char t_def = type_code(int1("the default variable type"));
    std::vector<char> vt(static_cast<std::size_t>(n), t_def);
    long long cnt = entry_count(n, "the variable type entry count");
    for (long long k = 0; k < cnt; ++k) {
      const auto& t = rec.take("a variable type entry");
      want(t, 2, "a variable type entry");
      int j = var_index(to_int(t[0], rec.line(), "a variable type index"),
                        "variable type");
      vt[j] = type_code(to_int(t[1], rec.line(), "a variable type code"));
    }
    for (long long j = 0; j < n; ++j) {
      if (vt[j] == 0)
        throw UnsupportedInstance("variable " + std::to_string(j + 1) +
                                  " is continuous; this solver is "
                                  "integer-only");
      binary[j] = vt[j] == 1;
    }
  }

  // Starting-point records are part of the format but the search always
  // picks its own start, so the values are checked and dropped.
  dense_group(n, true, "starting primal value");
  if (constrained) dense_group(m, false, "starting dual value");
  dense_group(n, true, "starting reduced cost");

  std::vector<std::string> vname(static_cast<std::size_t>(n));
  long long nn = entry_count(n, "the variable name count");
  for (long long k = 0; k < nn; ++k) {
    const auto& t = rec.take("a variable name entry");
    want(t, 2, "a variable name entry");
    int j = var_index(to_int(t[0], rec.line(), "a variable name index"),
                      "variable name");
    vname[j] = t[1];
  }
  std::vector<std::string> cname(static_cast<std::size_t>(m));
  if (constrained) {
    long long nc = entry_count(m, "the constraint name count");
    for (long long k = 0; k < nc; ++k) {
      const auto& t = rec.take("a constraint name entry");
      want(t, 2, "a constraint name entry");
      int i = con_index(to_int(t[0], rec.line(), "a constraint name index"),
                        "constraint name");
      cname[i] = t[1];
    }
  }

  if (!rec.exhausted())
    throw ParseError("unexpected content after the final record",
                     rec.line_of_next());

  raw.variables.resize(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    RawVariable& v = raw.variables[j];
    v.name = vname[j];
    v.lb = fix_inf(lb[j]);
    v.ub = fix_inf(ub[j]);
    if (binary[j]) {
      v.lb = std::max(v.lb, 0.0);
      v.ub = std::min(v.ub, 1.0);
    }
  }

  for (long long i = 0; i < m; ++i) {
    double lo = fix_inf(cl[i]), hi = fix_inf(cu[i]);
    if (lo == kDoubleInf || hi == -kDoubleInf)
      throw ModelError("constraint " + std::to_string(i + 1) +
                       " has an infinite limit of the impossible sign");
    if (lo == -kDoubleInf && hi == kDoubleInf) continue;  // vacuous row
    const std::string& base = cname[i];
    if (lo == hi) {
      RawConstraint rc;
      rc.name = base;
      rc.sense = RawSense::EQ;
      rc.rhs = lo;
      rc.body = bodies[i];
      raw.constraints.push_back(std::move(rc));
      continue;
    }
    bool both = lo > -kDoubleInf && hi < kDoubleInf;  // ranged row, split
    if (hi < kDoubleInf) {
      RawConstraint rc;
      rc.name = base;
      rc.sense = RawSense::LE;
      rc.rhs = hi;
      rc.body = bodies[i];
      raw.constraints.push_back(std::move(rc));
    }
    if (lo > -kDoubleInf) {
      RawConstraint rc;
      rc.name = both && !base.empty() ? base + "_lb" : base;
      rc.sense = RawSense::GE;
      rc.rhs = lo;
      rc.body = bodies[i];
      raw.constraints.push_back(std::move(rc));
    }
  }

  return raw;
}

// ------------------------------------------------------------- canonical --

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

void expect_keys(const json& obj,
                 std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return it.key() == k; });
    if (!known)
      throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + " must be a string");
  return v.get<std::string>();
}

double bound_from(const json& v, bool lower, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (lower && s == "-inf") return -kDoubleInf;
    if (!lower && s == "inf") return kDoubleInf;
  }
  throw ParseError(where + (lower ? ": lb must be a number or \"-inf\""
                                  : ": ub must be a number or \"inf\""));
}

void read_linear(const json& v, const std::map<std::string, int>& index,
                 QuadExpr& e, const std::string& where) {
  if (!v.is_object())
    throw ParseError("field 'linear' of " + where + " must be an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    auto f = index.find(it.key());
    if (f == index.end())
      throw ParseError("unknown variable '" + it.key() + "' in " + where);
    e.linear[f->second] =
        as_number(it.value(), "coefficient of '" + it.key() + "' in " + where);
  }
}

void read_quadratic(const json& v, int n, QuadExpr& e,
                    const std::string& where) {
  if (!v.is_array())
    throw ParseError("field 'quadratic' of " + where + " must be an array");
  for (const json& entry : v) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError("quadratic entries of " + where +
                       " must be [i, j, c] triples");
    if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
      throw ParseError("quadratic indices of " + where + " must be integers");
    long long i = entry[0].get<long long>();
    long long j = entry[1].get<long long>();
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError("quadratic index outside 0.." + std::to_string(n - 1) +
                       " in " + where);
    if (i > j)
      throw ParseError("quadratic entry of " + where +
                       " has i > j; store the upper triangle");
    double c = as_number(entry[2], "quadratic coefficient in " + where);
    e.quadratic.push_back({static_cast<int>(i), static_cast<int>(j), c});
  }
}

}  // namespace

RawProblem parse_canonical(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    std::string msg = err.what();
    std::size_t cut = msg.find("] ");
    if (cut != std::string::npos) msg = msg.substr(cut + 2);
    throw ParseError(msg, line_of_byte(text, err.byte));
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  expect_keys(doc, {"name", "sense", "variables", "objective", "constraints"},
              "the document");

  RawProblem raw;
  raw.name = as_string(field(doc, "name", "the document"), "field 'name'");
  std::string sense =
      as_string(field(doc, "sense", "the document"), "field 'sense'");
  if (sense == "max")
    raw.maximize = true;
  else if (sense != "min")
    throw ParseError("field 'sense' must be \"min\" or \"max\", got \"" +
                     sense + "\"");

  const json& vars = field(doc, "variables", "the document");
  if (!vars.is_array())
    throw ParseError("field 'variables' must be an array");
  std::map<std::string, int> index;
  for (const json& v : vars) {
    if (!v.is_object())
      throw ParseError("variable entries must be objects");
    std::string where =
        "variable " + std::to_string(raw.variables.size());
    expect_keys(v, {"name", "lb", "ub"}, where);
    RawVariable rv;
    rv.name = as_string(field(v, "name", where), "name of " + where);
    if (rv.name.empty())
      throw ParseError("name of " + where + " is empty");
    rv.lb = bound_from(field(v, "lb", where), true, where);
    rv.ub = bound_from(field(v, "ub", where), false, where);
    if (!index.emplace(rv.name, static_cast<int>(raw.variables.size()))
             .second)
      throw ParseError("duplicate variable name '" + rv.name + "'");
    raw.variables.push_back(std::move(rv));
  }
  int n = static_cast<int>(raw.variables.size());

  const json& obj = field(doc, "objective", "the document");
  if (!obj.is_object())
    throw ParseError("field 'objective' must be an object");
  expect_keys(obj, {"constant", "linear", "quadratic"}, "the objective");
  if (obj.contains("constant"))
    raw.objective.constant =
        as_number(obj["constant"], "objective constant");
  if (obj.contains("linear"))
    read_linear(obj["linear"], index, raw.objective, "the objective");
  if (obj.contains("quadratic"))
    read_quadratic(obj["quadratic"], n, raw.objective, "the objective");

  const json& cons = field(doc, "constraints", "the document");
  if (!cons.is_array())
    throw ParseError("field 'constraints' must be an array");
  for (const json& c : cons) {
    if (!c.is_object())
      throw ParseError("constraint entries must be objects");
    std::string where =
        "constraint " + std::to_string(raw.constraints.size());
    expect_keys(c, {"name", "sense", "rhs", "linear", "quadratic"}, where);
    RawConstraint rc;
    rc.name = as_string(field(c, "name", where), "name of " + where);
    std::string s = as_string(field(c, "sense", where), "sense of " + where);
    if (s == "le")
      rc.sense = RawSense::LE;
    else if (s == "ge")
      rc.sense = RawSense::GE;
    else if (s == "eq")
      rc.sense = RawSense::EQ;
    else
      throw ParseError("sense of " + where +
                       " must be \"le\", \"ge\" or \"eq\", got \"" + s + "\"");
    rc.rhs = as_number(field(c, "rhs", where), "rhs of " + where);
    if (c.contains("linear")) read_linear(c["linear"], index, rc.body, where);
    if (c.contains("quadratic"))
      read_quadratic(c["quadratic"], n, rc.body, where);
    raw.constraints.push_back(std::move(rc));
  }
  return raw;
}

std::string write_canonical(const Problem& p) {
  RawProblem raw = to_raw(p);
  std::set<std::string> seen;
  for (const RawVariable& v : raw.variables)
    if (!seen.insert(v.name).second)
      throw ModelError("duplicate variable name '" + v.name +
                       "' cannot be written unambiguously");

  auto expr_of = [&](const QuadExpr& e, bool with_constant) {
    ordered_json o;
    if (with_constant) o["constant"] = e.constant;
    ordered_json lin = ordered_json::object();
    for (const auto& [j, c] : e.linear) lin[raw.variables[j].name] = c;
    o["linear"] = lin;
    ordered_json quad = ordered_json::array();
    for (const QuadTerm& t : e.quadratic)
      quad.push_back(ordered_json::array({t.i, t.j, t.coeff}));
    o["quadratic"] = quad;
    return o;
  };

  ordered_json doc;
  doc["name"] = raw.name;
  doc["sense"] = raw.maximize ? "max" : "min";
  ordered_json vars = ordered_json::array();
  for (const RawVariable& v : raw.variables) {
    ordered_json jv;
    jv["name"] = v.name;
    if (v.lb == -kDoubleInf)
      jv["lb"] = "-inf";
    else
      jv["lb"] = v.lb;
    if (v.ub == kDoubleInf)
      jv["ub"] = "inf";
    else
      jv["ub"] = v.ub;
    vars.push_back(std::move(jv));
  }
  doc["variables"] = std::move(vars);
  doc["objective"] = expr_of(raw.objective, true);
  ordered_json cons = ordered_json::array();
  for (const RawConstraint& rc : raw.constraints) {
    ordered_json jc;
    jc["name"] = rc.name;
    jc["sense"] = rc.sense == RawSense::EQ ? "eq" : "le";
    jc["rhs"] = rc.rhs;
    ordered_json body = expr_of(rc.body, false);
    jc["linear"] = std::move(body["linear"]);
    jc["quadratic"] = std::move(body["quadratic"]);
    cons.push_back(std::move(jc));
  }
  doc["constraints"] = std::move(cons);
  return doc.dump(2) + "\n";
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Problem load_instance(const std::string& path, const std::string& format) {
  std::string fmt = format;
  if (fmt == "auto") {
    if (ends_with(path, ".qplib"))
      fmt = "qplib";
    else if (ends_with(path, ".json"))
      fmt = "canonical";
    else
      throw ParseError("cannot infer the format of '" + path +
                       "'; pass an explicit format");
  }
  if (fmt != "qplib" && fmt != "canonical")
    throw ParseError("unknown format '" + fmt +
                     "'; expected qplib or canonical");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  return normalize(fmt == "qplib" ? parse_qplib(text)
                                  : parse_canonical(text));
}

// -------------------------------------------------------------- solutions --

std::string write_solution(const Problem& p, const SolveResult& r,
                           OutputFormat fmt) {
  std::ostringstream out;
  bool feas = r.status == SolveStatus::FEASIBLE;
  const SolveStats& st = r.stats;
  if (fmt == OutputFormat::MACHINE) {
    out << "instance=" << p.name << '\n';
    out << "status=" << (feas ? "FEASIBLE" : "NA") << '\n';
    if (feas) out << "objective=" << format_double(r.best_obj) << '\n';
    out << "iterations=" << st.iterations << '\n';
    out << "mode_switches=" << st.mode_switches << '\n';
    out << "weight_updates=" << st.weight_updates << '\n';
    out << "iterations_to_best=" << st.iterations_to_best << '\n';
    out << "time_to_best=" << format_double(st.time_to_best) << '\n';
    out << "time_total=" << format_double(st.time_total) << '\n';
    if (feas)
      for (int j = 0; j < p.num_vars(); ++j)
        out << "var " << p.variables[j].name << ' ' << r.best_assignment[j]
            << '\n';
  } else {
    out << "instance    " << p.name << '\n';
    out << "status      " << (feas ? "FEASIBLE" : "NA") << '\n';
    if (feas) out << "objective   " << format_double(r.best_obj) << '\n';
    out << "iterations  " << st.iterations << " (best at "
        << st.iterations_to_best << ", " << st.mode_switches
        << " mode switches, " << st.weight_updates << " weight updates)\n";
    out << "time        " << format_double(st.time_total) << "s (best at "
        << format_double(st.time_to_best) << "s)\n";
    if (feas) {
      out << "assignment\n";
      for (int j = 0; j < p.num_vars(); ++j)
        out << "  " << p.variables[j].name << " = " << r.best_assignment[j]
            << '\n';
    }
  }
  return out.str();
}

MachineSolution read_machine_solution(const std::string& text) {
  MachineSolution sol;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;  // blank line
    if (first == "var") {
      std::string name, value;
      if (!(row >> name >> value))
        throw ParseError("var lines need a name and a value", no);
      Value v = to_int(value, no, "variable '" + name + "'");
      if (!sol.values.emplace(name, v).second)
        throw ParseError("duplicate variable '" + name + "' in solution", no);
      continue;
    }
    std::size_t eq = first.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value or a var line, got '" + first + "'",
                       no);
    std::string key = first.substr(0, eq);
    std::string value = first.substr(eq + 1);
    if (key == "status")
      sol.status = value;
    else if (key == "objective")
      sol.objective = to_double(value, no, "the objective");
    // other keys are run statistics; cmd_check has no use for them
  }
  return sol;
}

}  // namespace iqls
