#pragma once

#include <map>
#include <optional>
#include <string>

#include "iqls/model.hpp"
#include "iqls/search.hpp"

namespace iqls {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// QPLIB-format reader. Consumes every record of the file; truncation,
// malformed tokens and out-of-range indices raise ParseError with the
// offending line, continuous-variable or all-linear type codes raise
// UnsupportedInstance. Ranged rows split into an LE and a GE row; rows
// with both sides infinite are dropped. Starting-point records are read
// and discarded (the search picks its own start).
RawProblem parse_qplib(const std::string& text);

// Reader and writer for the canonical JSON instance format:
//   { "name": str, "sense": "min"|"max",
//     "variables": [{"name": str, "lb": num|"-inf", "ub": num|"inf"}...],
//     "objective": {"constant": num, "linear": {name: num},
//                   "quadratic": [[i, j, c]...]},           // 0-based, i <= j
//     "constraints": [{"name": str, "sense": "le"|"ge"|"eq", "rhs": num,
//                      "linear": {...}, "quadratic": [...]}...] }
// Unknown fields are rejected; linear maps refer to declared names only.
// write_canonical(p) followed by parse_canonical + normalize reproduces p
// bit-exactly.
RawProblem parse_canonical(const std::string& text);
std::string write_canonical(const Problem& p);

// Reads and normalizes an instance file. format is "qplib", "canonical" or
// "auto" (.qplib and .json pick themselves; anything else needs an explicit
// format). Unreadable files raise ParseError.
Problem load_instance(const std::string& path,
                      const std::string& format = "auto");

enum class OutputFormat { TEXT, MACHINE };

// Solution report. Objective is printed in the original sense; an NA result
// has no objective and no assignment lines. The machine format is
// line-oriented: key=value pairs plus one "var <name> <value>" per variable.
std::string write_solution(const Problem& p, const SolveResult& r,
                           OutputFormat fmt);

struct MachineSolution {
  std::string status;
  std::optional<double> objective;
  std::map<std::string, Value> values;
};

MachineSolution read_machine_solution(const std::string& text);

}  // namespace iqls
