#include "iqls/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iqls/bench.hpp"
#include "iqls/evaluator.hpp"
#include "iqls/io.hpp"

namespace iqls {

namespace {

namespace fs = std::filesystem;

// Runs a configured CLI11 app over args; returns -1 to continue, else the
// exit code (0 after --help, 2 on a usage error).
int parse_args(CLI::App& app, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  return -1;
}

void add_solver_options(CLI::App& app, SolverConfig& cfg) {
  app.add_option("--bms-samples", cfg.t, "Moves sampled per candidate draw")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--obj-weight-cap", cfg.zeta,
                 "Objective weight stops growing at this value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--disable-exp", cfg.disable_exp,
               "Turn off inequality-expansion moves");
  app.add_flag("--disable-inc", cfg.disable_inc,
               "Turn off paired equality moves");
  app.add_flag("--disable-free", cfg.disable_free,
               "Turn off constraint-free variable moves");
  app.add_option("--step-limit", cfg.step_limit,
                 "Stop after this many iterations (0 = time limit only)")
      ->capture_default_str();
  app.add_option("--target-obj", cfg.target_obj,
                 "Stop once the objective reaches this value");
}

Problem load_or_fail(const std::string& path, const std::string& format) {
  return load_instance(path, format);
}

}  // namespace

int cmd_solve(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"Solve one instance and print the best point found", "iqls solve"};
  std::string path;
  std::string format = "auto";
  std::string output = "text";
  SolverConfig cfg;
  app.add_option("instance", path, "Instance file")->required();
  app.add_option("--format", format, "Instance format")
      ->check(CLI::IsMember({"qplib", "canonical", "auto"}))
      ->capture_default_str();
  app.add_option("--time-limit", cfg.time_limit, "Search budget in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--output", output, "Report style")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  add_solver_options(app, cfg);
  if (int rc = parse_args(app, args, out, err); rc >= 0) return rc;

  Problem p;
  try {
    p = load_or_fail(path, format);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 2;
  }
  SolveResult res = solve(p, cfg);
  out << write_solution(
      p, res, output == "machine" ? OutputFormat::MACHINE : OutputFormat::TEXT);
  return res.status == SolveStatus::FEASIBLE ? 0 : 20;
}

int cmd_check(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"Verify a machine-format solution against its instance",
               "iqls check"};
  std::string inst_path;
  std::string sol_path;
  std::string format = "auto";
  app.add_option("instance", inst_path, "Instance file")->required();
  app.add_option("solution", sol_path, "Solution file (machine format)")
      ->required();
  app.add_option("--format", format, "Instance format")
      ->check(CLI::IsMember({"qplib", "canonical", "auto"}))
      ->capture_default_str();
  if (int rc = parse_args(app, args, out, err); rc >= 0) return rc;

  Problem p;
  MachineSolution sol;
  try {
    p = load_or_fail(inst_path, format);
    std::ifstream in(sol_path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + sol_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    sol = read_machine_solution(buf.str());
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 2;
  }

  if (sol.status != "FEASIBLE") {
    err << "solution status is '" << sol.status << "'; nothing to check\n";
    return 2;
  }
  std::vector<Value> x(p.num_vars(), 0);
  for (const Variable& v : p.variables) {
    auto it = sol.values.find(v.name);
    if (it == sol.values.end()) {
      err << "variable '" << v.name << "' missing from the solution file\n";
      return 2;
    }
    x[v.index] = it->second;
  }
  if (sol.values.size() != static_cast<std::size_t>(p.num_vars())) {
    for (const auto& [name, value] : sol.values) {
      bool known = false;
      for (const Variable& v : p.variables) known = known || v.name == name;
      if (!known) {
        err << "unknown variable '" << name << "' in the solution file\n";
        return 2;
      }
    }
  }

  for (const Variable& v : p.variables)
    if (!v.contains(x[v.index])) {
      out << "variable '" << v.name << "' = " << x[v.index]
          << " is outside its bounds\n";
      return 1;
    }
  for (const Constraint& c : p.constraints) {
    double act = c.body.value_at(x);
    double viol = con_violation(c, act);
    if (viol > feas_eps(c.rhs)) {
      out << "constraint '" << c.name << "' violated by "
          << format_double(viol) << '\n';
      return 1;
    }
  }

  if (!sol.objective) {
    err << "solution file has no objective line\n";
    return 2;
  }
  double value = p.objective.value_at(x);
  double original = p.maximize_original ? -value : value;
  double claimed = *sol.objective;
  if (std::abs(original - claimed) >
      1e-6 * std::max(1.0, std::abs(claimed))) {
    out << "objective mismatch: file says " << format_double(claimed)
        << ", recomputed " << format_double(original) << '\n';
    return 1;
  }
  out << "OK\n";
  return 0;
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"Sweep instances over seeds and time limits, emit CSV",
               "iqls bench"};
  std::vector<std::string> inputs;
  int num_seeds = 1;
  std::string limits_text = "10";
  std::string output = "-";
  BenchConfig cfg;
  app.add_option("inputs", inputs,
                 "Instance files or directories (scanned for .qplib/.json)")
      ->required();
  app.add_option("--seeds", num_seeds, "Run seeds 1..N per combination")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--time-limits", limits_text,
                 "Comma-separated seconds, one sweep per value")
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Parallel solver runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", output, "CSV destination ('-' = stdout)")
      ->capture_default_str();
  add_solver_options(app, cfg.solver);
  if (int rc = parse_args(app, args, out, err); rc >= 0) return rc;

  cfg.seeds.clear();
  for (int s = 1; s <= num_seeds; ++s) cfg.seeds.push_back(s);
  cfg.time_limits.clear();
  std::stringstream limits(limits_text);
  std::string piece;
  while (std::getline(limits, piece, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(piece, &used);
      if (used != piece.size() || !(v > 0)) throw std::invalid_argument(piece);
      cfg.time_limits.push_back(v);
    } catch (const std::exception&) {
      err << "bad time limit '" << piece << "'\n";
      return 2;
    }
  }
  if (cfg.time_limits.empty()) {
    err << "--time-limits needs at least one value\n";
    return 2;
  }

  std::vector<std::string> paths;
  for (const std::string& input : inputs) {
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(input, ec)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        if (ext == ".qplib" || ext == ".json")
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    } else {
      paths.push_back(input);
    }
  }
  if (paths.empty()) {
    err << "no instances to run\n";
    return 2;
  }

  std::string csv = bench_csv(run_bench(paths, cfg));
  if (output == "-") {
    out << csv;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "cannot write '" << output << "'\n";
      return 2;
    }
    f << csv;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + std::min(argc, 2), argv + argc);
  std::string cmd = argc > 1 ? argv[1] : "";
  if (cmd == "solve") return cmd_solve(args, std::cout, std::cerr);
  if (cmd == "check") return cmd_check(args, std::cout, std::cerr);
  if (cmd == "bench") return cmd_bench(args, std::cout, std::cerr);

  std::ostream& where =
      (cmd.empty() || cmd == "-h" || cmd == "--help") ? std::cout : std::cerr;
  where << "iqls — local search for integer quadratic programs\n"
           "\n"
           "usage: iqls <command> [options]\n"
           "\n"
           "commands:\n"
           "  solve   solve one instance and print the best point found\n"
           "  check   verify a machine-format solution against its instance\n"
           "  bench   sweep instances over seeds and time limits, emit CSV\n"
           "\n"
           "run 'iqls <command> --help' for options.\n";
  return (cmd == "-h" || cmd == "--help") ? 0 : 2;
}

}  // namespace iqls
