#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iqls {

// Subcommand entry points, stream-parameterized so tests can capture output.
// Exit codes: solve 0 = feasible, 20 = no feasible point found, 2 = bad
// usage / unreadable instance. check 0 = solution verified, 1 = infeasible
// or objective mismatch, 2 = structural problems (missing variables, NA
// status, unreadable files). bench 0 = sweep ran, 2 = bad usage or nothing
// to run.
int cmd_solve(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);
int cmd_check(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);
int cmd_bench(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);

// Dispatches argv[1] to a subcommand with std::cout / std::cerr.
int run_cli(int argc, char** argv);

}  // namespace iqls
