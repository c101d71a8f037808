#include "iqls/bench.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "iqls/io.hpp"
#include "iqls/oracle.hpp"

using namespace iqls;

namespace {

std::string fixture(const std::string& name) {
  return std::string(IQLS_FIXTURE_DIR) + "/" + name;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Blanks the time_to_best column so deterministic fields can be compared
// across runs.
std::string mask_times(const std::string& csv) {
  std::ostringstream out;
  for (const std::string& line : split_lines(csv)) {
    std::istringstream in(line);
    std::string cell;
    int col = 0;
    while (std::getline(in, cell, ',')) {
      if (col > 0) out << ',';
      out << (col == 6 ? "" : cell);
      ++col;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("run_bench covers every (instance, limit, seed) combination in order") {
  BenchConfig cfg;
  cfg.seeds = {1, 2};
  cfg.time_limits = {5.0, 10.0};
  cfg.solver.step_limit = 150;

  std::vector<BenchRecord> recs = run_bench(
      {fixture("demo_qiq.qplib"), fixture("demo_qubo.qplib")}, cfg);
  REQUIRE(recs.size() == 8);
  // demo_qiq: limit 5 seeds 1,2 then limit 10 seeds 1,2; then demo_qubo.
  for (int k = 0; k < 4; ++k) CHECK(recs[k].instance == "demo_qiq");
  for (int k = 4; k < 8; ++k) CHECK(recs[k].instance == "demo_qubo");
  CHECK(recs[0].time_limit == 5.0);
  CHECK(recs[0].seed == 1);
  CHECK(recs[1].seed == 2);
  CHECK(recs[2].time_limit == 10.0);
  CHECK(recs[3].seed == 2);
  for (const BenchRecord& r : recs) {
    CHECK((r.status == "FEASIBLE" || r.status == "NA"));
    CHECK(r.iterations > 0);
    CHECK(r.error.empty());
  }
  CHECK(recs[0].category == category_name(categorize(
                                load_instance(fixture("demo_qiq.qplib")))));
}

TEST_CASE("run_bench turns unreadable files into ERROR rows and continues") {
  BenchConfig cfg;
  cfg.solver.step_limit = 100;
  std::vector<BenchRecord> recs = run_bench(
      {"/nonexistent/nope.qplib", fixture("demo_lcqp.qplib")}, cfg);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].status == "ERROR");
  CHECK(recs[0].instance == "/nonexistent/nope.qplib");
  CHECK(recs[0].error.find("cannot open") != std::string::npos);
  CHECK(recs[1].instance == "demo_lcqp");
  CHECK(recs[1].status == "FEASIBLE");
}

TEST_CASE("bench_csv rows and summary aggregates are exact") {
  std::vector<BenchRecord> recs(2);
  recs[0].instance = "toy";
  recs[0].category = "LCQP";
  recs[0].seed = 1;
  recs[0].time_limit = 2.0;
  recs[0].status = "FEASIBLE";
  recs[0].objective = -7.0;
  recs[0].time_to_best = 0.25;
  recs[0].iterations = 40;
  recs[1] = recs[0];
  recs[1].seed = 2;
  recs[1].objective = -5.0;
  recs[1].time_to_best = 0.5;
  recs[1].iterations = 60;

  std::string csv = bench_csv(recs);
  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "instance,category,seed,time_limit,status,objective,time_to_best,"
        "iterations,feasible_runs,best_objective,mean_objective,"
        "stddev_objective,cv");
  CHECK(lines[1] == "toy,LCQP,1,2,FEASIBLE,-7,0.25,40,,,,,");
  CHECK(lines[2] == "toy,LCQP,2,2,FEASIBLE,-5,0.5,60,,,,,");
  // mean -6, population stddev 1, cv 1/6
  CHECK(lines[3] == "toy,LCQP,,2,SUMMARY,,,,2,-7,-6,1," +
                        format_double(1.0 / 6.0));
}

TEST_CASE("bench_csv respects the original sense when picking the best run") {
  std::vector<BenchRecord> recs(2);
  recs[0].instance = "maxit";
  recs[0].category = "QUBO";
  recs[0].seed = 1;
  recs[0].time_limit = 1.0;
  recs[0].status = "FEASIBLE";
  recs[0].objective = 3.0;
  recs[0].maximize = true;
  recs[1] = recs[0];
  recs[1].seed = 2;
  recs[1].objective = 5.0;

  std::vector<std::string> lines = split_lines(bench_csv(recs));
  REQUIRE(lines.size() == 4);
  CHECK(lines[3].find(",SUMMARY,,,,2,5,4,1,0.25") != std::string::npos);
}

TEST_CASE("bench_csv handles NA runs, all-NA groups and ERROR rows") {
  std::vector<BenchRecord> recs(4);
  recs[0].instance = "mix";
  recs[0].category = "QCQP";
  recs[0].seed = 1;
  recs[0].time_limit = 1.0;
  recs[0].status = "FEASIBLE";
  recs[0].objective = 2.0;
  recs[0].iterations = 10;
  recs[1] = recs[0];
  recs[1].seed = 2;
  recs[1].status = "NA";
  recs[2].instance = "hopeless";
  recs[2].category = "QCQP";
  recs[2].seed = 1;
  recs[2].time_limit = 1.0;
  recs[2].status = "NA";
  recs[2].iterations = 5;
  recs[3].instance = "bad, name.qplib";
  recs[3].status = "ERROR";
  recs[3].error = "cannot open";

  std::vector<std::string> lines = split_lines(bench_csv(recs));
  REQUIRE(lines.size() == 7);
  CHECK(lines[1] == "mix,QCQP,1,1,FEASIBLE,2,0,10,,,,,");
  CHECK(lines[2] == "mix,QCQP,2,1,NA,,0,10,,,,,");
  CHECK(lines[3] == "mix,QCQP,,1,SUMMARY,,,,1,2,2,0,0");
  CHECK(lines[4] == "hopeless,QCQP,1,1,NA,,0,5,,,,,");
  CHECK(lines[5] == "hopeless,QCQP,,1,SUMMARY,,,,0,,,,");
  // a comma inside the instance name gets quoted, an ERROR row carries
  // nothing but the name and status
  CHECK(lines[6] == "\"bad, name.qplib\",,,,ERROR,,,,,,,,");
}

TEST_CASE("parallel bench matches serial except wall-clock columns") {
  BenchConfig serial;
  serial.seeds = {1, 2, 3};
  serial.time_limits = {5.0};
  serial.solver.step_limit = 200;
  BenchConfig parallel = serial;
  parallel.jobs = 4;

  std::vector<std::string> paths = {fixture("demo_qiq.qplib"),
                                    fixture("demo_types.qplib"),
                                    fixture("demo_ranged.qplib")};
  std::string a = bench_csv(run_bench(paths, serial));
  std::string b = bench_csv(run_bench(paths, parallel));
  CHECK(mask_times(a) == mask_times(b));
}
