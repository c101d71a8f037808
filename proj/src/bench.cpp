#include "iqls/bench.hpp"

#include <cmath>
#include <sstream>

#include "iqls/io.hpp"
#include "iqls/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iqls {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

struct Group {
  std::size_t first = 0;
  std::size_t count = 0;
};

}  // namespace

std::vector<BenchRecord> run_bench(const std::vector<std::string>& paths,
                                   const BenchConfig& cfg) {
  check(!cfg.seeds.empty(), "bench needs at least one seed");
  check(!cfg.time_limits.empty(), "bench needs at least one time limit");

  struct Loaded {
    Problem problem;
    std::string error;
  };
  std::vector<Loaded> loaded(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      loaded[i].problem = load_instance(paths[i]);
    } catch (const std::exception& e) {
      loaded[i].error = e.what();
    }
  }

  std::vector<BenchRecord> records;
  struct Run {
    std::size_t record;  // slot in records
    std::size_t inst;
    double limit;
    std::uint64_t seed;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!loaded[i].error.empty()) {
      BenchRecord r;
      r.instance = paths[i];
      r.status = "ERROR";
      r.error = loaded[i].error;
      records.push_back(std::move(r));
      continue;
    }
    const Problem& p = loaded[i].problem;
    for (double limit : cfg.time_limits)
      for (std::uint64_t seed : cfg.seeds) {
        BenchRecord r;
        r.instance = p.name;
        r.category = category_name(categorize(p));
        r.seed = seed;
        r.time_limit = limit;
        r.maximize = p.maximize_original;
        runs.push_back({records.size(), i, limit, seed});
        records.push_back(std::move(r));
      }
  }

  auto one_run = [&](const Run& job) {
    SolverConfig sc = cfg.solver;
    sc.seed = job.seed;
    sc.time_limit = job.limit;
    SolveResult res = solve(loaded[job.inst].problem, sc);
    BenchRecord& r = records[job.record];
    r.status = res.status == SolveStatus::FEASIBLE ? "FEASIBLE" : "NA";
    r.objective = res.best_obj;
    r.time_to_best = res.stats.time_to_best;
    r.iterations = res.stats.iterations;
  };

#ifdef _OPENMP
  if (cfg.jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
    for (long long k = 0; k < static_cast<long long>(runs.size()); ++k)
      one_run(runs[k]);
    return records;
  }
#endif
  for (const Run& job : runs) one_run(job);
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "instance,category,seed,time_limit,status,objective,time_to_best,"
         "iterations,feasible_runs,best_objective,mean_objective,"
         "stddev_objective,cv\n";

  auto row = [&](const BenchRecord& r) {
    out << csv_field(r.instance) << ',' << r.category << ',';
    if (r.status != "ERROR") out << r.seed;
    out << ',';
    if (r.status != "ERROR") out << format_double(r.time_limit);
    out << ',' << r.status << ',';
    if (r.status == "FEASIBLE") out << format_double(r.objective);
    out << ',';
    if (r.status != "ERROR") out << format_double(r.time_to_best);
    out << ',';
    if (r.status != "ERROR") out << r.iterations;
    out << ",,,,,\n";
  };

  auto summary = [&](std::size_t first, std::size_t count) {
    const BenchRecord& head = records[first];
    if (head.status == "ERROR") return;
    std::vector<double> objs;
    for (std::size_t k = first; k < first + count; ++k)
      if (records[k].status == "FEASIBLE") objs.push_back(records[k].objective);
    out << csv_field(head.instance) << ',' << head.category << ",,"
        << format_double(head.time_limit) << ",SUMMARY,,,,"
        << objs.size() << ',';
    if (!objs.empty()) {
      double best = objs[0], mean = 0.0;
      for (double v : objs) {
        best = head.maximize ? std::max(best, v) : std::min(best, v);
        mean += v;
      }
      mean /= static_cast<double>(objs.size());
      double var = 0.0;
      for (double v : objs) var += (v - mean) * (v - mean);
      double stddev = std::sqrt(var / static_cast<double>(objs.size()));
      out << format_double(best) << ',' << format_double(mean) << ','
          << format_double(stddev) << ',';
      if (mean != 0.0)
        out << format_double(stddev / std::abs(mean));
    } else {
      out << ",,,";
    }
    out << '\n';
  };

  std::size_t first = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    row(records[k]);
    bool boundary =
        k + 1 == records.size() ||
        records[k + 1].instance != records[first].instance ||
        records[k + 1].time_limit != records[first].time_limit ||
        records[k + 1].status == "ERROR" || records[k].status == "ERROR";
    if (boundary) {
      summary(first, k + 1 - first);
      first = k + 1;
    }
  }
  return out.str();
}

}  // namespace iqls
