#include "rhpdhg/bench.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rhpdhg/errors.hpp"
#include "rhpdhg/mps.hpp"
#include "rhpdhg/report.hpp"
#include "rhpdhg/solver.hpp"

namespace rhpdhg {

namespace fs = std::filesystem;

const char* to_string(SizeClass c) {
  switch (c) {
    case SizeClass::small: return "small";
    case SizeClass::medium: return "medium";
    case SizeClass::large: return "large";
  }
  return "unknown";
}

SizeClass classify_by_nnz(Index nnz) {
  if (nnz > 10'000'000) return SizeClass::large;
  if (nnz > 1'000'000) return SizeClass::medium;
  return SizeClass::small;
}

double sgm10(std::span<const double> times, double shift) {
  if (times.empty()) throw UsageError("sgm10: empty time list");
  double log_sum = 0.0;
  for (double t : times) {
    if (t < 0.0) throw UsageError("sgm10: negative time");
    log_sum += std::log(t + shift);
  }
  return std::exp(log_sum / static_cast<double>(times.size())) - shift;
}

namespace {

struct Job {
  std::string path;
  std::string name;
  Index nnz = 0;
  SizeClass size_class = SizeClass::small;
  double time_limit = 3600.0;
  std::string error;  // nonempty when the instance failed to parse
};

BenchmarkRecord record_from_summary(const Job& job, const SolutionSummary& s) {
  BenchmarkRecord rec;
  rec.instance = job.name;
  rec.status = s.status;
  rec.solve_seconds = s.wall_time_seconds;
  rec.scored_seconds = s.status == "optimal" ? s.wall_time_seconds : job.time_limit;
  rec.iterations = s.iterations;
  rec.restart_count = s.restart_count;
  rec.residuals = s.residuals;
  rec.nonzeros = job.nnz;
  rec.size_class = job.size_class;
  return rec;
}

BenchmarkRecord failed_record(const Job& job, const std::string& error) {
  BenchmarkRecord rec;
  rec.instance = job.name;
  rec.status = "error";
  rec.scored_seconds = job.time_limit;
  rec.nonzeros = job.nnz;
  rec.size_class = job.size_class;
  rec.error = error;
  return rec;
}

BenchmarkRecord solve_in_process(const Job& job, const SolverConfig& base) {
  try {
    const LpProblem problem = parse_mps_file(job.path);
    SolverConfig cfg = base;
    cfg.time_limit_seconds = job.time_limit;
    const SolutionReport rep = solve(problem, cfg);
    SolutionSummary s;
    s.status = to_string(rep.status);
    s.objective = rep.objective;
    s.iterations = rep.iterations;
    s.restart_count = rep.restart_count;
    s.wall_time_seconds = rep.wall_time_seconds;
    s.residuals = rep.residuals;
    return record_from_summary(job, s);
  } catch (const std::exception& e) {
    return failed_record(job, e.what());
  }
}

/// One solve per worker process, so per-instance timing stays clean.
class WorkerPool {
 public:
  WorkerPool(const std::string& exe, const SolverConfig& cfg, const fs::path& out_dir)
      : exe_(exe), cfg_(cfg), out_dir_(out_dir) {
    // children receive the full configuration; the per-job time limit is a
    // CLI override on top of it
    config_path_ = (out_dir_ / "worker.conf").string();
    std::ofstream conf(config_path_);
    for (const auto& [key, value] : cfg_.key_values()) conf << key << ' ' << value << "\n";
  }

  pid_t launch(const Job& job, std::size_t index) {
    const std::string out = report_path(index);
    const std::string limit = format_double(job.time_limit);
    std::vector<std::string> args = {exe_,  "solve",        job.path, "--config", config_path_,
                                     "--time-limit", limit, "--out",  out};
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
      std::vector<char*> argv;
      argv.reserve(args.size() + 1);
      for (std::string& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      execv(exe_.c_str(), argv.data());
      std::perror("execv");
      _exit(127);
    }
    return pid;
  }

  BenchmarkRecord collect(const Job& job, std::size_t index, int wait_status) {
    if (WIFEXITED(wait_status)) {
      const int code = WEXITSTATUS(wait_status);
      if (code == 0 || code == 2) {
        std::ifstream in(report_path(index));
        if (in) return record_from_summary(job, read_solution_summary(in));
        return failed_record(job, "worker produced no report");
      }
      return failed_record(job, "worker exited with code " + std::to_string(code));
    }
    return failed_record(job, "worker terminated abnormally");
  }

  std::string report_path(std::size_t index) const {
    return (out_dir_ / ("bench_" + std::to_string(index) + ".sol")).string();
  }

  static std::string format_double(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }

 private:
  std::string exe_;
  SolverConfig cfg_;
  fs::path out_dir_;
  std::string config_path_;
};

}  // namespace

BenchmarkReport run_benchmark(const std::string& dir, const SolverConfig& cfg,
                              const BenchmarkOptions& opts, std::ostream* log) {
  BenchmarkReport report;
  std::vector<Job> jobs;
  if (!fs::is_directory(dir)) throw UsageError("'" + dir + "' is not a directory");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!(name.ends_with(".mps") || name.ends_with(".mps.gz"))) continue;
    Job job;
    job.path = entry.path().string();
    job.name = name.substr(0, name.find(".mps"));
    try {
      const LpProblem p = parse_mps_file(job.path);
      job.nnz = p.matrix.nnz();
    } catch (const std::exception& e) {
      job.error = e.what();
    }
    job.size_class = classify_by_nnz(job.nnz);
    job.time_limit = job.size_class == SizeClass::large ? opts.large_limit_seconds
                                                        : opts.small_limit_seconds;
    jobs.push_back(std::move(job));
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.name < b.name; });
  if (jobs.empty()) {
    if (log) *log << "warning: no .mps/.mps.gz instances found in '" << dir << "'\n";
    return report;
  }

  report.records.resize(jobs.size());
  if (opts.workers <= 1 || opts.self_exe.empty()) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (log) *log << "solving " << jobs[i].name << " ...\n";
      report.records[i] = jobs[i].error.empty() ? solve_in_process(jobs[i], cfg)
                                                : failed_record(jobs[i], jobs[i].error);
    }
  } else {
    const fs::path tmp = fs::temp_directory_path() /
                         ("rhpdhg_bench_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    WorkerPool pool(opts.self_exe, cfg, tmp);
    std::vector<std::pair<pid_t, std::size_t>> running;
    std::size_t next = 0;
    auto reap_one = [&]() {
      int status = 0;
      const pid_t pid = waitpid(-1, &status, 0);
      auto it = std::find_if(running.begin(), running.end(),
                             [pid](const auto& p) { return p.first == pid; });
      if (it == running.end()) return;
      const std::size_t idx = it->second;
      report.records[idx] = pool.collect(jobs[idx], idx, status);
      running.erase(it);
    };
    while (next < jobs.size() || !running.empty()) {
      while (next < jobs.size() && running.size() < static_cast<std::size_t>(opts.workers)) {
        if (!jobs[next].error.empty()) {
          report.records[next] = failed_record(jobs[next], jobs[next].error);
          ++next;
          continue;
        }
        if (log) *log << "solving " << jobs[next].name << " ...\n";
        running.emplace_back(pool.launch(jobs[next], next), next);
        ++next;
      }
      if (!running.empty()) reap_one();
    }
    std::error_code ec;
    fs::remove_all(tmp, ec);
  }

  // summary rows: per class, then total
  for (SizeClass c : {SizeClass::small, SizeClass::medium, SizeClass::large}) {
    BenchmarkSummaryRow row;
    row.group = to_string(c);
    std::vector<double> times;
    for (const BenchmarkRecord& rec : report.records) {
      if (rec.size_class != c) continue;
      ++row.count;
      if (rec.status == "optimal") ++row.solved;
      times.push_back(rec.scored_seconds);
    }
    row.sgm10 = times.empty() ? 0.0 : sgm10(times, opts.shift);
    report.summary.push_back(row);
  }
  BenchmarkSummaryRow total;
  total.group = "total";
  std::vector<double> times;
  for (const BenchmarkRecord& rec : report.records) {
    ++total.count;
    if (rec.status == "optimal") ++total.solved;
    times.push_back(rec.scored_seconds);
  }
  total.sgm10 = times.empty() ? 0.0 : sgm10(times, opts.shift);
  report.summary.push_back(total);
  return report;
}

void write_benchmark_table(const BenchmarkReport& report, std::ostream& out) {
  out << "instance                         class   status           time(s)      iters restarts\n";
  for (const BenchmarkRecord& rec : report.records) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-32s %-7s %-16s %9.2f %10ld %8ld\n", rec.instance.c_str(),
                  to_string(rec.size_class), rec.status.c_str(), rec.solve_seconds,
                  rec.iterations, rec.restart_count);
    out << buf;
  }
  out << "\n  group    count  solved      SGM10\n";
  for (const BenchmarkSummaryRow& row : report.summary) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-8s %5ld %7ld %10.3f\n", row.group.c_str(), row.count,
                  row.solved, row.sgm10);
    out << buf;
  }
}

void write_benchmark_json(const BenchmarkReport& report, double epsilon, const std::string& path) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["epsilon"] = epsilon;
  j["records"] = nlohmann::json::array();
  for (const BenchmarkRecord& rec : report.records) {
    nlohmann::json r;
    r["instance"] = rec.instance;
    r["class"] = to_string(rec.size_class);
    r["status"] = rec.status;
    r["solve_seconds"] = rec.solve_seconds;
    r["scored_seconds"] = rec.scored_seconds;
    r["iterations"] = rec.iterations;
    r["restarts"] = rec.restart_count;
    r["nonzeros"] = rec.nonzeros;
    if (!rec.error.empty()) r["error"] = rec.error;
    j["records"].push_back(std::move(r));
  }
  j["summary"] = nlohmann::json::array();
  for (const BenchmarkSummaryRow& row : report.summary) {
    nlohmann::json s;
    s["group"] = row.group;
    s["count"] = row.count;
    s["solved"] = row.solved;
    s["sgm10"] = row.sgm10;
    j["summary"].push_back(std::move(s));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace rhpdhg
