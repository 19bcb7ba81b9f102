#include "ifo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ifo/instance_format.hpp"
#include "ifo/verifier.hpp"

namespace ifo {

namespace {

constexpr const char* kResultNames[] = {"opaque", "not-opaque", "timeout", "inconclusive", "error"};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad " + column + " '" +
                                std::string(s) + "'");
  return v;
}

bool solved(RunResult r) { return r == RunResult::opaque || r == RunResult::not_opaque; }

}  // namespace

std::string to_string(RunResult r) { return kResultNames[static_cast<int>(r)]; }

std::optional<RunResult> parse_run_result(std::string_view s) {
  for (int i = 0; i < 5; ++i)
    if (s == kResultNames[i]) return static_cast<RunResult>(i);
  return std::nullopt;
}

RunRecord run_one(const IfoInstance& inst, Algorithm algo, double timeout_ms,
                  const Budgets& budgets, std::string instance_id) {
  RunRecord rec;
  rec.instance = std::move(instance_id);
  rec.algorithm = to_string(algo);
  const auto started = Clock::now();
  try {
    if (!(timeout_ms > 0)) throw std::invalid_argument("timeout must be positive");
    VerifyOptions opts;
    opts.algorithm = algo;
    opts.element_limit = budgets.element_limit;
    opts.node_limit = budgets.node_limit;
    opts.deadline = started + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double, std::milli>(timeout_ms));
    const Verdict v = verify(inst, opts);
    rec.explored = v.stats.explored;
    rec.antichain_peak = v.stats.antichain_peak;
    switch (v.result) {
      case Outcome::opaque:
        rec.result = RunResult::opaque;
        break;
      case Outcome::not_opaque:
        rec.result = RunResult::not_opaque;
        if (v.witness) rec.witness_len = v.witness->size();
        break;
      case Outcome::inconclusive:
        rec.result = v.stats.stop == StopReason::deadline ? RunResult::timeout : RunResult::inconclusive;
        break;
    }
  } catch (const std::exception& e) {
    rec.result = RunResult::error;
    rec.message = e.what();
  }
  rec.time_ms = elapsed_ms(started);
  return rec;
}

std::vector<RunRecord> run_suite(const std::string& dir, const std::vector<Algorithm>& algos,
                                 double timeout_ms, std::size_t jobs, const Budgets& budgets) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".ifo") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Task {
    std::size_t file;
    Algorithm algo;
  };
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < files.size(); ++f)
    for (Algorithm a : algos) tasks.push_back({f, a});

  std::vector<RunRecord> rows(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[i];
      const std::string id = files[t.file].stem().string();
      try {
        rows[i] = run_one(load_instance(files[t.file].string()), t.algo, timeout_ms, budgets, id);
      } catch (const std::exception& e) {
        rows[i].instance = id;
        rows[i].algorithm = to_string(t.algo);
        rows[i].result = RunResult::error;
        rows[i].message = e.what();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.instance, a.algorithm) < std::tie(b.instance, b.algorithm);
  });
  return rows;
}

std::string to_csv(const std::vector<RunRecord>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  char time[64];
  for (const auto& r : rows) {
    std::snprintf(time, sizeof time, "%.3f", r.time_ms);
    out += r.instance + ',' + r.algorithm + ',' + to_string(r.result) + ',' + time + ',' +
           std::to_string(r.explored) + ',' + std::to_string(r.antichain_peak) + ',' +
           (r.witness_len ? std::to_string(*r.witness_len) : std::string()) + '\n';
  }
  return out;
}

std::vector<RunRecord> parse_csv(std::string_view text) {
  std::vector<RunRecord> rows;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header '" + std::string(line) + "'");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7)
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                  std::to_string(f.size()));
    RunRecord r;
    r.instance = f[0];
    r.algorithm = f[1];
    if (r.instance.empty() || r.algorithm.empty())
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": empty id");
    const auto result = parse_run_result(f[2]);
    if (!result) throw std::invalid_argument("csv line " + std::to_string(line_no) + ": bad result '" + std::string(f[2]) + "'");
    r.result = *result;
    r.time_ms = parse_number<double>(f[3], line_no, "time_ms");
    if (!(r.time_ms >= 0)) throw std::invalid_argument("csv line " + std::to_string(line_no) + ": negative time");
    r.explored = parse_number<std::uint64_t>(f[4], line_no, "explored");
    r.antichain_peak = parse_number<std::uint64_t>(f[5], line_no, "antichain_peak");
    if (!f[6].empty()) r.witness_len = parse_number<std::size_t>(f[6], line_no, "witness_len");
    rows.push_back(std::move(r));
  }
  if (!header) throw std::invalid_argument("csv: missing header");
  return rows;
}

std::vector<AlgorithmSummary> summarize(const std::vector<RunRecord>& rows,
                                        const std::vector<double>& budgets_ms) {
  std::map<std::string, RunResult> verdict;  // instance → known verdict
  for (const auto& r : rows)
    if (solved(r.result)) verdict.emplace(r.instance, r.result);

  std::map<std::string, std::vector<const RunRecord*>> by_algo;
  for (const auto& r : rows) by_algo[r.algorithm].push_back(&r);

  std::vector<AlgorithmSummary> out;
  for (const auto& [algo, runs] : by_algo) {
    AlgorithmSummary s;
    s.algorithm = algo;
    s.instances = runs.size();
    double total = 0;
    for (const RunRecord* r : runs) {
      if (!solved(r->result)) continue;
      ++s.solved;
      total += r->time_ms;
      s.max_ms = std::max(s.max_ms.value_or(r->time_ms), r->time_ms);
      s.min_ms = std::min(s.min_ms.value_or(r->time_ms), r->time_ms);
    }
    if (s.solved) s.avg_ms = total / static_cast<double>(s.solved);
    for (double b : budgets_ms) {
      BudgetCounts c;
      c.budget_ms = b;
      for (const RunRecord* r : runs) {
        if (solved(r->result) && r->time_ms <= b) continue;
        const auto it = verdict.find(r->instance);
        if (it == verdict.end())
          ++c.unsolved_unknown;
        else if (it->second == RunResult::opaque)
          ++c.unsolved_positive;
        else
          ++c.unsolved_negative;
      }
      s.budgets.push_back(c);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_summary(const std::vector<AlgorithmSummary>& summary) {
  std::ostringstream out;
  char buf[160];
  out << "Instances not solved within budget (positive = opaque, negative = not-opaque)\n";
  std::snprintf(buf, sizeof buf, "%-12s %12s %10s %10s %10s\n", "algorithm", "budget_ms", "positive",
                "negative", "unknown");
  out << buf;
  for (const auto& s : summary)
    for (const auto& c : s.budgets) {
      std::snprintf(buf, sizeof buf, "%-12s %12.0f %10zu %10zu %10zu\n", s.algorithm.c_str(), c.budget_ms,
                    c.unsolved_positive, c.unsolved_negative, c.unsolved_unknown);
      out << buf;
    }
  out << "\nSolve times in ms over solved runs\n";
  std::snprintf(buf, sizeof buf, "%-12s %8s %8s %12s %12s %12s\n", "algorithm", "runs", "solved", "avg",
                "max", "min");
  out << buf;
  auto cell = [](const std::optional<double>& v) {
    char c[32];
    if (v)
      std::snprintf(c, sizeof c, "%.3f", *v);
    else
      std::snprintf(c, sizeof c, "-");
    return std::string(c);
  };
  for (const auto& s : summary) {
    std::snprintf(buf, sizeof buf, "%-12s %8zu %8zu %12s %12s %12s\n", s.algorithm.c_str(), s.instances,
                  s.solved, cell(s.avg_ms).c_str(), cell(s.max_ms).c_str(), cell(s.min_ms).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace ifo
