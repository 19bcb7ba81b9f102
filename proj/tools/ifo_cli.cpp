#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ifo/bench.hpp"
#include "ifo/families.hpp"
#include "ifo/instance_format.hpp"
#include "ifo/verifier.hpp"

namespace {

constexpr int kExitOpaque = 0;
constexpr int kExitNotOpaque = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct VerifyArgs {
  std::string file;
  std::string algo = "auto";
  double timeout_ms = 300'000;
  std::optional<std::uint64_t> budget;
};

struct GenArgs {
  ifo::FamilySpec spec;
  std::string out;
  std::size_t count = 1;
  std::string out_dir;
};

struct BenchArgs {
  std::string dir;
  std::vector<std::string> algos = {"trellis", "observer", "antichain"};
  double timeout_ms = 300'000;
  std::size_t jobs = 1;
  std::string out;
  std::optional<std::uint64_t> budget;
};

struct ReportArgs {
  std::string csv;
  std::vector<double> budgets = {60'000, 300'000};
};

ifo::Algorithm algorithm_or_throw(const std::string& name) {
  if (auto a = ifo::parse_algorithm(name)) return *a;
  throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
}

int run_verify(const VerifyArgs& args) {
  const ifo::IfoInstance inst = ifo::load_instance(args.file);
  ifo::Budgets budgets;
  if (args.budget) budgets.element_limit = budgets.node_limit = *args.budget;
  const ifo::Algorithm algo = algorithm_or_throw(args.algo);

  ifo::VerifyOptions opts;
  opts.algorithm = algo;
  opts.element_limit = budgets.element_limit;
  opts.node_limit = budgets.node_limit;
  opts.deadline = ifo::Clock::now() + std::chrono::duration_cast<ifo::Clock::duration>(
                                          std::chrono::duration<double, std::milli>(args.timeout_ms));
  const ifo::Verdict v = ifo::verify(inst, opts);

  const bool timed_out = v.result == ifo::Outcome::inconclusive && v.stats.stop == ifo::StopReason::deadline;
  std::cout << "result: " << (timed_out ? "timeout" : ifo::to_string(v.result)) << '\n';
  std::cout << "algorithm: " << v.stats.algorithm << '\n';
  std::cout << "explored: " << v.stats.explored << '\n';
  if (v.stats.macrostates) std::cout << "macrostates: " << v.stats.macrostates << '\n';
  if (v.stats.antichain_peak) std::cout << "antichain_peak: " << v.stats.antichain_peak << '\n';
  if (v.stats.cartesian) std::cout << "cartesian: yes\n";
  std::cout << "time_ms: " << v.stats.wall_ms << '\n';
  if (v.witness)
    std::cout << "witness: " << ifo::format_word(*v.witness, inst.automaton.alphabet().observable_part())
              << '\n';

  switch (v.result) {
    case ifo::Outcome::opaque:
      return kExitOpaque;
    case ifo::Outcome::not_opaque:
      return kExitNotOpaque;
    case ifo::Outcome::inconclusive:
      break;
  }
  return kExitInconclusive;
}

int run_gen(const GenArgs& args) {
  if (args.count > 1 || !args.out_dir.empty()) {
    const std::string dir = args.out_dir.empty() ? "." : args.out_dir;
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < args.count; ++k) {
      ifo::FamilySpec spec = args.spec;
      spec.seed += k;
      const std::string name = spec.family + "-n" + std::to_string(spec.states) + "-s" +
                               std::to_string(spec.seed) + ".ifo";
      ifo::save_instance(ifo::generate_family(spec), (std::filesystem::path(dir) / name).string());
    }
    return 0;
  }
  const ifo::IfoInstance inst = ifo::generate_family(args.spec);
  if (args.out.empty())
    std::cout << ifo::write_instance(inst);
  else
    ifo::save_instance(inst, args.out);
  return 0;
}

int run_bench(const BenchArgs& args) {
  std::vector<ifo::Algorithm> algos;
  for (const auto& a : args.algos) algos.push_back(algorithm_or_throw(a));
  ifo::Budgets budgets;
  if (args.budget) budgets.element_limit = budgets.node_limit = *args.budget;
  const auto rows = ifo::run_suite(args.dir, algos, args.timeout_ms, args.jobs, budgets);
  for (const auto& r : rows)
    if (r.result == ifo::RunResult::error)
      std::cerr << "error: " << r.instance << " (" << r.algorithm << "): " << r.message << '\n';
  const std::string csv = ifo::to_csv(rows);
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
    out << csv;
  }
  return 0;
}

int run_report(const ReportArgs& args) {
  std::ifstream in(args.csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + args.csv + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::cout << ifo::format_summary(ifo::summarize(ifo::parse_csv(buf.str()), args.budgets));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Initial-and-final-state opacity verifier"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Verify one instance file");
  v->add_option("file", verify.file, "Instance file")->required()->check(CLI::ExistingFile);
  v->add_option("--algo", verify.algo, "trellis | observer | antichain | auto")->capture_default_str();
  v->add_option("--timeout-ms", verify.timeout_ms, "Wall-clock limit")->capture_default_str()
      ->check(CLI::PositiveNumber);
  v->add_option("--budget", verify.budget, "Element / node limit");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate instances");
  g->add_option("--family", gen.spec.family,
                "b2 | bn | random-two-event | upper-triangular | partial-transformations | random")
      ->required();
  g->add_option("--n", gen.spec.states, "State count")->capture_default_str();
  g->add_option("--seed", gen.spec.seed, "Seed")->capture_default_str();
  g->add_option("--f", gen.spec.ones, "Ones per event (random-two-event)");
  g->add_option("--events", gen.spec.events, "Event count (random)")->capture_default_str();
  g->add_option("--unobservable", gen.spec.unobservable, "Unobservable events (random)")
      ->capture_default_str();
  g->add_option("--density", gen.spec.density, "Transition density (random)")->capture_default_str();
  g->add_option("--secret-pairs", gen.spec.secret_pairs, "Secret pairs (random)")->capture_default_str();
  g->add_option("--nonsecret-pairs", gen.spec.nonsecret_pairs, "Nonsecret pairs (random)")
      ->capture_default_str();
  g->add_flag("--cartesian", gen.spec.cartesian_nonsecret, "Draw Q_NS as I x F (random)");
  g->add_option("--out", gen.out, "Output file (default stdout)");
  g->add_option("--count", gen.count, "Instances with consecutive seeds")->check(CLI::PositiveNumber);
  g->add_option("--out-dir", gen.out_dir, "Directory for --count output");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run every algorithm on a directory of instances");
  b->add_option("--dir", bench.dir, "Directory of *.ifo files")->required()->check(CLI::ExistingDirectory);
  b->add_option("--algos", bench.algos, "Comma-separated algorithms")->delimiter(',')->capture_default_str();
  b->add_option("--timeout-ms", bench.timeout_ms, "Per-run limit")->capture_default_str()
      ->check(CLI::PositiveNumber);
  b->add_option("--jobs", bench.jobs, "Concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "CSV output (default stdout)");
  b->add_option("--budget", bench.budget, "Element / node limit");

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Summarize a bench CSV");
  r->add_option("--csv", report.csv, "Bench CSV")->required()->check(CLI::ExistingFile);
  r->add_option("--budgets", report.budgets, "Comma-separated budgets in ms")->delimiter(',')
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*v) return run_verify(verify);
    if (*g) return run_gen(gen);
    if (*b) return run_bench(bench);
    if (*r) return run_report(report);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ifo::ParseError& e) {
    std::cerr << verify.file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
