// nqc: command-line front end for the completion solver, the placement
// models, the exact oracle and the benchmark harness.
//
// Exit codes: 0 success, 1 invalid composition or failed run, 2 malformed
// input or usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nqc/nqc.hpp"
#include "nqc/serialize.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitMalformed = 2;

struct CliError {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitMalformed, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitMalformed, "cannot write " + path};
  return out;
}

std::vector<nqc::Composition> load_all(const std::string& path) {
  try {
    return nqc::read_compositions(slurp(path));
  } catch (const nqc::ParseError& e) {
    throw CliError{kExitMalformed, path + ": " + e.what()};
  }
}

void write_all(std::ostream& os, const std::vector<nqc::Composition>& cs) {
  for (const auto& c : cs) os << nqc::write_composition(c);
}

std::string describe(const nqc::ValidationReport& r) {
  if (r.valid) return "valid totPos=" + std::to_string(r.tot_pos);
  const auto& c = *r.first_conflict;
  return "invalid row=" + std::to_string(c.row) + " column=" + std::to_string(c.column) +
         " kind=" + nqc::to_string(c.kind) + " totPos=" + std::to_string(r.tot_pos);
}

// One "index,label" line per composition, after a header.
std::vector<bool> read_labels(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  if (line != "index,label") throw CliError{kExitMalformed, path + ": expected header index,label"};
  std::vector<bool> out;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const std::string label = comma == std::string::npos ? "" : line.substr(comma + 1);
    if (label != "positive" && label != "negative") {
      throw CliError{kExitMalformed, path + ": line " + std::to_string(number) + ": bad label"};
    }
    out.push_back(label == "positive");
  }
  return out;
}

struct SolverFlags {
  std::uint64_t seed = 0;
  int tot_sim_bound = nqc::SolverConfig{}.tot_sim_bound;
  int repeat_bound = nqc::SolverConfig{}.repeat_bound;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--tot-sim-bound", tot_sim_bound, "backtrack budget per solve")
        ->check(CLI::PositiveNumber);
    app->add_option("--repeat-bound", repeat_bound, "endgame rebuilds per seed placement")
        ->check(CLI::PositiveNumber);
  }

  nqc::SolverConfig config() const {
    nqc::SolverConfig c;
    c.rng_seed = seed;
    c.tot_sim_bound = tot_sim_bound;
    c.repeat_bound = repeat_bound;
    return c;
  }
};

int cmd_verify(const std::string& path) {
  bool all_valid = true;
  for (const auto& c : load_all(path)) {
    const auto r = nqc::validate(c);
    all_valid = all_valid && r.valid;
    std::cout << "n=" << c.size() << " k=" << c.placed() << ' ' << describe(r) << '\n';
  }
  return all_valid ? 0 : kExitInvalid;
}

int cmd_solve(const std::string& path, const SolverFlags& flags, bool json) {
  nqc::Composition c(1);
  try {
    c = nqc::read_composition(slurp(path));
  } catch (const nqc::ParseError& e) {
    throw CliError{kExitMalformed, path + ": " + e.what()};
  }
  try {
    const auto out = nqc::solve(c, flags.config());
    if (json) {
      std::cout << nqc::to_json(out).dump() << '\n';
    } else if (out.solution) {
      std::cout << nqc::write_composition(*out.solution);
    } else {
      std::cout << "NEGATIVE\n";
    }
  } catch (const nqc::InvalidComposition& e) {
    throw CliError{kExitInvalid, e.what()};
  }
  return 0;
}

int cmd_bench(const std::string& comp_path, std::uint64_t seed, const SolverFlags& flags,
              unsigned workers, const std::string& report_path, const std::string& trials_path,
              const std::string& labels_path, const std::string& hist_path, int bins,
              const std::string& groups_path) {
  const auto comps = load_all(comp_path);
  nqc::BenchOptions options;
  options.master_seed = seed;
  options.solver = flags.config();
  options.workers = workers;
  if (!labels_path.empty()) options.positive = read_labels(labels_path);
  nqc::BenchRun run;
  try {
    run = nqc::run_bench(comps, options);
  } catch (const nqc::InvalidComposition& e) {
    throw CliError{kExitInvalid, e.what()};
  }
  if (!report_path.empty()) open_out(report_path) << nqc::to_json(run.report).dump(2) << '\n';
  if (!trials_path.empty()) {
    auto out = open_out(trials_path);
    nqc::write_trials(out, run.trials);
  }
  if (!hist_path.empty()) {
    std::vector<double> times;
    for (const auto& t : run.trials) times.push_back(static_cast<double>(t.wall_time.count()) * 1e-9);
    auto out = open_out(hist_path);
    nqc::emit_histogram(out, times, bins);
  }
  if (!groups_path.empty()) {
    auto out = open_out(groups_path);
    nqc::emit_bt_groups(out, nqc::bt_groups(run.trials));
  }
  std::cout << nqc::to_json(run.report).dump() << '\n';
  return run.report.fn_count == 0 ? 0 : kExitInvalid;
}

int cmd_models(const std::string& model_name, int n, int trials, std::uint64_t seed,
               const std::string& out_path, bool single_pass, const std::string& trace_path) {
  const auto model = nqc::parse_model(model_name);
  if (!model) throw CliError{kExitMalformed, "unknown model " + model_name};
  auto out = open_out(out_path);
  out << "seed,model,n,finalLength,status,passCount\n";
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    const auto r = nqc::model_trial(*model, n, s, single_pass);
    out << s << ',' << nqc::to_string(*model) << ',' << n << ',' << r.placed << ','
        << nqc::to_string(r.status) << ',' << r.passes << '\n';
  }
  if (!trace_path.empty()) {
    if (*model != nqc::ModelKind::sequential) {
      throw CliError{kExitMalformed, "--trace is only recorded for the sequential model"};
    }
    const auto trace = nqc::sequential_baseline(n);
    auto tr = open_out(trace_path);
    tr << "step,row,free\n";
    for (std::size_t s = 0; s < trace.profiles.size(); ++s) {
      for (const auto& rc : trace.profiles[s]) tr << s + 1 << ',' << rc.row << ',' << rc.free << '\n';
    }
  }
  return 0;
}

int cmd_fit(const std::vector<std::string>& reports) {
  std::vector<nqc::ScalingPoint> points;
  for (const auto& path : reports) {
    nqc::BenchReport r;
    try {
      r = nqc::bench_report_from_json(nlohmann::json::parse(slurp(path)));
    } catch (const nlohmann::json::exception& e) {
      throw CliError{kExitMalformed, path + ": " + e.what()};
    }
    points.push_back({static_cast<double>(r.n), r.t_mean});
  }
  const auto fit = nqc::scaling_fit(points);
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["correlation"] = fit.correlation;
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-Queens completion solver and experiment harness"};
  app.require_subcommand(1);

  std::string file;
  auto* verify = app.add_subcommand("verify", "validate compositions");
  verify->add_option("file", file)->required();

  SolverFlags solve_flags;
  bool json = false;
  auto* solve = app.add_subcommand("solve", "complete one composition");
  solve->add_option("file", file)->required();
  solve_flags.attach(solve);
  solve->add_flag("--json", json, "print the outcome as JSON");

  int n = 0;
  int count = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "generate full solutions");
  gen->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", count)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path)->required();

  std::string solutions_path;
  int per = 0;
  auto* sample = app.add_subcommand("sample", "derive compositions from solutions");
  sample->add_option("--solutions", solutions_path)->required();
  sample->add_option("--per", per)->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_path)->required();

  SolverFlags bench_flags;
  std::string comp_path, report_path, trials_path, labels_path, hist_path, groups_path;
  unsigned workers = 0;
  int bins = 20;
  auto* bench = app.add_subcommand("bench", "timed solve campaign");
  bench->add_option("--compositions", comp_path)->required();
  bench_flags.attach(bench);
  bench->add_option("--out-report", report_path);
  bench->add_option("--out-trials", trials_path);
  bench->add_option("--labels", labels_path, "index,label CSV from 'oracle label'");
  bench->add_option("--workers", workers, "0: one per hardware thread");
  bench->add_option("--out-histogram", hist_path, "completion time histogram CSV");
  bench->add_option("--bins", bins)->check(CLI::PositiveNumber);
  bench->add_option("--out-bt-groups", groups_path, "mean time per backtrack count CSV");

  std::string model_name, trace_path;
  int trials = 1;
  bool single_pass = false;
  auto* models = app.add_subcommand("models", "standalone placement model runs");
  models->add_option("--model", model_name)->required()->check(
      CLI::IsMember({"randset", "randrand", "sequential"}));
  models->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  models->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  models->add_option("--seed", seed);
  models->add_option("--out", out_path)->required();
  models->add_flag("--single-pass", single_pass, "stop randset after its first pass");
  models->add_option("--trace", trace_path, "sequential free-position profiles CSV");

  bool force = false;
  auto* oracle = app.add_subcommand("oracle", "exact search on small boards");
  oracle->require_subcommand(1);
  auto* o_count = oracle->add_subcommand("count", "count full solutions");
  o_count->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  o_count->add_flag("--force", force);
  auto* o_enum = oracle->add_subcommand("enumerate", "list full solutions");
  o_enum->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  o_enum->add_option("--out", out_path)->required();
  o_enum->add_flag("--force", force);
  auto* o_label = oracle->add_subcommand("label", "label compositions positive or negative");
  o_label->add_option("--compositions", comp_path)->required();
  o_label->add_option("--out", out_path)->required();
  o_label->add_flag("--force", force);

  std::vector<std::string> reports;
  auto* fit = app.add_subcommand("fit", "log-log scaling fit over bench reports");
  fit->add_option("reports", reports)->required()->expected(2, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (*verify) return cmd_verify(file);
    if (*solve) return cmd_solve(file, solve_flags, json);
    if (*gen) {
      auto out = open_out(out_path);
      write_all(out, nqc::gen_solutions(n, count, seed));
      return 0;
    }
    if (*sample) {
      const auto sols = load_all(solutions_path);
      auto out = open_out(out_path);
      write_all(out, nqc::sample_compositions(sols, per, seed));
      return 0;
    }
    if (*bench) {
      return cmd_bench(comp_path, bench_flags.seed, bench_flags, workers, report_path, trials_path,
                       labels_path, hist_path, bins, groups_path);
    }
    if (*models) return cmd_models(model_name, n, trials, seed, out_path, single_pass, trace_path);
    if (*o_count) {
      std::cout << nqc::enumerate_solutions(n, false, force).count << '\n';
      return 0;
    }
    if (*o_enum) {
      auto out = open_out(out_path);
      write_all(out, nqc::enumerate_solutions(n, true, force).solutions);
      return 0;
    }
    if (*o_label) {
      const auto labeled = nqc::label_sample(load_all(comp_path), force);
      auto out = open_out(out_path);
      out << "index,label\n";
      for (std::size_t t = 0; t < labeled.size(); ++t) {
        out << t << ',' << nqc::to_string(labeled[t].label) << '\n';
      }
      return 0;
    }
    if (*fit) return cmd_fit(reports);
  } catch (const CliError& e) {
    std::cerr << "nqc: " << e.message << '\n';
    return e.code;
  } catch (const nqc::MalformedInput& e) {
    std::cerr << "nqc: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const nqc::ContractViolation& e) {
    std::cerr << "nqc: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "nqc: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
