#pragma once

// Experiment harness: solution generation, deletion sampling, timed solve
// campaigns with their aggregate statistics, histograms and the log-log
// scaling fit. Per-trial seeds are master + trial index, so verdicts and
// backtrack counts do not depend on how trials are scheduled.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "board.hpp"
#include "models.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "validator.hpp"

namespace nqc {

/// The solver could not produce a solution where one is required.
class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kGenAttempts = 16;

/// `count` full solutions of the n x n board, each from a solve of the empty
/// board with seed + index (plus count * attempt on a failed attempt).
/// Duplicates are kept.
inline std::vector<Composition> gen_solutions(int n, int count, std::uint64_t seed,
                                              SolverConfig base = {}) {
  detail::check_size(n);
  if (count < 0) throw DomainError("count must be >= 0");
  std::vector<Composition> out;
  out.reserve(static_cast<std::size_t>(count));
  const Composition empty(n);
  for (int index = 0; index < count; ++index) {
    std::optional<Composition> found;
    for (int attempt = 0; attempt < kGenAttempts && !found; ++attempt) {
      base.rng_seed = seed + static_cast<std::uint64_t>(index) +
                      static_cast<std::uint64_t>(attempt) * static_cast<std::uint64_t>(count);
      found = solve(empty, base).solution;
    }
    if (!found) {
      throw GenerationFailure("no solution for the empty " + std::to_string(n) + "x" +
                              std::to_string(n) + " board after " + std::to_string(kGenAttempts) +
                              " attempts (solution " + std::to_string(index) + ")");
    }
    out.push_back(std::move(*found));
  }
  return out;
}

/// Blanks n - k rows of `solution`, chosen uniformly, with k uniform in [1, n-1].
inline Composition derive_composition(const Composition& solution, SeededRng& rng) {
  const int n = solution.size();
  if (n < 2) throw DomainError("deletion sampling needs n >= 2");
  const int k = rng.uniform(n - 1);
  std::vector<int> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = i + 1;
  rng.permute(rows);
  Composition out = solution;
  for (int t = 0; t < n - k; ++t) out.set(rows[static_cast<std::size_t>(t)], 0);
  return out;
}

/// `per_solution` derived compositions for every source, the source at index s
/// drawing from its own stream seeded with seed + s.
inline std::vector<Composition> sample_compositions(std::span<const Composition> solutions,
                                                    int per_solution, std::uint64_t seed) {
  if (per_solution < 0) throw DomainError("per_solution must be >= 0");
  std::vector<Composition> out;
  out.reserve(solutions.size() * static_cast<std::size_t>(per_solution));
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    const ValidationReport report = validate(solutions[s]);
    if (!report.valid || !solutions[s].full()) {
      throw ContractViolation("source " + std::to_string(s + 1) + " is not a full solution");
    }
    SeededRng rng(seed + s);
    for (int p = 0; p < per_solution; ++p) out.push_back(derive_composition(solutions[s], rng));
  }
  return out;
}

struct TrialRecord {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  int k = 0;
  Verdict verdict = Verdict::negative;
  int bt_count = 0;
  int block5_repeats = 0;
  std::chrono::nanoseconds wall_time{0};

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct BenchReport {
  int n = 0;
  std::size_t sample_size = 0;
  double t_mean = 0.0;  // seconds
  double t90_mean = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t fn_count = 0;
  double t_row = 0.0;  // microseconds per row
  std::map<int, std::size_t> bt_histogram;
  double no_bt_share = 0.0;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Number of largest times dropped for t90Mean: ceil(m / 10), but never all.
inline std::size_t t90_drop(std::size_t m) noexcept {
  if (m == 0) return 0;
  return std::min((m + 9) / 10, m - 1);
}

/// Folds trial records into a report. `positive[t]` says whether trial t is
/// known to be completable; an empty vector means all of them are.
inline BenchReport aggregate(int n, std::span<const TrialRecord> trials,
                             const std::vector<bool>& positive = {}) {
  if (!positive.empty() && positive.size() != trials.size()) {
    throw ContractViolation("one positive flag per trial expected");
  }
  BenchReport r;
  r.n = n;
  r.sample_size = trials.size();
  if (trials.empty()) return r;

  std::vector<std::int64_t> ns;
  ns.reserve(trials.size());
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const TrialRecord& tr = trials[t];
    ns.push_back(tr.wall_time.count());
    ++r.bt_histogram[tr.bt_count];
    const bool known_positive = positive.empty() || positive[t];
    if (known_positive && tr.verdict == Verdict::negative) ++r.fn_count;
  }
  std::sort(ns.begin(), ns.end());
  // Sums in integer nanoseconds, so the result does not depend on trial order.
  const auto mean_s = [](std::span<const std::int64_t> v) {
    std::int64_t sum = 0;
    for (const auto x : v) sum += x;
    return static_cast<double>(sum) / static_cast<double>(v.size()) * 1e-9;
  };
  r.t_mean = mean_s(ns);
  r.t90_mean = mean_s(std::span(ns).first(ns.size() - t90_drop(ns.size())));
  r.t_min = static_cast<double>(ns.front()) * 1e-9;
  r.t_max = static_cast<double>(ns.back()) * 1e-9;
  r.t_row = r.t_mean * 1e6 / n;
  const auto zero = r.bt_histogram.find(0);
  r.no_bt_share = zero == r.bt_histogram.end()
                      ? 0.0
                      : static_cast<double>(zero->second) / static_cast<double>(trials.size());
  return r;
}

struct BenchOptions {
  std::uint64_t master_seed = 0;
  SolverConfig solver{};
  unsigned workers = 0;           // 0: one per hardware thread
  std::vector<bool> positive;     // empty: every input is positive
};

struct BenchRun {
  BenchReport report;
  std::vector<TrialRecord> trials;  // in input order
};

/// Solves every composition once. All inputs are validated before any solve
/// starts; the first invalid one aborts the run.
inline BenchRun run_bench(std::span<const Composition> compositions, const BenchOptions& options) {
  options.solver.check();
  if (!options.positive.empty() && options.positive.size() != compositions.size()) {
    throw ContractViolation("one positive flag per composition expected");
  }
  if (compositions.empty()) throw DomainError("bench needs at least one composition");
  const int n = compositions.front().size();
  for (std::size_t t = 0; t < compositions.size(); ++t) {
    if (compositions[t].size() != n) {
      throw ContractViolation("composition " + std::to_string(t + 1) + " has n = " +
                              std::to_string(compositions[t].size()) + ", expected " +
                              std::to_string(n));
    }
    ValidationReport report = validate(compositions[t]);
    if (!report.valid) throw InvalidComposition(std::move(report));
  }

  std::vector<TrialRecord> trials(compositions.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t = next++; t < compositions.size(); t = next++) {
      SolverConfig config = options.solver;
      config.rng_seed = options.master_seed + t;
      const SolveOutcome out = solve(compositions[t], config);
      trials[t] = {t,
                   config.rng_seed,
                   compositions[t].placed(),
                   out.verdict,
                   out.stats.bt_count,
                   out.stats.block5_repeats,
                   out.stats.wall_time};
    }
  };
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1,
                                 static_cast<unsigned>(std::min<std::size_t>(compositions.size(), 256)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  BenchReport report = aggregate(n, trials, options.positive);
  return {std::move(report), std::move(trials)};
}

namespace detail {

template <class T>
std::string number(T value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline std::string fixed(double value, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

// Nanoseconds as microseconds with three decimals, exact.
inline std::string micros(std::chrono::nanoseconds d) {
  const std::int64_t ns = d.count();
  std::string frac = std::to_string(ns % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return std::to_string(ns / 1000) + "." + frac;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

template <class T>
T parse_field(std::string_view field, int line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError("bad CSV field '" + std::string(field) + "'", line, 0);
  }
  return value;
}

inline std::chrono::nanoseconds parse_micros(std::string_view field, int line) {
  const std::size_t dot = field.find('.');
  const auto whole = parse_field<std::int64_t>(field.substr(0, dot), line);
  std::int64_t frac = 0;
  if (dot != std::string_view::npos) {
    std::string digits(field.substr(dot + 1));
    if (digits.empty() || digits.size() > 3) {
      throw ParseError("wallTimeMicros needs 1 to 3 decimals", line, 0);
    }
    digits.append(3 - digits.size(), '0');
    frac = parse_field<std::int64_t>(digits, line);
  }
  return std::chrono::nanoseconds(whole * 1000 + frac);
}

}  // namespace detail

inline constexpr std::string_view kTrialHeader =
    "trialIndex,seed,k,verdict,btCount,block5Repeats,wallTimeMicros";

inline void write_trials(std::ostream& os, std::span<const TrialRecord> trials) {
  os << kTrialHeader << '\n';
  for (const TrialRecord& t : trials) {
    os << t.trial_index << ',' << t.seed << ',' << t.k << ',' << to_string(t.verdict) << ','
       << t.bt_count << ',' << t.block5_repeats << ',' << detail::micros(t.wall_time) << '\n';
  }
}

inline std::vector<TrialRecord> read_trials(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTrialHeader) {
    throw ParseError("trial CSV must start with the header line", 1, 1);
  }
  std::vector<TrialRecord> out;
  int number = 1;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 7) throw ParseError("expected 7 CSV fields", number, 1);
    TrialRecord t;
    t.trial_index = detail::parse_field<std::size_t>(f[0], number);
    t.seed = detail::parse_field<std::uint64_t>(f[1], number);
    t.k = detail::parse_field<int>(f[2], number);
    if (f[3] == "completed") {
      t.verdict = Verdict::completed;
    } else if (f[3] == "negative") {
      t.verdict = Verdict::negative;
    } else {
      throw ParseError("unknown verdict '" + std::string(f[3]) + "'", number, 1);
    }
    t.bt_count = detail::parse_field<int>(f[4], number);
    t.block5_repeats = detail::parse_field<int>(f[5], number);
    t.wall_time = detail::parse_micros(f[6], number);
    out.push_back(t);
  }
  return out;
}

struct HistogramBin {
  double start;
  double end;
  std::size_t frequency;
};

/// Equal-width bins over [min, max]; the last bin is closed on the right.
inline std::vector<HistogramBin> histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw DomainError("bin count must be >= 1");
  if (values.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)] = {lo + width * b, b + 1 == bins ? hi : lo + width * (b + 1), 0};
  }
  for (const double v : values) {
    int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
    b = std::clamp(b, 0, bins - 1);
    ++out[static_cast<std::size_t>(b)].frequency;
  }
  return out;
}

inline void emit_histogram(std::ostream& os, std::span<const double> values, int bins) {
  os << "binStart,binEnd,frequency\n";
  for (const HistogramBin& b : histogram(values, bins)) {
    os << detail::number(b.start) << ',' << detail::number(b.end) << ',' << b.frequency << '\n';
  }
}

struct BtGroup {
  int bt_count;  // the last group collects every count >= this one
  std::size_t size;
  double mean_time;  // seconds
};

/// Trials grouped by backtrack count, the last group open-ended; empty groups
/// are left out.
inline std::vector<BtGroup> bt_groups(std::span<const TrialRecord> trials, int groups = 6) {
  if (groups < 1) throw DomainError("group count must be >= 1");
  std::vector<std::int64_t> sum(static_cast<std::size_t>(groups), 0);
  std::vector<std::size_t> size(static_cast<std::size_t>(groups), 0);
  for (const TrialRecord& t : trials) {
    const auto g = static_cast<std::size_t>(std::min(t.bt_count, groups - 1));
    sum[g] += t.wall_time.count();
    ++size[g];
  }
  std::vector<BtGroup> out;
  for (int g = 0; g < groups; ++g) {
    const auto s = static_cast<std::size_t>(g);
    if (size[s] == 0) continue;
    out.push_back({g, size[s], static_cast<double>(sum[s]) / static_cast<double>(size[s]) * 1e-9});
  }
  return out;
}

inline void emit_bt_groups(std::ostream& os, std::span<const BtGroup> groups) {
  os << "btCount,size,meanTime\n";
  for (const BtGroup& g : groups) {
    os << g.bt_count << ',' << g.size << ',' << detail::number(g.mean_time) << '\n';
  }
}

struct ScalingFit {
  double slope;
  double intercept;
  double correlation;
};

struct ScalingPoint {
  double n;
  double t_mean;  // seconds
};

/// Least squares of log10(1000 t) on log10(n).
inline ScalingFit scaling_fit(std::span<const ScalingPoint> points) {
  if (points.size() < 2) throw DomainError("scaling fit needs at least two points");
  double sx = 0, sy = 0;
  for (const ScalingPoint& p : points) {
    if (p.n <= 0 || p.t_mean <= 0) throw DomainError("scaling fit needs positive n and times");
    sx += std::log10(p.n);
    sy += std::log10(1000.0 * p.t_mean);
  }
  const double count = static_cast<double>(points.size());
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0, syy = 0, sxy = 0;
  for (const ScalingPoint& p : points) {
    const double dx = std::log10(p.n) - mx;
    const double dy = std::log10(1000.0 * p.t_mean) - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw DomainError("scaling fit needs at least two distinct n");
  const double slope = sxy / sxx;
  const double corr = syy == 0.0 ? 1.0 : sxy / std::sqrt(sxx * syy);
  return {slope, my - slope * mx, corr};
}

enum class ModelKind { randset, randrand, sequential };

inline const char* to_string(ModelKind m) noexcept {
  switch (m) {
    case ModelKind::randset:
      return "randset";
    case ModelKind::randrand:
      return "randrand";
    case ModelKind::sequential:
      return "sequential";
  }
  return "unknown";
}

inline std::optional<ModelKind> parse_model(std::string_view name) {
  if (name == "randset") return ModelKind::randset;
  if (name == "randrand") return ModelKind::randrand;
  if (name == "sequential") return ModelKind::sequential;
  return std::nullopt;
}

/// One standalone run of a placement model on the empty board, to
/// termination. `single_pass` stops randSet&randSet after its first pass.
inline BranchResult model_trial(ModelKind model, int n, std::uint64_t seed,
                                bool single_pass = false) {
  ControlState state(n);
  SeededRng rng(seed);
  switch (model) {
    case ModelKind::randset: {
      if (!single_pass) return run_randset(state, rng, n);
      randset_pass(state, rng);
      const BranchStatus s = state.complete() ? BranchStatus::complete : BranchStatus::target_reached;
      return {state.composition(), state.placed(), s, 1};
    }
    case ModelKind::randrand:
      return run_rand_rand(state, rng, n);
    case ModelKind::sequential: {
      SequentialTrace trace = sequential_baseline(n, false);
      const BranchStatus s = trace.completed ? BranchStatus::complete : BranchStatus::deadlocked;
      return {std::move(trace.final_composition), trace.placed, s, trace.placed};
    }
  }
  throw ContractViolation("unknown model");
}

}  // namespace nqc
