#pragma once

// n-Queens completion: extends a consistent partial placement to a full
// solution or declares it non-completable.
//
// The search runs in five blocks:
//   1. randSet&randSet from the input until exactly baseLevel2 queens are placed;
//   2. projection of the remaining free rows onto a compact board;
//   3. rand&rand on the compact board until baseLevel3 queens are placed;
//   4. re-projection, ranking of the open rows by free count, dead-branch test;
//   5. the endgame: for every (row, position) seed in ranked order, build the
//      rest of the branch with the minimum-risk and minimum-damage rules,
//      rebuilding up to repeat_bound times when random tie-breaks were used.
// Every restore of a saved level counts as one backtrack; reaching
// tot_sim_bound backtracks ends the search with a negative verdict. Small
// boards (n < 7) are decided exactly by exhaustive search.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "board.hpp"
#include "compact.hpp"
#include "models.hpp"
#include "oracle.hpp"
#include "validator.hpp"

namespace nqc {

struct SolverConfig {
  int repeat_bound = 5;     // rebuilds of the inner cycle per block-5 seed
  int tot_sim_bound = 1000; // backtracks per solve
  std::uint64_t rng_seed = 0;
  int escalate_every = 10;  // every k-th backtrack restarts from the input state

  void check() const {
    if (repeat_bound < 1) throw DomainError("repeat_bound must be >= 1");
    if (tot_sim_bound < 1) throw DomainError("tot_sim_bound must be >= 1");
    if (escalate_every < 1) throw DomainError("escalate_every must be >= 1");
  }
};

struct BaseLevels {
  int level2;
  int level3;

  friend bool operator==(const BaseLevels&, const BaseLevels&) = default;
};

/// Queen-count targets for blocks 1 and 3. Fitted cubics in u = log10(n),
/// rounded half away from zero and clamped into [0, n].
inline BaseLevels base_levels(int n) {
  detail::check_size(n);
  const double u = std::log10(static_cast<double>(n));
  const double u2 = u * u;
  const double u3 = u2 * u;
  double gap2 = 0.0;
  double gap3 = 0.0;
  if (n < 30000) {
    gap2 = 12.749568 * u3 - 46.535838 * u2 + 120.011829 * u - 89.600272;
    gap3 = 9.717958 * u3 - 46.144187 * u2 + 101.296409 * u - 50.669273;
  } else {
    gap2 = -0.886344 * u3 + 56.136743 * u2 + 146.486415 * u + 227.967782;
    gap3 = 14.959815 * u3 - 253.661725 * u2 + 1584.713376 * u - 3060.691342;
  }
  const auto level = [n](double gap) {
    const long long v = static_cast<long long>(n) - std::llround(gap);
    return static_cast<int>(std::clamp<long long>(v, 0, n));
  };
  return {level(gap2), level(gap3)};
}

/// Block where computation starts: 4 for n <= 49 regardless of k; otherwise
/// by comparing k with the two levels.
inline int entry_block(int n, int k, const BaseLevels& levels) {
  if (n <= 49) return 4;
  if (k >= levels.level3) return 4;
  if (k >= levels.level2) return 2;
  return 1;
}

inline CompactBoard block2_compact(const ControlState& state) {
  if (state.complete()) throw ContractViolation("block 2 needs at least one free row");
  return CompactBoard(state, /*track_lines=*/false);
}

struct Block4Prep {
  CompactBoard board;
  std::vector<RowLoad> ranked;  // open rows, ascending free count
  bool dead_branch;             // some open row has no free position
};

inline Block4Prep block4_prepare(const ControlState& state) {
  if (state.complete()) throw ContractViolation("block 4 needs at least one free row");
  CompactBoard board(state);
  std::vector<RowLoad> ranked = board.ranked_rows();
  const bool dead = ranked.front().free == 0;
  return {std::move(board), std::move(ranked), dead};
}

namespace detail {

// Tie rule of the minimum-risk selection: one of the first two, or of the
// first three when more than two tie.
inline std::size_t pick_risk_tie(std::size_t tied, SeededRng& rng) {
  if (tied <= 1) return 0;
  return rng.index(tied == 2 ? 2 : 3);
}

struct Pick {
  int index;
  bool random;
};

// Minimum-risk row on a compact board; open rows are scanned in ascending
// original row order, which is the order ties keep in the ranked list.
inline Pick min_risk_row(const CompactBoard& board, SeededRng& rng) {
  int best = -1;
  int first[3] = {-1, -1, -1};
  std::size_t tied = 0;
  for (int a = 0; a < board.size(); ++a) {
    if (!board.row_open(a)) continue;
    const int f = board.free_in_row(a);
    if (best < 0 || f < best) {
      best = f;
      first[0] = a;
      tied = 1;
    } else if (f == best) {
      if (tied < 3) first[tied] = a;
      ++tied;
    }
  }
  if (best < 0) throw ContractViolation("no open row to select");
  return {first[pick_risk_tie(tied, rng)], tied > 1};
}

inline Pick min_damage_position(const CompactBoard& board, int a, SeededRng& rng) {
  int best = -1;
  int first[2] = {-1, -1};
  int tied = 0;
  board.for_each_free(a, [&](int b) {
    const int d = board.damage(a, b);
    if (best < 0 || d < best) {
      best = d;
      first[0] = b;
      tied = 1;
    } else if (d == best) {
      if (tied < 2) first[tied] = b;
      ++tied;
    }
  });
  if (best < 0) throw ContractViolation("row has no free position");
  if (tied == 1) return {first[0], false};
  return {first[rng.index(2)], true};
}

}  // namespace detail

/// Minimum-risk rule on a ranked list (ascending free count, stable among
/// equal counts). Returns the chosen entry.
inline RowLoad min_risk_select(std::span<const RowLoad> ranked, SeededRng& rng) {
  if (ranked.empty()) throw ContractViolation("min_risk_select on an empty row list");
  std::size_t tied = 1;
  while (tied < ranked.size() && ranked[tied].free == ranked[0].free) ++tied;
  return ranked[detail::pick_risk_tie(tied, rng)];
}

/// Minimum-damage rule: compact column of the free position in row `a` that
/// excludes the fewest free cells elsewhere; ties go to one of the first two.
inline int min_damage_select(const CompactBoard& board, int a, SeededRng& rng) {
  return detail::min_damage_position(board, a, rng).index;
}

struct SolveStats {
  int bt_count = 0;
  int block5_repeats = 0;
  std::chrono::nanoseconds wall_time{0};
  int entry_block = 0;  // 0: decided without the block pipeline
};

enum class Block5Status { complete, exhausted, budget_spent };

struct Block5Result {
  Block5Status status;
  bool used_random;  // some tie was broken at random during the run
};

namespace detail {

// Third cycle: min-risk row, min-damage position until full or blocked.
inline bool endgame_branch(CompactBoard& board, SeededRng& rng, bool& used_random) {
  while (!board.complete()) {
    if (board.blocked_rows() > 0) return false;
    const Pick row = min_risk_row(board, rng);
    const Pick pos = min_damage_position(board, row.index, rng);
    used_random = used_random || row.random || pos.random;
    board.place(row.index, pos.index);
  }
  return true;
}

}  // namespace detail

/// Block 5 on a prepared compact board (no blocked rows). On success `board`
/// holds the full solution. Each failed branch is restored from the entry
/// state and counted in `stats`.
inline Block5Result block5_run(CompactBoard& board, const SolverConfig& config, SeededRng& rng,
                               SolveStats& stats) {
  if (board.complete()) return {Block5Status::complete, false};
  if (board.blocked_rows() > 0) throw ContractViolation("block 5 entered with a blocked row");
  const CompactBoard level4 = board;
  const std::vector<RowLoad> ranked = level4.ranked_rows();
  bool any_random = false;
  for (const RowLoad& seed_row : ranked) {
    for (const int b : level4.free_positions(seed_row.slot)) {
      for (int attempt = 0;; ++attempt) {
        CompactBoard work = level4;
        work.place(seed_row.slot, b);
        bool used_random = false;
        if (detail::endgame_branch(work, rng, used_random)) {
          board = std::move(work);
          return {Block5Status::complete, any_random || used_random};
        }
        any_random = any_random || used_random;
        ++stats.bt_count;
        ++stats.block5_repeats;
        if (stats.bt_count >= config.tot_sim_bound) return {Block5Status::budget_spent, any_random};
        // A branch without random choices rebuilds identically.
        if (!used_random || attempt >= config.repeat_bound) break;
      }
    }
  }
  return {Block5Status::exhausted, any_random};
}

enum class Verdict { completed, negative };

inline const char* to_string(Verdict v) noexcept {
  return v == Verdict::completed ? "completed" : "negative";
}

struct SolveOutcome {
  Verdict verdict;
  std::optional<Composition> solution;
  SolveStats stats;
};

/// The input to solve() has an attacking pair.
class InvalidComposition : public std::invalid_argument {
 public:
  explicit InvalidComposition(ValidationReport report)
      : std::invalid_argument(describe(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    if (!r.first_conflict) return "invalid composition";
    return "invalid composition: row " + std::to_string(r.first_conflict->row) + " conflicts on " +
           to_string(r.first_conflict->kind);
  }

  ValidationReport report_;
};

inline SolveOutcome solve(const Composition& c, const SolverConfig& config) {
  config.check();
  ValidationReport report = validate(c);
  if (!report.valid) throw InvalidComposition(std::move(report));

  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  SolveOutcome out{Verdict::negative, std::nullopt, {}};
  const auto finish = [&](std::optional<Composition> solution) {
    out.verdict = solution ? Verdict::completed : Verdict::negative;
    out.solution = std::move(solution);
    out.stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - started);
    return out;
  };

  const int n = c.size();
  const int k = c.placed();
  if (k == n) return finish(c);
  if (n < 7) return finish(find_completion(c));

  const BaseLevels levels = base_levels(n);
  const int entry = entry_block(n, k, levels);
  out.stats.entry_block = entry;
  const ControlState level1 = ControlState::from(c);
  SeededRng rng(config.rng_seed);

  // Consumes one backtrack; false once the budget is gone.
  const auto backtrack = [&] { return ++out.stats.bt_count < config.tot_sim_bound; };
  // Level to rebuild from after a failure above level 2.
  const auto retreat = [&] {
    if (entry == 4) return 4;
    return out.stats.bt_count % config.escalate_every == 0 ? entry : 3;
  };

  ControlState branch = level1;
  std::optional<CompactBoard> level2;
  std::optional<CompactBoard> level3;
  int block = entry;
  while (true) {
    switch (block) {
      case 1: {
        branch = level1;
        const BranchResult r = run_randset(branch, rng, levels.level2, true);
        if (r.status == BranchStatus::complete) return finish(branch.composition());
        if (r.status == BranchStatus::deadlocked) {
          if (!backtrack()) return finish(std::nullopt);
          continue;
        }
        block = 2;
        break;
      }
      case 2:
        level2.emplace(block2_compact(entry == 2 ? level1 : branch));
        block = 3;
        break;
      case 3: {
        level3.emplace(*level2);
        int steps = 0;
        const BranchStatus s = run_rand_rand(*level3, rng, levels.level3, steps);
        if (s == BranchStatus::complete) return finish(level3->state().composition());
        if (s == BranchStatus::deadlocked) {
          if (!backtrack()) return finish(std::nullopt);
          block = retreat();
          continue;
        }
        block = 4;
        break;
      }
      case 4: {
        const ControlState& at4 = entry == 4 ? level1 : level3->state();
        if (at4.complete()) return finish(at4.composition());
        Block4Prep prep = block4_prepare(at4);
        if (prep.dead_branch) {
          // From the untouched input a blocked row proves there is no completion.
          if (entry == 4) return finish(std::nullopt);
          if (!backtrack()) return finish(std::nullopt);
          block = retreat();
          continue;
        }
        const Block5Result r = block5_run(prep.board, config, rng, out.stats);
        if (r.status == Block5Status::complete) return finish(prep.board.state().composition());
        if (r.status == Block5Status::budget_spent) return finish(std::nullopt);
        if (!backtrack()) return finish(std::nullopt);
        // Rerunning a fully deterministic endgame from the same state is futile.
        if (entry == 4 && !r.used_random) return finish(std::nullopt);
        block = retreat();
        continue;
      }
      default:
        throw ContractViolation("unknown block " + std::to_string(block));
    }
  }
}

}  // namespace nqc
