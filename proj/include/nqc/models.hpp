#pragma once

// Stochastic placement engines and the deterministic sequential baseline.
//
//  randSet&randSet: per pass, permute the free rows and the free columns
//    independently and try the zipped pairs in order.
//  rand&rand: per step, pick a random free row and a random free position
//    inside it.
//  sequential: rows 1..n in order, lowest free column each time.
//
// None of them ever places a queen on an attacked cell.

#include <vector>

#include "board.hpp"
#include "compact.hpp"

namespace nqc {

enum class BranchStatus { complete, deadlocked, target_reached };

inline const char* to_string(BranchStatus s) noexcept {
  switch (s) {
    case BranchStatus::complete:
      return "complete";
    case BranchStatus::deadlocked:
      return "deadlocked";
    case BranchStatus::target_reached:
      return "target_reached";
  }
  return "unknown";
}

struct BranchResult {
  Composition final_composition;
  int placed;
  BranchStatus status;
  int passes;  // randSet passes, or rand&rand placement steps
};

/// Free row and free column indices, both ascending.
struct FreeRowsView {
  std::vector<int> rows;
  std::vector<int> cols;
};

inline FreeRowsView free_rows_view(const ControlState& state) {
  FreeRowsView view;
  view.rows.reserve(static_cast<std::size_t>(state.free_rows()));
  view.cols.reserve(static_cast<std::size_t>(state.free_rows()));
  for (int i = 1; i <= state.size(); ++i) {
    if (!state.row_occupied(i)) view.rows.push_back(i);
    if (!state.col_occupied(i)) view.cols.push_back(i);
  }
  return view;
}

namespace detail {

// One randSet pass over ascending lists; the lists are left untouched so the
// caller can filter them in place for the next pass.
// With a positive `cap` the pass stops as soon as totPos reaches it.
inline int randset_pass_over(ControlState& state, SeededRng& rng, const std::vector<int>& rows,
                             const std::vector<int>& cols, std::vector<int>& row_buf,
                             std::vector<int>& col_buf, int cap = 0) {
  row_buf.assign(rows.begin(), rows.end());
  col_buf.assign(cols.begin(), cols.end());
  rng.permute(row_buf);
  rng.permute(col_buf);
  int placed = 0;
  for (std::size_t t = 0; t < row_buf.size(); ++t) {
    if (state.is_free_unchecked(row_buf[t], col_buf[t])) {
      state.place_unchecked(row_buf[t], col_buf[t]);
      ++placed;
      if (state.placed() == cap) break;
    }
  }
  return placed;
}

}  // namespace detail

/// One randSet&randSet pass. Returns the number of queens placed.
inline int randset_pass(ControlState& state, SeededRng& rng) {
  const FreeRowsView view = free_rows_view(state);
  std::vector<int> rb;
  std::vector<int> cb;
  return detail::randset_pass_over(state, rng, view.rows, view.cols, rb, cb);
}

/// Repeats randSet passes until totPos >= target, the board is full, or a
/// pass places nothing while free rows remain. A pass runs to its end unless
/// `stop_at_target` is set, in which case placement halts at exactly target.
inline BranchResult run_randset(ControlState& state, SeededRng& rng, int target,
                                bool stop_at_target = false) {
  if (target > state.size()) throw ContractViolation("target exceeds board size");
  FreeRowsView view = free_rows_view(state);
  std::vector<int> rb;
  std::vector<int> cb;
  int passes = 0;
  BranchStatus status = BranchStatus::target_reached;
  while (true) {
    if (state.complete()) {
      status = BranchStatus::complete;
      break;
    }
    if (state.placed() >= target) {
      status = BranchStatus::target_reached;
      break;
    }
    ++passes;
    if (detail::randset_pass_over(state, rng, view.rows, view.cols, rb, cb,
                                  stop_at_target ? target : 0) == 0) {
      status = BranchStatus::deadlocked;
      break;
    }
    std::erase_if(view.rows, [&](int i) { return state.row_occupied(i); });
    std::erase_if(view.cols, [&](int j) { return state.col_occupied(j); });
  }
  return {state.composition(), state.placed(), status, passes};
}

/// One rand&rand step on the full board. Returns false when the sampled row
/// has no free position (nothing is placed then).
inline bool rand_rand_step(ControlState& state, SeededRng& rng) {
  if (state.complete()) throw ContractViolation("rand&rand step on a board with no free rows");
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(state.free_rows()));
  for (int i = 1; i <= state.size(); ++i) {
    if (!state.row_occupied(i)) rows.push_back(i);
  }
  const int i = rows[rng.index(rows.size())];
  std::vector<int> positions;
  for (int j = 1; j <= state.size(); ++j) {
    if (state.is_free_unchecked(i, j)) positions.push_back(j);
  }
  if (positions.empty()) return false;
  state.place_unchecked(i, positions[rng.index(positions.size())]);
  return true;
}

/// rand&rand on a compact board until the board holds `target` queens, is
/// full, or some open row runs out of free positions. Returns the status and
/// adds the number of placements to `steps`.
inline BranchStatus run_rand_rand(CompactBoard& board, SeededRng& rng, int target, int& steps) {
  while (true) {
    if (board.complete()) return BranchStatus::complete;
    if (board.state().placed() >= target) return BranchStatus::target_reached;
    if (board.blocked_rows() > 0) return BranchStatus::deadlocked;
    const auto open = board.open_list();
    const int a = open[rng.index(open.size())];
    const int k = static_cast<int>(rng.index(static_cast<std::size_t>(board.free_in_row(a))));
    board.place(a, board.nth_free(a, k));
    ++steps;
  }
}

inline BranchResult run_rand_rand(ControlState& state, SeededRng& rng, int target) {
  if (target > state.size()) throw ContractViolation("target exceeds board size");
  if (state.complete()) return {state.composition(), state.placed(), BranchStatus::complete, 0};
  if (state.placed() >= target) {
    return {state.composition(), state.placed(), BranchStatus::target_reached, 0};
  }
  CompactBoard board(state, /*track_lines=*/false);
  int steps = 0;
  const BranchStatus status = run_rand_rand(board, rng, target, steps);
  state = board.state();
  return {state.composition(), state.placed(), status, steps};
}

struct RowCount {
  int row;
  int free;

  friend bool operator==(const RowCount&, const RowCount&) = default;
};

/// Free-position count of every free row, rows ascending.
inline std::vector<RowCount> free_position_profile(const ControlState& state) {
  std::vector<RowCount> out;
  for (int i = 1; i <= state.size(); ++i) {
    if (state.row_occupied(i)) continue;
    int count = 0;
    for (int j = 1; j <= state.size(); ++j) count += state.is_free_unchecked(i, j) ? 1 : 0;
    out.push_back({i, count});
  }
  return out;
}

struct SequentialTrace {
  int placed = 0;
  bool completed = false;
  Composition final_composition;
  std::vector<std::vector<RowCount>> profiles;  // profiles[s]: after step s + 1
};

/// Greedy rows-in-order baseline. Stops at the first row with no free
/// position. Profiles cost O(n^2) per step; skip them for large boards.
inline SequentialTrace sequential_baseline(int n, bool record_profiles = true) {
  ControlState state(n);
  SequentialTrace trace{0, false, Composition(n), {}};
  for (int i = 1; i <= n; ++i) {
    int chosen = 0;
    for (int j = 1; j <= n; ++j) {
      if (state.is_free_unchecked(i, j)) {
        chosen = j;
        break;
      }
    }
    if (chosen == 0) break;
    state.place_unchecked(i, chosen);
    if (record_profiles) trace.profiles.push_back(free_position_profile(state));
  }
  trace.placed = state.placed();
  trace.completed = state.complete();
  trace.final_composition = state.composition();
  return trace;
}

}  // namespace nqc
