#pragma once

// Exact exhaustive search for small boards: solution enumeration and ground
// truth completability. Slow by construction; guards keep runs desk-sized.

#include <cstdint>
#include <optional>
#include <vector>

#include "board.hpp"
#include "validator.hpp"

namespace nqc {

/// Instance too large for exhaustive search without `force`.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kOracleMaxBoard = 14;
inline constexpr int kOracleMaxFreeRows = 20;

struct EnumerationResult {
  int n;
  std::uint64_t count = 0;
  std::vector<Composition> solutions;  // filled only when materialized
};

namespace detail {

inline void enumerate_rows(ControlState& state, int row, EnumerationResult& out, bool materialize) {
  const int n = state.size();
  if (row > n) {
    ++out.count;
    if (materialize) out.solutions.push_back(state.composition());
    return;
  }
  for (int j = 1; j <= n; ++j) {
    if (!state.is_free_unchecked(row, j)) continue;
    state.place_unchecked(row, j);
    enumerate_rows(state, row + 1, out, materialize);
    state.remove(row);
  }
}

// Depth-first completion, always branching on the free row with the fewest
// free positions among the free columns.
inline bool complete_search(ControlState& state, std::vector<int>& rows,
                            const std::vector<int>& cols) {
  if (rows.empty()) return true;
  std::size_t best = 0;
  int best_count = -1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int count = 0;
    for (int j : cols) count += state.is_free_unchecked(rows[r], j) ? 1 : 0;
    if (count == 0) return false;
    if (best_count < 0 || count < best_count) {
      best = r;
      best_count = count;
    }
  }
  const int i = rows[best];
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
  for (int j : cols) {
    if (!state.is_free_unchecked(i, j)) continue;
    state.place_unchecked(i, j);
    if (complete_search(state, rows, cols)) return true;
    state.remove(i);
  }
  rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(best), i);
  return false;
}

inline void check_completion_guard(const Composition& c, bool force) {
  const int free_rows = c.size() - c.placed();
  if (!force && c.size() > kOracleMaxBoard && free_rows > kOracleMaxFreeRows) {
    throw OracleRefusal("exhaustive completion refused: n = " + std::to_string(c.size()) +
                        " with " + std::to_string(free_rows) + " free rows");
  }
}

}  // namespace detail

/// Counts (and optionally lists) all n-queens solutions, rows and columns
/// ascending, so the list is canonical.
inline EnumerationResult enumerate_solutions(int n, bool materialize, bool force = false) {
  detail::check_size(n);
  if (n > kOracleMaxBoard && !force) {
    throw OracleRefusal("enumeration refused above n = " + std::to_string(kOracleMaxBoard));
  }
  EnumerationResult out{n, 0, {}};
  ControlState state(n);
  detail::enumerate_rows(state, 1, out, materialize);
  return out;
}

/// A completion of c if one exists. c must be valid.
inline std::optional<Composition> find_completion(const Composition& c, bool force = false) {
  detail::check_completion_guard(c, force);
  if (!validate(c).valid) throw ContractViolation("find_completion needs a valid composition");
  ControlState state = ControlState::from(c);
  std::vector<int> rows;
  std::vector<int> cols;
  for (int i = 1; i <= c.size(); ++i) {
    if (!state.row_occupied(i)) rows.push_back(i);
    if (!state.col_occupied(i)) cols.push_back(i);
  }
  if (!detail::complete_search(state, rows, cols)) return std::nullopt;
  return state.composition();
}

inline bool exact_completable(const Composition& c, bool force = false) {
  return find_completion(c, force).has_value();
}

enum class Label { positive, negative };

inline const char* to_string(Label l) noexcept {
  return l == Label::positive ? "positive" : "negative";
}

struct LabeledComposition {
  Composition composition;
  Label label;
};

inline std::vector<LabeledComposition> label_sample(const std::vector<Composition>& sample,
                                                    bool force = false) {
  std::vector<LabeledComposition> out;
  out.reserve(sample.size());
  for (const Composition& c : sample) {
    out.push_back({c, exact_completable(c, force) ? Label::positive : Label::negative});
  }
  return out;
}

}  // namespace nqc
