#pragma once

// Projection of the remaining free rows and free columns of an n x n board
// onto an m x m grid, with back-maps to the original indices.
//
// Compact coordinates (a, b) are 0-based offsets into the row and column maps;
// the maps hold 1-based original indices in ascending order. Every placement
// goes through place(), which keeps the grid, the per-row free counts and the
// original control vectors in step.
//
// With line tracking on, the board also keeps, for each column and each
// diagonal line of the original board, the number of free cells it still
// crosses in open rows. The damage of a free cell is the sum over its three
// lines of the cells other than itself, so a damage lookup is O(1) and a
// placement stays O(m).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "board.hpp"

namespace nqc {

/// One open row and how many free positions it still has.
struct RowLoad {
  int row;   // original 1-based row
  int slot;  // compact row index
  int free;

  friend bool operator==(const RowLoad&, const RowLoad&) = default;
};

class CompactBoard {
 public:
  explicit CompactBoard(const ControlState& state, bool track_lines = true)
      : n_(state.size()), tracked_(track_lines), state_(state) {
    for (int i = 1; i <= n_; ++i) {
      if (!state_.row_occupied(i)) rows_.push_back(i);
      if (!state_.col_occupied(i)) cols_.push_back(i);
    }
    m_ = static_cast<int>(rows_.size());
    words_ = (ub(m_) + 63) / 64;
    col_slot_.assign(ub(n_ + 1), -1);
    for (int b = 0; b < m_; ++b) col_slot_[ub(cols_[ub(b)])] = b;

    if (tracked_ && m_ > 0) {
      d1_lo_ = n_ + cols_.front() - rows_.back();
      d2_lo_ = rows_.front() + cols_.front();
      const auto lines = ub(cols_.back() - cols_.front() + rows_.back() - rows_.front() + 1);
      d1_free_.assign(lines, 0);
      d2_free_.assign(lines, 0);
      col_free_.assign(ub(m_), 0);
    }
    grid_.assign(ub(m_) * words_, 0);
    row_free_.assign(ub(m_), 0);
    row_open_.assign(ub(m_), 1);
    open_pos_.resize(ub(m_));
    open_.resize(ub(m_));
    // Rows and columns of the projection are free by construction, so a cell
    // is free iff both of its diagonals are.
    const auto d1 = state_.left_diagonals();
    const auto d2 = state_.right_diagonals();
    for (int a = 0; a < m_; ++a) {
      open_[ub(a)] = a;
      open_pos_[ub(a)] = a;
      const int i = rows_[ub(a)];
      const std::uint8_t* left = d1.data() + (n_ - i);
      const std::uint8_t* right = d2.data() + i;
      std::uint64_t* row = row_words(a);
      for (std::size_t w = 0; w < words_; ++w) {
        const std::size_t end = std::min(ub(m_), (w + 1) * 64);
        std::uint64_t bits = 0;
        for (std::size_t b = w * 64; b < end; ++b) {
          const auto c = ub(cols_[b]);
          bits |= std::uint64_t{(left[c] | right[c]) == 0} << (b % 64);
        }
        row[w] = bits;
        row_free_[ub(a)] += std::popcount(bits);
      }
      if (tracked_) {
        for_each_free(a, [&](int b) {
          ++col_free_[ub(b)];
          ++d1_free_[d1_slot(a, b)];
          ++d2_free_[d2_slot(a, b)];
        });
      }
      if (row_free_[ub(a)] == 0) ++blocked_;
    }
  }

  /// m: number of free rows when the board was projected.
  int size() const noexcept { return m_; }
  int board_size() const noexcept { return n_; }
  bool tracks_lines() const noexcept { return tracked_; }

  int row_origin(int a) const { return rows_.at(ub(a)); }
  int col_origin(int b) const { return cols_.at(ub(b)); }
  std::span<const int> row_map() const noexcept { return rows_; }
  std::span<const int> col_map() const noexcept { return cols_; }

  /// Left-diagonal index of compact cell (a, b) on the original board.
  int left_diag(int a, int b) const { return n_ + col_origin(b) - row_origin(a); }
  /// Right-diagonal index of compact cell (a, b) on the original board.
  int right_diag(int a, int b) const { return row_origin(a) + col_origin(b); }

  bool cell_free(int a, int b) const {
    check(a, b);
    return bit(a, b);
  }

  bool row_open(int a) const { return row_open_.at(ub(a)) != 0; }
  int free_in_row(int a) const { return row_free_.at(ub(a)); }
  int open_rows() const noexcept { return static_cast<int>(open_.size()); }
  /// Open rows without a single free position.
  int blocked_rows() const noexcept { return blocked_; }
  bool complete() const noexcept { return open_.empty(); }

  /// Open compact rows in an order that is deterministic but not sorted.
  std::span<const int> open_list() const noexcept { return open_; }

  /// Free compact columns of row a in ascending order.
  std::vector<int> free_positions(int a) const {
    check(a, 0);
    std::vector<int> out;
    out.reserve(ub(row_free_[ub(a)]));
    for_each_free(a, [&](int b) { out.push_back(b); });
    return out;
  }

  /// b of the k-th (0-based) free cell in row a.
  int nth_free(int a, int k) const {
    check(a, 0);
    const std::uint64_t* row = row_words(a);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = row[w];
      const int count = std::popcount(bits);
      if (k >= count) {
        k -= count;
        continue;
      }
      for (; k > 0; --k) bits &= bits - 1;
      return static_cast<int>(w * 64) + std::countr_zero(bits);
    }
    throw ContractViolation("row has fewer free positions than requested");
  }

  /// Calls f(b) for each free compact column of row a, ascending.
  template <class F>
  void for_each_free(int a, F&& f) const {
    const std::uint64_t* row = row_words(a);
    for (std::size_t w = 0; w < words_; ++w) {
      for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
        f(static_cast<int>(w * 64) + std::countr_zero(bits));
      }
    }
  }

  /// Number of free cells in the other open rows that a queen on (a, b)
  /// would exclude. Zero for cells that are not free.
  int damage(int a, int b) const {
    if (!tracked_) throw ContractViolation("damage needs a board built with line tracking");
    if (!cell_free(a, b)) return 0;
    return col_free_[ub(b)] + d1_free_[d1_slot(a, b)] + d2_free_[d2_slot(a, b)] - 3;
  }

  /// Open rows ascending by free count; equal counts keep ascending row order.
  std::vector<RowLoad> ranked_rows() const {
    std::vector<RowLoad> out;
    out.reserve(open_.size());
    for (int a = 0; a < m_; ++a) {
      if (row_open_[ub(a)]) out.push_back({rows_[ub(a)], a, row_free_[ub(a)]});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RowLoad& x, const RowLoad& y) { return x.free < y.free; });
    return out;
  }

  void place(int a, int b) {
    check(a, b);
    if (!row_open_[ub(a)] || !bit(a, b)) {
      throw ContractViolation("compact cell (" + std::to_string(a) + "," + std::to_string(b) +
                              ") is not free");
    }
    const int i = rows_[ub(a)];
    const int j = cols_[ub(b)];

    if (tracked_) for_each_free(a, [&](int c) { untrack(a, c); });
    std::fill_n(row_words(a), words_, 0);
    row_free_[ub(a)] = 0;
    row_open_[ub(a)] = 0;
    const int pos = open_pos_[ub(a)];
    const int last = open_.back();
    open_[ub(pos)] = last;
    open_pos_[ub(last)] = pos;
    open_.pop_back();

    for (const int other : open_) {
      const int shift = rows_[ub(other)] - i;
      hit(other, b);
      const int up = j + shift;
      if (up >= 1 && up <= n_) hit(other, col_slot_[ub(up)]);
      const int down = j - shift;
      if (down >= 1 && down <= n_) hit(other, col_slot_[ub(down)]);
    }
    state_.place_unchecked(i, j);
  }

  const ControlState& state() const noexcept { return state_; }

  friend bool operator==(const CompactBoard&, const CompactBoard&) = default;

 private:
  static std::size_t ub(int v) noexcept { return static_cast<std::size_t>(v); }

  void check(int a, int b) const {
    if (a < 0 || a >= m_ || b < 0 || b >= m_) throw DomainError("compact cell out of range");
  }

  std::uint64_t* row_words(int a) noexcept { return grid_.data() + ub(a) * words_; }
  const std::uint64_t* row_words(int a) const noexcept { return grid_.data() + ub(a) * words_; }

  bool bit(int a, int b) const noexcept {
    return (row_words(a)[ub(b) / 64] >> (ub(b) % 64)) & 1U;
  }

  std::size_t d1_slot(int a, int b) const noexcept {
    return ub(n_ + cols_[ub(b)] - rows_[ub(a)] - d1_lo_);
  }
  std::size_t d2_slot(int a, int b) const noexcept {
    return ub(rows_[ub(a)] + cols_[ub(b)] - d2_lo_);
  }

  void untrack(int a, int b) noexcept {
    --col_free_[ub(b)];
    --d1_free_[d1_slot(a, b)];
    --d2_free_[d2_slot(a, b)];
  }

  // Excludes (a, b) in an open row other than the one just placed.
  void hit(int a, int b) noexcept {
    if (b < 0) return;
    std::uint64_t& word = row_words(a)[ub(b) / 64];
    const std::uint64_t mask = std::uint64_t{1} << (ub(b) % 64);
    if ((word & mask) == 0) return;
    word &= ~mask;
    if (tracked_) untrack(a, b);
    if (--row_free_[ub(a)] == 0) ++blocked_;
  }

  int n_;
  int m_ = 0;
  std::size_t words_ = 0;
  bool tracked_;
  ControlState state_;
  std::vector<int> rows_;
  std::vector<int> cols_;
  std::vector<int> col_slot_;  // original column -> compact column, -1 if not free
  std::vector<std::uint64_t> grid_;  // row-major bit rows, 1 = free
  std::vector<int> row_free_;
  std::vector<std::uint8_t> row_open_;
  std::vector<int> open_;
  std::vector<int> open_pos_;
  int blocked_ = 0;
  std::vector<int> col_free_;
  std::vector<int> d1_free_;
  std::vector<int> d2_free_;
  int d1_lo_ = 0;
  int d2_lo_ = 0;
};

/// Read-only view of the damage values of a compact board.
class DamageMatrix {
 public:
  explicit DamageMatrix(const CompactBoard& board) : board_(&board) {}

  int size() const noexcept { return board_->size(); }
  int operator()(int a, int b) const { return board_->damage(a, b); }

 private:
  const CompactBoard* board_;
};

}  // namespace nqc
