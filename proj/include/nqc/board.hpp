#pragma once

// Board representation shared by every other module: the composition array,
// the diagonal/column/row control vectors, and the seeded random stream.
//
// All public indices are 1-based (row i, column j in 1..n). Storage is sized so
// that the diagonal projections r = n + j - i and t = i + j index the control
// vectors directly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nqc {

/// Index or size outside the board.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller broke an operation's precondition (placing on an attacked cell,
/// stepping a model with no free rows, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Composition data that is not even well-formed (entry outside [0, n]).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void check_size(int n) {
  if (n < 1) throw DomainError("board size must be >= 1, got " + std::to_string(n));
}

inline void check_cell(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw DomainError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                      ") outside " + std::to_string(n) + "x" + std::to_string(n) + " board");
  }
}

}  // namespace detail

/// Left-diagonal projection of cell (i, j): n + j - i, in [1, 2n-1].
inline int left_diag_index(int n, int i, int j) {
  detail::check_size(n);
  detail::check_cell(n, i, j);
  return n + j - i;
}

/// Right-diagonal projection of cell (i, j): i + j, in [2, 2n].
inline int right_diag_index(int n, int i, int j) {
  detail::check_size(n);
  detail::check_cell(n, i, j);
  return i + j;
}

/// A partial placement: q[i] is the column of the queen in row i, or 0.
class Composition {
 public:
  explicit Composition(int n) : q_((detail::check_size(n), static_cast<std::size_t>(n)), 0) {}

  /// Takes the columns for rows 1..n in order. Entries must lie in [0, n].
  Composition(int n, std::vector<int> columns) : q_(std::move(columns)) {
    detail::check_size(n);
    if (q_.size() != static_cast<std::size_t>(n)) {
      throw MalformedInput("composition of size " + std::to_string(n) + " needs " +
                           std::to_string(n) + " entries, got " + std::to_string(q_.size()));
    }
    for (std::size_t r = 0; r < q_.size(); ++r) {
      if (q_[r] < 0 || q_[r] > n) {
        throw MalformedInput("row " + std::to_string(r + 1) + ": entry " + std::to_string(q_[r]) +
                             " outside [0, " + std::to_string(n) + "]");
      }
    }
  }

  int size() const noexcept { return static_cast<int>(q_.size()); }

  /// Column of the queen in row i (1-based), 0 for an empty row.
  int operator[](int i) const { return q_.at(static_cast<std::size_t>(i - 1)); }

  void set(int i, int column) {
    detail::check_cell(size(), i, column == 0 ? 1 : column);
    q_[static_cast<std::size_t>(i - 1)] = column;
  }

  /// Number of placed queens (k).
  int placed() const noexcept {
    return static_cast<int>(std::count_if(q_.begin(), q_.end(), [](int c) { return c != 0; }));
  }

  bool full() const noexcept { return placed() == size(); }

  /// Row-ordered columns; element r holds row r+1.
  std::span<const int> columns() const noexcept { return q_; }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> q_;
};

/// Occupancy of the two diagonal control vectors, the columns and the rows,
/// plus the count of queens placed. Single-writer mutable state.
class ControlState {
 public:
  explicit ControlState(int n)
      : n_((detail::check_size(n), n)),
        d1_(static_cast<std::size_t>(2 * n + 1), 0),
        d2_(static_cast<std::size_t>(2 * n + 1), 0),
        col_(static_cast<std::size_t>(n + 1), 0),
        row_(static_cast<std::size_t>(n + 1), 0) {}

  /// Places every queen of c in row order. Throws ContractViolation if c
  /// contains an attacking pair; use validate() to diagnose instead.
  static ControlState from(const Composition& c) {
    ControlState s(c.size());
    for (int i = 1; i <= c.size(); ++i) {
      if (c[i] != 0) s.place(i, c[i]);
    }
    return s;
  }

  int size() const noexcept { return n_; }
  int placed() const noexcept { return tot_pos_; }
  int free_rows() const noexcept { return n_ - tot_pos_; }
  bool complete() const noexcept { return tot_pos_ == n_; }

  bool row_occupied(int i) const { return column_of(i) != 0; }
  bool col_occupied(int j) const {
    detail::check_cell(n_, 1, j);
    return col_[static_cast<std::size_t>(j)] != 0;
  }
  bool left_diag_taken(int r) const { return d1_.at(static_cast<std::size_t>(r)) != 0; }
  bool right_diag_taken(int t) const { return d2_.at(static_cast<std::size_t>(t)) != 0; }

  /// Column of the queen in row i, 0 if the row is empty.
  int column_of(int i) const {
    detail::check_cell(n_, i, 1);
    return row_[static_cast<std::size_t>(i)];
  }

  /// True iff row i, column j and both diagonals through (i, j) are unoccupied.
  bool is_free(int i, int j) const {
    detail::check_cell(n_, i, j);
    return is_free_unchecked(i, j);
  }

  void place(int i, int j) {
    if (!is_free(i, j)) {
      throw ContractViolation("cell (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not free");
    }
    place_unchecked(i, j);
  }

  /// Lifts the queen in row i. Used by exhaustive search.
  void remove(int i) {
    const int j = column_of(i);
    if (j == 0) throw ContractViolation("row " + std::to_string(i) + " is empty");
    d1_[idx(n_ + j - i)] = 0;
    d2_[idx(i + j)] = 0;
    col_[idx(j)] = 0;
    row_[idx(i)] = 0;
    --tot_pos_;
  }

  bool is_free_unchecked(int i, int j) const noexcept {
    return (d1_[idx(n_ + j - i)] | d2_[idx(i + j)] | col_[idx(j)]) == 0 && row_[idx(i)] == 0;
  }

  void place_unchecked(int i, int j) noexcept {
    d1_[idx(n_ + j - i)] = 1;
    d2_[idx(i + j)] = 1;
    col_[idx(j)] = 1;
    row_[idx(i)] = j;
    ++tot_pos_;
  }

  /// Raw control vectors, indexed by the diagonal projections directly.
  std::span<const std::uint8_t> left_diagonals() const noexcept { return d1_; }
  std::span<const std::uint8_t> right_diagonals() const noexcept { return d2_; }

  Composition composition() const {
    return Composition(n_, std::vector<int>(row_.begin() + 1, row_.end()));
  }

  friend bool operator==(const ControlState&, const ControlState&) = default;

 private:
  static std::size_t idx(int v) noexcept { return static_cast<std::size_t>(v); }

  int n_;
  std::vector<std::uint8_t> d1_;
  std::vector<std::uint8_t> d2_;
  std::vector<std::uint8_t> col_;
  std::vector<int> row_;  // column of the row's queen; 0 = row free
  int tot_pos_ = 0;
};

/// Seeded 64-bit Mersenne Twister. Equal seeds give equal streams.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform integer in [1, m].
  int uniform(int m) {
    if (m < 1) throw ContractViolation("uniform(m) needs m >= 1");
    return std::uniform_int_distribution<int>(1, m)(engine_);
  }

  /// Uniform index in [0, m).
  std::size_t index(std::size_t m) {
    if (m == 0) throw ContractViolation("index(m) needs m >= 1");
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(engine_);
  }

  template <class T>
  void permute(std::vector<T>& items) {
    std::shuffle(items.begin(), items.end(), engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace nqc
