#pragma once

// Single-pass correctness check for full solutions and partial compositions,
// the complement transform, and the plain-text composition format.
//
// Text format: the first token is n, followed by exactly n tokens, each the
// 1-based queen column of that row or 0. Tokens are separated by any ASCII
// whitespace. The writer emits "n\n" and one space-separated line. A file may
// hold several compositions back to back.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "board.hpp"

namespace nqc {

enum class ConflictKind { column, left_diagonal, right_diagonal };

inline const char* to_string(ConflictKind kind) noexcept {
  switch (kind) {
    case ConflictKind::column:
      return "column";
    case ConflictKind::left_diagonal:
      return "leftDiagonal";
    case ConflictKind::right_diagonal:
      return "rightDiagonal";
  }
  return "unknown";
}

struct Conflict {
  int row;
  int column;
  ConflictKind kind;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

struct ValidationReport {
  bool valid = true;
  int tot_pos = 0;  // queens accepted before the first conflict
  std::optional<Conflict> first_conflict;
};

/// Scans rows 1..n and places every queen whose column and diagonals are
/// still clear. Stops at the first conflict; the column is tested before the
/// left diagonal, the left before the right.
inline ValidationReport validate(const Composition& c) {
  const int n = c.size();
  std::vector<std::uint8_t> d1(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<std::uint8_t> d2(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<std::uint8_t> cols(static_cast<std::size_t>(n + 1), 0);

  ValidationReport report;
  for (int i = 1; i <= n; ++i) {
    const int j = c[i];
    if (j == 0) continue;
    const auto r = static_cast<std::size_t>(n + j - i);
    const auto t = static_cast<std::size_t>(i + j);
    std::optional<ConflictKind> kind;
    if (cols[static_cast<std::size_t>(j)]) {
      kind = ConflictKind::column;
    } else if (d1[r]) {
      kind = ConflictKind::left_diagonal;
    } else if (d2[t]) {
      kind = ConflictKind::right_diagonal;
    }
    if (kind) {
      report.valid = false;
      report.first_conflict = Conflict{i, j, *kind};
      return report;
    }
    d1[r] = d2[t] = cols[static_cast<std::size_t>(j)] = 1;
    ++report.tot_pos;
  }
  return report;
}

/// Validates raw columns; entries outside [0, n] raise MalformedInput rather
/// than producing an invalid report.
inline ValidationReport validate(int n, std::vector<int> columns) {
  return validate(Composition(n, std::move(columns)));
}

/// Mirror image across the vertical axis: j -> n + 1 - j, empty rows kept.
inline Composition complement(const Composition& c) {
  const int n = c.size();
  std::vector<int> q(c.columns().begin(), c.columns().end());
  for (int& j : q) {
    if (j != 0) j = n + 1 - j;
  }
  return Composition(n, std::move(q));
}

/// Text that does not follow the composition grammar. Line and column are
/// 1-based and point at the offending token (or end of input).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {
    // A UTF-8 byte-order mark is not part of the format.
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") throw ParseError("unexpected byte-order mark", 1, 1);
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }

  /// Next token as a non-negative integer.
  long long next_int(const char* what) {
    skip_space();
    const int tok_line = line_;
    const int tok_col = col_;
    if (pos_ >= text_.size()) throw ParseError(std::string("missing ") + what, tok_line, tok_col);
    std::size_t end = pos_;
    while (end < text_.size() && !is_space(text_[end])) ++end;
    const std::string_view tok = text_.substr(pos_, end - pos_);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
      throw ParseError("expected non-negative integer " + std::string(what) + ", got '" +
                           std::string(tok) + "'",
                       tok_line, tok_col);
    }
    col_ += static_cast<int>(tok.size());
    pos_ = end;
    return value;
  }

 private:
  static bool is_space(char ch) noexcept {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f';
  }

  void skip_space() noexcept {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline Composition read_one(Tokenizer& tok) {
  const int size_line = tok.line();
  const long long n = tok.next_int("board size n");
  if (n < 1 || n > 1'000'000'000) {
    throw ParseError("board size " + std::to_string(n) + " out of range", size_line, 1);
  }
  std::vector<int> q;
  q.reserve(static_cast<std::size_t>(n));
  for (long long r = 1; r <= n; ++r) {
    if (tok.at_end()) {
      throw ParseError("expected " + std::to_string(n) + " entries, got " + std::to_string(r - 1),
                       tok.line(), tok.column());
    }
    const int line = tok.line();
    const int col = tok.column();
    const long long v = tok.next_int("row entry");
    if (v > n) {
      throw ParseError("entry " + std::to_string(v) + " for row " + std::to_string(r) +
                           " exceeds n = " + std::to_string(n),
                       line, col);
    }
    q.push_back(static_cast<int>(v));
  }
  return Composition(static_cast<int>(n), std::move(q));
}

}  // namespace detail

/// Parses exactly one composition; trailing tokens are an error.
inline Composition read_composition(std::string_view text) {
  detail::Tokenizer tok(text);
  Composition c = detail::read_one(tok);
  if (!tok.at_end()) throw ParseError("trailing data after composition", tok.line(), tok.column());
  return c;
}

/// Parses a sequence of compositions (possibly of different sizes).
inline std::vector<Composition> read_compositions(std::string_view text) {
  detail::Tokenizer tok(text);
  std::vector<Composition> out;
  while (!tok.at_end()) out.push_back(detail::read_one(tok));
  return out;
}

inline std::string write_composition(const Composition& c) {
  std::string out = std::to_string(c.size());
  out += '\n';
  char buf[16];
  bool first = true;
  for (int j : c.columns()) {
    if (!first) out += ' ';
    first = false;
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, j);
    out.append(buf, ptr);
  }
  out += '\n';
  return out;
}

}  // namespace nqc
