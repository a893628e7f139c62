#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/errors.hpp"
#include "gstar/profile.hpp"
#include "gstar/rational.hpp"

namespace gstar {

/// n x n coloring of K_{n,n}: cell (column u_j, row v_k) holds a color in 1..r.
/// Indices are 0-based here; files use 1-based row numbering.
class ColoringSquare {
public:
  ColoringSquare(int n, int r, int fill = 1) : n_(n), r_(r), cells_(static_cast<std::size_t>(n) * n, fill) {
    if (n < 0) throw DomainError("square size must be nonnegative");
    (void)ColorSet(r);
    check_color(fill);
  }

  int n() const { return n_; }
  int r() const { return r_; }

  int at(int col, int row) const { return cells_[index(col, row)]; }
  void set(int col, int row, int color) {
    check_color(color);
    cells_[index(col, row)] = color;
  }

  friend bool operator==(const ColoringSquare&, const ColoringSquare&) = default;

private:
  std::size_t index(int col, int row) const {
    if (col < 0 || col >= n_ || row < 0 || row >= n_) throw DomainError("cell index out of range");
    return static_cast<std::size_t>(col) * n_ + row;
  }
  void check_color(int color) const {
    if (color < 1 || color > r_) throw DomainError("color " + std::to_string(color) + " outside 1.." + std::to_string(r_));
  }

  int n_;
  int r_;
  std::vector<int> cells_;
};

struct TouchReport {
  std::vector<int> columns_containing;  ///< index color-1
  std::vector<int> rows_containing;
  std::vector<int> touched;
  int max_touched = 0;
};

inline TouchReport touched_counts(const ColoringSquare& sq) {
  const int r = sq.r();
  TouchReport rep{std::vector<int>(r), std::vector<int>(r), std::vector<int>(r), 0};
  std::vector<char> seen(r);
  for (int c = 0; c < sq.n(); ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int k = 0; k < sq.n(); ++k) seen[sq.at(c, k) - 1] = 1;
    for (int i = 0; i < r; ++i) rep.columns_containing[i] += seen[i];
  }
  for (int k = 0; k < sq.n(); ++k) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < sq.n(); ++c) seen[sq.at(c, k) - 1] = 1;
    for (int i = 0; i < r; ++i) rep.rows_containing[i] += seen[i];
  }
  for (int i = 0; i < r; ++i) {
    rep.touched[i] = rep.columns_containing[i] + rep.rows_containing[i];
    rep.max_touched = std::max(rep.max_touched, rep.touched[i]);
  }
  return rep;
}

/// Least common multiple of every denominator stored in the profile.
inline mpz_class profile_grain(const SolutionProfile& p) {
  const auto values = p.values();
  return lcm_denominators(values);
}

/// Blocks of a(R)*tN columns and b(R)*tN rows in canonical key order; the
/// block intersection gets min(R1 ∩ R2). t = 0 yields the empty square.
inline ColoringSquare profile_to_square(const SolutionProfile& p, int t) {
  require_valid(p, "profile_to_square");
  if (t < 0) throw DomainError("t must be nonnegative");
  const mpz_class n_big = profile_grain(p) * t;
  if (n_big > 4096) throw DomainError("square side " + n_big.get_str() + " exceeds 4096");
  const int n = static_cast<int>(n_big.get_si());
  ColoringSquare sq(n, p.r());
  auto blocks = [&](Side side) {
    std::vector<ColorSet> owner;
    for (const auto& [set, value] : p.entries(side)) {
      const Rational len = value * Rational(n);
      for (long k = 0; k < len.num().get_si(); ++k) owner.push_back(set);
    }
    return owner;
  };
  const auto cols = blocks(Side::A);
  const auto rows = blocks(Side::B);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) sq.set(c, k, cols[c].intersect(rows[k]).min_color());
  return sq;
}

/// Copies the last column rightward, then the last row upward, to reach side n.
inline ColoringSquare extend_square(const ColoringSquare& sq, int n) {
  if (n < sq.n()) throw DomainError("cannot extend a square of side " + std::to_string(sq.n()) + " down to " + std::to_string(n));
  ColoringSquare out(n, sq.r());
  if (sq.n() == 0) return out;
  const int last = sq.n() - 1;
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) out.set(c, k, sq.at(std::min(c, last), std::min(k, last)));
  return out;
}

/// a(R) = fraction of columns whose color set is exactly R; b likewise.
inline SolutionProfile square_to_profile(const ColoringSquare& sq) {
  if (sq.n() < 1) throw DomainError("square_to_profile needs n >= 1");
  const int n = sq.n();
  SolutionProfile p(sq.r());
  for (int c = 0; c < n; ++c) {
    ColorSet s(sq.r());
    for (int k = 0; k < n; ++k) s.insert(sq.at(c, k));
    p.set(Side::A, s, p.get(Side::A, s) + Rational(1, n));
  }
  for (int k = 0; k < n; ++k) {
    ColorSet s(sq.r());
    for (int c = 0; c < n; ++c) s.insert(sq.at(c, k));
    p.set(Side::B, s, p.get(Side::B, s) + Rational(1, n));
  }
  return p;
}

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct BruteForceOptions {
  std::uint64_t budget = kDefaultBudget;  ///< bound on r^(n^2)
  bool symmetry = true;                   ///< colors introduced in first-use order
};

namespace detail {

class BruteForce {
public:
  BruteForce(int n, int r, bool symmetry)
      : n_(n), r_(r), symmetry_(symmetry), col_count_(static_cast<std::size_t>(r) * n, 0), row_count_(static_cast<std::size_t>(r) * n, 0), touched_(r, 0),
        best_(2 * n) {}

  int run() {
    // 2n is attained by the monochrome square; search for anything smaller.
    recurse(0, 0, 0);
    return best_;
  }

private:
  void recurse(int cell, int current_max, int used) {
    if (cell == n_ * n_) {
      best_ = std::min(best_, current_max);
      return;
    }
    const int col = cell / n_;
    const int row = cell % n_;
    const int limit = symmetry_ ? std::min(r_, used + 1) : r_;
    for (int color = 0; color < limit; ++color) {
      int& cc = col_count_[static_cast<std::size_t>(color) * n_ + col];
      int& rc = row_count_[static_cast<std::size_t>(color) * n_ + row];
      const int gain = (cc == 0 ? 1 : 0) + (rc == 0 ? 1 : 0);
      const int next_touch = touched_[color] + gain;
      const int next_max = std::max(current_max, next_touch);
      if (next_max >= best_) continue;
      ++cc;
      ++rc;
      touched_[color] = next_touch;
      recurse(cell + 1, next_max, std::max(used, color + 1));
      touched_[color] -= gain;
      --cc;
      --rc;
    }
  }

  int n_;
  int r_;
  bool symmetry_;
  std::vector<int> col_count_;
  std::vector<int> row_count_;
  std::vector<int> touched_;
  int best_;
};

}  // namespace detail

/// Exact g(n, r) by exhaustive branch and bound over all r^(n^2) colorings.
inline int brute_force_g(int n, int r, BruteForceOptions options = {}) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (r < 1) throw DomainError("r must be >= 1");
  mpz_class space;
  mpz_ui_pow_ui(space.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(n) * n);
  if (space > mpz_class(std::to_string(options.budget)))
    throw BudgetExceeded("brute force over r^(n^2) = " + std::to_string(r) + "^" + std::to_string(n * n) +
                         " colorings exceeds the budget of " + std::to_string(options.budget));
  return detail::BruteForce(n, r, options.symmetry).run();
}

// ---------------------------------------------------------------------------
// Square file:
//   n=<n> r=<r>
//   line k = colors of (u_1,v_k),...,(u_n,v_k), comma separated

inline std::string to_csv(const ColoringSquare& sq) {
  std::ostringstream os;
  os << "n=" << sq.n() << " r=" << sq.r() << "\n";
  for (int k = 0; k < sq.n(); ++k) {
    for (int c = 0; c < sq.n(); ++c) os << (c ? "," : "") << sq.at(c, k);
    os << "\n";
  }
  return os.str();
}

inline ColoringSquare parse_square(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw DomainError("empty square file");
  const auto header = lines[0];
  const auto space = header.find(' ');
  if (!header.starts_with("n=") || space == std::string_view::npos || header.substr(space + 1, 2) != "r=")
    throw DomainError("square file must start with 'n=<n> r=<r>'");
  const int n = detail::parse_positive_int(header.substr(2, space - 2), "n");
  const int r = detail::parse_positive_int(header.substr(space + 3), "r");
  if (static_cast<int>(lines.size()) != n + 1)
    throw DomainError("square file declares n=" + std::to_string(n) + " but has " + std::to_string(lines.size() - 1) + " rows");
  ColoringSquare sq(n, r);
  for (int k = 0; k < n; ++k) {
    std::string_view line = lines[k + 1];
    for (int c = 0; c < n; ++c) {
      const auto comma = line.find(',');
      if ((c + 1 < n) != (comma != std::string_view::npos))
        throw DomainError("row " + std::to_string(k + 1) + " must have exactly " + std::to_string(n) + " entries");
      const int color = detail::parse_positive_int(line.substr(0, comma), "color");
      if (color > r) throw DomainError("row " + std::to_string(k + 1) + ": color " + std::to_string(color) + " exceeds r");
      sq.set(c, k, color);
      if (comma != std::string_view::npos) line.remove_prefix(comma + 1);
    }
  }
  return sq;
}

}  // namespace gstar
