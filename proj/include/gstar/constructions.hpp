#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/errors.hpp"
#include "gstar/profile.hpp"
#include "gstar/rational.hpp"

namespace gstar {

/// One column of a unit-square layout: its width and its cells listed from
/// the bottom edge upward as (height, color).
struct LayoutColumn {
  Rational width;
  std::vector<std::pair<Rational, int>> cells;
};

/// Reads a profile off a unit square cut into columns. Column color sets give
/// a(.); horizontal strips between all cell boundaries give b(.).
inline SolutionProfile profile_from_layout(int r, const std::vector<LayoutColumn>& columns) {
  SolutionProfile p(r);
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& col : columns) {
    if (col.width.sign() <= 0) throw DomainError("layout column with nonpositive width");
    ColorSet s(r);
    Rational y = 0;
    for (const auto& [h, c] : col.cells) {
      s.insert(c);
      y += h;
      cuts.push_back(y);
    }
    if (y != Rational(1)) throw DomainError("layout column heights sum to " + y.to_string());
    p.set(Side::A, s, p.get(Side::A, s) + col.width);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational mid = (cuts[k] + cuts[k + 1]) / Rational(2);
    ColorSet s(r);
    for (const auto& col : columns) {
      Rational y = 0;
      for (const auto& [h, c] : col.cells) {
        y += h;
        if (mid < y) {
          s.insert(c);
          break;
        }
      }
    }
    p.set(Side::B, s, p.get(Side::B, s) + (cuts[k + 1] - cuts[k]));
  }
  return p;
}

namespace detail {

inline long long isqrt(long long r) {
  long long t = 0;
  while ((t + 1) * (t + 1) <= r) ++t;
  return t;
}

inline void require_r(long long r) {
  if (r < 1) throw DomainError("r must be >= 1, got " + std::to_string(r));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed-form objective values.

inline Rational square_grid_value(long long t) {
  if (t < 1) throw DomainError("square grid needs t >= 1");
  return Rational(2, t);
}

inline Rational square_minus_one_value(long long t) {
  if (t < 3) throw DomainError("the t^2-1 construction needs t >= 3, got " + std::to_string(t));
  return Rational(1, t) - Rational(1, t * t) + Rational(1, t - 1);
}

inline Rational universal_low_value(long long r) {
  detail::require_r(r);
  const long long t = detail::isqrt(r);
  if (r > t * (t + 1)) throw DomainError("universal_low needs t^2 <= r <= t(t+1); r=" + std::to_string(r) + " is above t(t+1)");
  return Rational(2, t) + Rational(1, t + 1) + Rational(r, t * (t + 1)) - Rational(r, t * t);
}

/// t with t(t+1) <= r <= (t+1)^2, or 0 when none exists.
inline long long universal_high_t(long long r) {
  long long t = detail::isqrt(r);
  if (t * (t + 1) > r) --t;
  return t;
}

inline Rational universal_high_value(long long r) {
  detail::require_r(r);
  const long long t = universal_high_t(r);
  if (t < 1) throw DomainError("universal_high needs t(t+1) <= r <= (t+1)^2 with t >= 1; r=" + std::to_string(r));
  return Rational(2, t + 1) + Rational(1, t) + Rational(r, (t + 1) * (t + 1)) - Rational(r, t * (t + 1));
}

/// Low form when it applies (including at r = t(t+1)), high form otherwise.
inline Rational universal_value(long long r) {
  detail::require_r(r);
  const long long t = detail::isqrt(r);
  if (r <= t * (t + 1)) {
    const Rational low = universal_low_value(r);
    if (r == t * (t + 1) && low != universal_high_value(r)) throw std::logic_error("universal forms disagree at r=t(t+1)");
    return low;
  }
  return universal_high_value(r);
}

inline std::optional<Rational> catalog_value(long long r) {
  static const Rational table[] = {Rational(3, 2), Rational(5, 4),  Rational(1),     Rational(11, 12),
                                   Rational(5, 6), Rational(7, 9), Rational(13, 18)};
  if (r < 2 || r > 8) return std::nullopt;
  return table[r - 2];
}

// ---------------------------------------------------------------------------
// Profiles.

/// r = t^2 colors in a t x t grid of equal squares.
inline SolutionProfile square_grid(int t) {
  if (t < 1) throw DomainError("square grid needs t >= 1");
  if (t * t > kMaxColors) throw DomainError("square grid with t=" + std::to_string(t) + " exceeds " + std::to_string(kMaxColors) + " colors");
  const int r = t * t;
  SolutionProfile p(r);
  for (int i = 1; i <= t; ++i) {
    ColorSet col(r);
    for (int j = 0; j < t; ++j) col.insert(j * t + i);
    p.set(Side::A, col, Rational(1, t));
  }
  for (int i = 0; i < t; ++i) {
    ColorSet row(r);
    for (int j = 1; j <= t; ++j) row.insert(i * t + j);
    p.set(Side::B, row, Rational(1, t));
  }
  return p;
}

/// r = t^2 - 1: t-1 narrow columns of t cells beside one column of t-1 cells.
/// Colors are numbered row by row from the top of the left block, then the
/// right block top to bottom.
inline SolutionProfile square_minus_one(int t) {
  if (t < 3) throw DomainError("the t^2-1 construction needs t >= 3, got " + std::to_string(t));
  if (t * t - 1 > kMaxColors) throw DomainError("t^2-1 exceeds " + std::to_string(kMaxColors) + " colors");
  const int r = t * t - 1;
  std::vector<LayoutColumn> columns;
  for (int j = 0; j < t - 1; ++j) {
    LayoutColumn col{Rational(1, t - 1) - Rational(1, t * t), {}};
    for (int row = t - 1; row >= 0; --row) col.cells.push_back({Rational(1, t), row * (t - 1) + j + 1});
    columns.push_back(std::move(col));
  }
  LayoutColumn right{Rational(1, t) - Rational(1, t * t), {}};
  for (int k = t - 2; k >= 0; --k) right.cells.push_back({Rational(1, t - 1), (t - 1) * t + k + 1});
  columns.push_back(std::move(right));
  return profile_from_layout(r, columns);
}

/// t^2 <= r <= t(t+1): p columns of t cells and width x, then q columns of
/// t+1 cells sharing the remaining width.
inline SolutionProfile universal_low(int r) {
  const Rational value = universal_low_value(r);
  if (r > kMaxColors) throw DomainError("r exceeds " + std::to_string(kMaxColors) + " colors");
  const int t = static_cast<int>(detail::isqrt(r));
  const int p = t * (t + 1) - r;
  const int q = t - p;
  const Rational x = Rational(p, t * t) + Rational(q, t * (t + 1));
  std::vector<LayoutColumn> columns;
  for (int i = 0; i < p; ++i) {
    LayoutColumn col{x, {}};
    for (int j = 0; j < t; ++j) col.cells.push_back({Rational(1, t), (t - j - 1) * p + i + 1});
    columns.push_back(std::move(col));
  }
  for (int i = 0; i < q; ++i) {
    LayoutColumn col{(Rational(1) - Rational(p) * x) / Rational(q), {}};
    for (int j = 0; j <= t; ++j) col.cells.push_back({Rational(1, t + 1), (t - j) * q + i + 1 + p * t});
    columns.push_back(std::move(col));
  }
  auto prof = profile_from_layout(r, columns);
  if (marginals(prof).objective != value) throw std::logic_error("universal_low layout disagrees with its closed form");
  return prof;
}

/// t(t+1) <= r <= (t+1)^2: p columns of t+1 cells and width x, then q
/// columns of t cells.
inline SolutionProfile universal_high(int r) {
  const Rational value = universal_high_value(r);
  if (r > kMaxColors) throw DomainError("r exceeds " + std::to_string(kMaxColors) + " colors");
  const int t = static_cast<int>(universal_high_t(r));
  const int p = r - t * (t + 1);
  const int q = t + 1 - p;
  const Rational x = Rational(p, (t + 1) * (t + 1)) + Rational(q, t * (t + 1));
  std::vector<LayoutColumn> columns;
  for (int i = 0; i < p; ++i) {
    LayoutColumn col{x, {}};
    for (int j = 0; j <= t; ++j) col.cells.push_back({Rational(1, t + 1), (t - j) * p + i + 1});
    columns.push_back(std::move(col));
  }
  for (int i = 0; i < q; ++i) {
    LayoutColumn col{(Rational(1) - Rational(p) * x) / Rational(q), {}};
    for (int j = 0; j < t; ++j) col.cells.push_back({Rational(1, t), (t - j - 1) * q + i + 1 + p * (t + 1)});
    columns.push_back(std::move(col));
  }
  auto prof = profile_from_layout(r, columns);
  if (marginals(prof).objective != value) throw std::logic_error("universal_high layout disagrees with its closed form");
  return prof;
}

inline SolutionProfile universal(int r) {
  detail::require_r(r);
  const long long t = detail::isqrt(r);
  if (r <= t * (t + 1)) {
    (void)universal_value(r);
    return universal_low(r);
  }
  return universal_high(r);
}

/// Hand-read optimal profiles for 2 <= r <= 8.
inline SolutionProfile small_catalog(int r) {
  if (r < 2 || r > 8) throw DomainError("catalog covers 2 <= r <= 8, got " + std::to_string(r));
  SolutionProfile p(r);
  auto a = [&](std::initializer_list<int> s, Rational v) { p.set(Side::A, ColorSet::of(r, s), v); };
  auto b = [&](std::initializer_list<int> s, Rational v) { p.set(Side::B, ColorSet::of(r, s), v); };
  switch (r) {
    case 2:
      a({1}, Rational(1, 2));
      a({2}, Rational(1, 2));
      b({1, 2}, Rational(1));
      break;
    case 3:
      a({1}, Rational(1, 4));
      a({2, 3}, Rational(3, 4));
      b({1, 2}, Rational(1, 2));
      b({1, 3}, Rational(1, 2));
      break;
    case 4:
      return square_grid(2);
    case 5:
      a({1, 2}, Rational(5, 12));
      a({3, 4, 5}, Rational(7, 12));
      b({1, 3}, Rational(1, 3));
      b({1, 4}, Rational(1, 6));
      b({2, 4}, Rational(1, 6));
      b({2, 5}, Rational(1, 3));
      break;
    case 6:
      a({1, 3, 5}, Rational(1, 2));
      a({2, 4, 6}, Rational(1, 2));
      b({1, 2}, Rational(1, 3));
      b({3, 4}, Rational(1, 3));
      b({5, 6}, Rational(1, 3));
      break;
    case 7:
      a({1, 3}, Rational(5, 18));
      a({2, 4}, Rational(5, 18));
      a({5, 6, 7}, Rational(4, 9));
      b({1, 2, 5}, Rational(1, 3));
      b({1, 2, 6}, Rational(1, 6));
      b({3, 4, 6}, Rational(1, 6));
      b({3, 4, 7}, Rational(1, 3));
      break;
    case 8:
      a({1, 3, 5}, Rational(7, 18));
      a({2, 4, 6}, Rational(7, 18));
      a({7, 8}, Rational(2, 9));
      b({1, 2, 7}, Rational(1, 3));
      b({3, 4, 7}, Rational(1, 6));
      b({3, 4, 8}, Rational(1, 6));
      b({5, 6, 8}, Rational(1, 3));
      break;
  }
  return p;
}

enum class ConstructionFamily { Auto, Square, SquareMinusOne, Universal, Catalog };

inline ConstructionFamily parse_family(std::string_view name) {
  if (name == "auto") return ConstructionFamily::Auto;
  if (name == "square") return ConstructionFamily::Square;
  if (name == "square-minus-one") return ConstructionFamily::SquareMinusOne;
  if (name == "universal") return ConstructionFamily::Universal;
  if (name == "catalog") return ConstructionFamily::Catalog;
  throw DomainError("unknown construction family '" + std::string(name) + "'");
}

/// Catalog for r <= 8, square grid for perfect squares, t^2-1 for t >= 3,
/// universal otherwise.
inline SolutionProfile auto_construction(int r) {
  detail::require_r(r);
  if (r >= 2 && r <= 8) return small_catalog(r);
  const long long t = detail::isqrt(r);
  if (t * t == r) return square_grid(static_cast<int>(t));
  if ((t + 1) * (t + 1) - 1 == r && t + 1 >= 3) return square_minus_one(static_cast<int>(t + 1));
  return universal(r);
}

inline SolutionProfile construct(int r, ConstructionFamily family) {
  detail::require_r(r);
  const long long t = detail::isqrt(r);
  switch (family) {
    case ConstructionFamily::Auto: return auto_construction(r);
    case ConstructionFamily::Catalog: return small_catalog(r);
    case ConstructionFamily::Universal: return universal(r);
    case ConstructionFamily::Square:
      if (t * t != r) throw DomainError("square family needs a perfect square r, got " + std::to_string(r));
      return square_grid(static_cast<int>(t));
    case ConstructionFamily::SquareMinusOne:
      if ((t + 1) * (t + 1) - 1 != r || t + 1 < 3)
        throw DomainError("square-minus-one family needs r = t^2-1 with t >= 3, got " + std::to_string(r));
      return square_minus_one(static_cast<int>(t + 1));
  }
  throw DomainError("unknown construction family");
}

struct BoundTable {
  long long r;
  Rational lower_sq;            ///< 4/r, the square of the 2/sqrt(r) lower bound
  Rational upper;               ///< best construction value
  std::optional<Rational> exact;
};

/// Best construction value for r (closed forms only, so any r >= 1 works).
inline Rational best_construction_value(long long r) {
  detail::require_r(r);
  Rational best = universal_value(r);
  if (auto c = catalog_value(r)) best = min(best, *c);
  const long long t = detail::isqrt(r);
  if (t * t == r) best = min(best, square_grid_value(t));
  if ((t + 1) * (t + 1) - 1 == r && t + 1 >= 3) best = min(best, square_minus_one_value(t + 1));
  return best;
}

inline BoundTable bound_table(long long r) {
  detail::require_r(r);
  BoundTable row{r, Rational(4, r), best_construction_value(r), std::nullopt};
  const long long t = detail::isqrt(r);
  const bool known = r <= 9 || t * t == r || ((t + 1) * (t + 1) - 1 == r && t + 1 >= 3);
  if (known) row.exact = row.upper;
  return row;
}

inline std::string bound_table_csv(const std::vector<BoundTable>& rows) {
  std::ostringstream os;
  os << "r,lower_sq,upper,exact\n";
  for (const auto& row : rows)
    os << row.r << ',' << row.lower_sq << ',' << row.upper << ',' << (row.exact ? row.exact->to_string() : "") << "\n";
  return os.str();
}

inline std::string bound_table_text(const std::vector<BoundTable>& rows) {
  std::vector<std::vector<std::string>> cells{{"r", "lower_sq", "upper", "exact"}};
  for (const auto& row : rows)
    cells.push_back({std::to_string(row.r), row.lower_sq.to_string(), row.upper.to_string(), row.exact ? row.exact->to_string() : "-"});
  std::vector<std::size_t> width(4, 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream os;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < 4; ++c) os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << line[c];
    os << "\n";
  }
  return os.str();
}

}  // namespace gstar
