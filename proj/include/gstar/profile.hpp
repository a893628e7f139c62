#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/errors.hpp"
#include "gstar/rational.hpp"

namespace gstar {

/// a = column side, b = row side.
enum class Side { A, B };

inline char side_char(Side s) { return s == Side::A ? 'a' : 'b'; }

/// Column/row distributions a(R), b(R) over subsets R of [r]. Absent keys
/// are zero; stored values are strictly positive.
class SolutionProfile {
public:
  using Map = std::map<ColorSet, Rational>;

  explicit SolutionProfile(int r) : r_(r) { (void)ColorSet(r); }

  int r() const { return r_; }

  /// Stores value at `set`; zero erases the key, negative values are rejected.
  void set(Side side, const ColorSet& set, const Rational& value) {
    if (set.r() != r_) throw DomainError("color set " + set.to_string() + " is over a different r");
    if (value.sign() < 0) throw DomainError("negative mass " + value.to_string() + " at " + set.to_string());
    auto& m = side_map(side);
    if (value.is_zero())
      m.erase(set);
    else
      m[set] = value;
  }

  Rational get(Side side, const ColorSet& set) const {
    const auto& m = entries(side);
    auto it = m.find(set);
    return it == m.end() ? Rational(0) : it->second;
  }

  const Map& entries(Side side) const { return side == Side::A ? a_ : b_; }

  std::vector<ColorSet> support(Side side) const {
    std::vector<ColorSet> out;
    for (const auto& [s, v] : entries(side)) out.push_back(s);
    return out;
  }

  std::vector<Rational> values() const {
    std::vector<Rational> out;
    for (const auto& [s, v] : a_) out.push_back(v);
    for (const auto& [s, v] : b_) out.push_back(v);
    return out;
  }

  friend bool operator==(const SolutionProfile&, const SolutionProfile&) = default;

private:
  Map& side_map(Side side) { return side == Side::A ? a_ : b_; }

  int r_;
  Map a_;
  Map b_;
};

struct Violation {
  enum class Kind { Box, Sum, EmptySet, CrossIntersection };
  Kind kind;
  std::string message;
  std::vector<ColorSet> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks box bounds, both sums equal to 1, no mass on {}, and that every
/// a-support meets every b-support.
inline ValidationReport validate(const SolutionProfile& p) {
  ValidationReport report;
  for (Side side : {Side::A, Side::B}) {
    Rational total = 0;
    for (const auto& [set, value] : p.entries(side)) {
      total += value;
      if (value > Rational(1))
        report.violations.push_back({Violation::Kind::Box,
                                     std::string(1, side_char(side)) + "(" + set.to_string() + ") = " + value.to_string() + " exceeds 1",
                                     {set}});
      if (set.empty())
        report.violations.push_back({Violation::Kind::EmptySet,
                                     std::string(1, side_char(side)) + "({}) = " + value.to_string() + " but every line needs a color",
                                     {set}});
    }
    if (total != Rational(1))
      report.violations.push_back({Violation::Kind::Sum,
                                   std::string(1, side_char(side)) + "-side sums to " + total.to_string() + ", expected 1",
                                   {}});
  }
  for (const auto& [r1, v1] : p.entries(Side::A))
    for (const auto& [r2, v2] : p.entries(Side::B))
      if (r1.is_disjoint(r2))
        report.violations.push_back({Violation::Kind::CrossIntersection,
                                     "a(" + r1.to_string() + ") > 0 and b(" + r2.to_string() + ") > 0 with disjoint sets",
                                     {r1, r2}});
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) out += v.message + "\n";
  return out;
}

inline void require_valid(const SolutionProfile& p, std::string_view context) {
  auto report = validate(p);
  if (!report.ok()) throw DomainError(std::string(context) + ": invalid profile: " + describe(report));
}

struct Marginals {
  std::vector<Rational> a;  ///< a_i for colors 1..r at index i-1
  std::vector<Rational> b;
  Rational objective;       ///< max_i a_i + b_i

  Rational touch(int color) const { return a[color - 1] + b[color - 1]; }
};

/// Marginals without the validity check; used by validate-style reports.
inline Marginals marginals_unchecked(const SolutionProfile& p) {
  Marginals m{std::vector<Rational>(p.r()), std::vector<Rational>(p.r()), Rational(0)};
  for (const auto& [set, value] : p.entries(Side::A))
    for (int c : set.elements()) m.a[c - 1] += value;
  for (const auto& [set, value] : p.entries(Side::B))
    for (int c : set.elements()) m.b[c - 1] += value;
  for (int i = 0; i < p.r(); ++i) m.objective = max(m.objective, m.a[i] + m.b[i]);
  return m;
}

inline Marginals marginals(const SolutionProfile& p) {
  require_valid(p, "marginals");
  return marginals_unchecked(p);
}

inline Rational objective(const SolutionProfile& p) { return marginals(p).objective; }

/// Sum of a_i * b_i, and whether it reaches the unit area.
inline std::pair<Rational, bool> area_check(const SolutionProfile& p) {
  const auto m = marginals_unchecked(p);
  Rational area = 0;
  for (int i = 0; i < p.r(); ++i) area += m.a[i] * m.b[i];
  return {area, area >= Rational(1)};
}

/// sum_i a_i == sum_R |R| a(R), and the same on the b side.
inline bool weight_identity(const SolutionProfile& p) {
  const auto m = marginals_unchecked(p);
  for (Side side : {Side::A, Side::B}) {
    Rational lhs = 0;
    for (const auto& v : side == Side::A ? m.a : m.b) lhs += v;
    Rational rhs = 0;
    for (const auto& [set, value] : p.entries(side)) rhs += Rational(set.cardinality()) * value;
    if (lhs != rhs) return false;
  }
  return true;
}

/// If every a_i + b_i is below 1/t, no support set may have at most t colors.
/// Returns false only when a counterexample to that implication is found.
inline bool small_set_predicate(const SolutionProfile& p, int t) {
  if (t < 1) throw DomainError("small_set_predicate needs t >= 1");
  const auto m = marginals_unchecked(p);
  if (!(m.objective < Rational(1, t))) return true;
  for (Side side : {Side::A, Side::B})
    for (const auto& [set, value] : p.entries(side))
      if (set.cardinality() <= t) return false;
  return true;
}

/// Total mass of `family` on one side.
inline Rational aggregate(const SolutionProfile& p, Side side, std::span<const ColorSet> family) {
  Rational total = 0;
  for (const auto& set : family) total += p.get(side, set);
  return total;
}

/// Removes `eps` mass from `set` on one side and renormalizes that side.
inline SolutionProfile delete_and_rescale(const SolutionProfile& p, Side side, const ColorSet& set, const Rational& eps) {
  const Rational target = p.get(side, set);
  if (target.is_zero()) throw DomainError(set.to_string() + " is not in the " + side_char(side) + "-support");
  if (!(eps > Rational(0) && eps < target))
    throw DomainError("eps must lie strictly between 0 and " + target.to_string() + ", got " + eps.to_string());
  const Rational scale = Rational(1) - eps;
  SolutionProfile out(p.r());
  const Side other = side == Side::A ? Side::B : Side::A;
  for (const auto& [s, v] : p.entries(other)) out.set(other, s, v);
  for (const auto& [s, v] : p.entries(side)) out.set(side, s, (s == set ? v - eps : v) / scale);
  return out;
}

/// Empirical flag: every color has the same a_i + b_i.
inline bool marginals_balanced(const SolutionProfile& p) {
  const auto m = marginals_unchecked(p);
  for (int c = 2; c <= p.r(); ++c)
    if (m.touch(c) != m.touch(1)) return false;
  return true;
}

/// Largest |R1 ∩ R2| over support pairs (empirical overlap flag).
inline int max_support_overlap(const SolutionProfile& p) {
  int best = 0;
  for (const auto& [r1, v1] : p.entries(Side::A))
    for (const auto& [r2, v2] : p.entries(Side::B)) best = std::max(best, r1.intersect(r2).cardinality());
  return best;
}

// ---------------------------------------------------------------------------
// Text format:
//   r=<r>
//   <a|b> <ColorSet> <Rational>     (a-lines, then b-lines, canonical key order)

inline std::string to_text(const SolutionProfile& p) {
  std::ostringstream os;
  os << "r=" << p.r() << "\n";
  for (Side side : {Side::A, Side::B})
    for (const auto& [set, value] : p.entries(side)) os << side_char(side) << ' ' << set.to_string() << ' ' << value << "\n";
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline int parse_positive_int(std::string_view text, std::string_view what) {
  if (text.empty() || text.size() > 9) throw DomainError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  int v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw DomainError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
  }
  if (v < 1) throw DomainError(std::string(what) + " must be positive");
  return v;
}

/// Parses the entry lines of a profile after the "r=" header.
inline SolutionProfile parse_profile_lines(std::span<const std::string_view> lines) {
  if (lines.empty() || !lines[0].starts_with("r=")) throw DomainError("profile must start with 'r=<integer>'");
  const int r = parse_positive_int(lines[0].substr(2), "r");
  SolutionProfile p(r);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto s1 = line.find(' ');
    const auto s2 = s1 == std::string_view::npos ? s1 : line.find(' ', s1 + 1);
    if (s1 != 1 || s2 == std::string_view::npos || line.find(' ', s2 + 1) != std::string_view::npos)
      throw DomainError("malformed profile line " + std::to_string(i + 1) + ": '" + std::string(line) + "'");
    Side side;
    if (line[0] == 'a')
      side = Side::A;
    else if (line[0] == 'b')
      side = Side::B;
    else
      throw DomainError("profile line " + std::to_string(i + 1) + " must start with 'a' or 'b'");
    const auto set = ColorSet::parse(line.substr(2, s2 - 2), r);
    const auto value = Rational::parse(line.substr(s2 + 1));
    if (value.sign() <= 0) throw DomainError("profile line " + std::to_string(i + 1) + ": values must be positive");
    if (!p.get(side, set).is_zero())
      throw DomainError("profile line " + std::to_string(i + 1) + ": duplicate key " + set.to_string());
    p.set(side, set, value);
  }
  return p;
}

}  // namespace detail

inline SolutionProfile parse_profile(std::string_view text) {
  const auto lines = detail::split_lines(text);
  return detail::parse_profile_lines(lines);
}

}  // namespace gstar
