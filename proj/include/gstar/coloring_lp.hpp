#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/lp.hpp"
#include "gstar/profile.hpp"

namespace gstar {

/// A family of color sets (the P1 or P2 of a support pair), kept sorted in
/// canonical order without duplicates.
using Family = std::vector<ColorSet>;

inline Family normalize_family(std::span<const ColorSet> sets) {
  Family f(sets.begin(), sets.end());
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

/// The coloring LP restricted to a support pair, with variable handles.
struct ColoringLP {
  int r;
  Family p1;
  Family p2;
  LinearProgram lp;
  std::vector<int> a_set;   ///< variable of a(R) for R = p1[k]
  std::vector<int> b_set;   ///< variable of b(R) for R = p2[k]
  std::vector<int> a_color; ///< variable of a_i at index i-1
  std::vector<int> b_color;
  int m = -1;
};

/// Variables a(R) for R in P1, b(R) for R in P2, a_i, b_i and m; box bounds,
/// unit sums, marginal definitions and m >= a_i + b_i; minimize m. Sets
/// outside the families are simply not materialized.
inline ColoringLP build_coloring_lp(int r, std::span<const ColorSet> p1, std::span<const ColorSet> p2) {
  (void)ColorSet(r);
  for (auto fam : {p1, p2})
    for (const auto& s : fam)
      if (s.r() != r) throw DomainError("support set " + s.to_string() + " is not a subset of [" + std::to_string(r) + "]");

  ColoringLP out{r, normalize_family(p1), normalize_family(p2), {}, {}, {}, {}, {}, -1};
  auto& lp = out.lp;
  for (const auto& s : out.p1) out.a_set.push_back(lp.add_variable("a" + s.to_string(), Rational(1)));
  for (const auto& s : out.p2) out.b_set.push_back(lp.add_variable("b" + s.to_string(), Rational(1)));
  for (int i = 1; i <= r; ++i) out.a_color.push_back(lp.add_variable("a_" + std::to_string(i)));
  for (int i = 1; i <= r; ++i) out.b_color.push_back(lp.add_variable("b_" + std::to_string(i)));
  out.m = lp.add_variable("m");

  auto unit_sum = [&](const std::vector<int>& vars) {
    std::vector<Term> terms;
    for (int v : vars) terms.push_back({v, Rational(1)});
    lp.add_constraint(std::move(terms), Relation::Equal, Rational(1));
  };
  unit_sum(out.a_set);
  unit_sum(out.b_set);

  auto marginal = [&](int color_var, const Family& fam, const std::vector<int>& set_vars, int color) {
    std::vector<Term> terms{{color_var, Rational(1)}};
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (fam[k].contains(color)) terms.push_back({set_vars[k], Rational(-1)});
    lp.add_constraint(std::move(terms), Relation::Equal, Rational(0));
  };
  for (int i = 1; i <= r; ++i) {
    marginal(out.a_color[i - 1], out.p1, out.a_set, i);
    marginal(out.b_color[i - 1], out.p2, out.b_set, i);
  }
  for (int i = 1; i <= r; ++i)
    lp.add_constraint({{out.m, Rational(1)}, {out.a_color[i - 1], Rational(-1)}, {out.b_color[i - 1], Rational(-1)}},
                      Relation::GreaterEqual, Rational(0));
  lp.minimize(out.m);
  return out;
}

/// True when some R1 in P1 and R2 in P2 share no color (including {}).
inline bool has_disjoint_pair(std::span<const ColorSet> p1, std::span<const ColorSet> p2) {
  for (const auto& x : p1)
    for (const auto& y : p2)
      if (x.is_disjoint(y)) return true;
  return false;
}

struct HResult {
  Rational value;
  /// LP witness restricted to the a/b set variables; absent when the
  /// disjointness or emptiness guard decided the value.
  std::optional<SolutionProfile> witness;
};

inline HResult solve_h(int r, std::span<const ColorSet> p1, std::span<const ColorSet> p2) {
  (void)ColorSet(r);
  for (auto fam : {p1, p2})
    for (const auto& s : fam)
      if (s.r() != r) throw DomainError("support set " + s.to_string() + " is not a subset of [" + std::to_string(r) + "]");
  if (p1.empty() || p2.empty() || has_disjoint_pair(p1, p2)) return {Rational(2), std::nullopt};

  const auto model = build_coloring_lp(r, p1, p2);
  const auto outcome = solve_min(model.lp);
  // Constraint (2) plus a nonempty cross-intersecting pair is always feasible
  // and m is bounded below by 0.
  if (outcome.status != LPStatus::Optimal) throw DomainError("coloring LP unexpectedly not optimal");
  SolutionProfile witness(r);
  for (std::size_t k = 0; k < model.p1.size(); ++k) witness.set(Side::A, model.p1[k], outcome.assignment[model.a_set[k]]);
  for (std::size_t k = 0; k < model.p2.size(); ++k) witness.set(Side::B, model.p2[k], outcome.assignment[model.b_set[k]]);
  return {outcome.value, std::move(witness)};
}

/// h_r(P1, P2): 2 when a disjoint cross pair exists or a family is empty,
/// otherwise the optimum of the restricted coloring LP.
inline Rational h_value(int r, std::span<const ColorSet> p1, std::span<const ColorSet> p2) {
  return solve_h(r, p1, p2).value;
}

}  // namespace gstar
