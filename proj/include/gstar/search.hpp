#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/coloring_lp.hpp"
#include "gstar/constructions.hpp"
#include "gstar/errors.hpp"
#include "gstar/grid.hpp"
#include "gstar/profile.hpp"

namespace gstar {

enum class CertificateMode { Exact, UpperBoundOnly };

inline std::string mode_name(CertificateMode m) { return m == CertificateMode::Exact ? "exact" : "upper-bound-only"; }

struct Certificate {
  int r = 1;
  Rational value;
  Family p1;
  Family p2;
  SolutionProfile profile{1};
  CertificateMode mode = CertificateMode::UpperBoundOnly;
};

/// Lexicographic order on families viewed as sorted lists of color sets.
inline bool family_less(const Family& x, const Family& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

inline bool pair_less(const Family& x1, const Family& x2, const Family& y1, const Family& y2) {
  if (x1 != y1) return family_less(x1, y1);
  return family_less(x2, y2);
}

inline constexpr int kMaxCanonicalColors = 10;

/// Least image of (P1, P2) under the r! simultaneous color relabelings.
inline std::pair<Family, Family> canonicalize(std::span<const ColorSet> p1, std::span<const ColorSet> p2, int r) {
  if (r < 1 || r > kMaxCanonicalColors)
    throw DomainError("canonicalize enumerates r! permutations; r must be in 1.." + std::to_string(kMaxCanonicalColors));
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 1);
  auto image = [&](std::span<const ColorSet> fam) {
    Family out;
    for (const auto& s : fam) out.push_back(s.permuted(perm));
    return normalize_family(out);
  };
  Family best1 = image(p1);
  Family best2 = image(p2);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Family c1 = image(p1);
    Family c2 = image(p2);
    if (pair_less(c1, c2, best1, best2)) {
      best1 = std::move(c1);
      best2 = std::move(c2);
    }
  }
  return {best1, best2};
}

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;  ///< support pairs examined
  int jobs = 1;
  /// Try enumeration beyond r = 3 (otherwise r >= 4 goes straight to the
  /// construction certificate).
  bool enumerate_large = false;
};

struct SearchStats {
  std::uint64_t pairs_examined = 0;
  std::uint64_t disjoint_skipped = 0;
  std::uint64_t bound_skipped = 0;
  std::uint64_t noncanonical_skipped = 0;
  std::uint64_t lp_solved = 0;
  bool complete = false;
};

namespace detail {

inline constexpr int kMaxEnumerationColors = 6;

// Families are bitmasks over the nonempty subsets of [r] in canonical order.
class PairEnumerator {
public:
  PairEnumerator(int r, const SearchOptions& options) : r_(r), options_(options) {
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << r); ++m) sets_.push_back(ColorSet::from_mask(r, m));
    std::sort(sets_.begin(), sets_.end());
    const int k = static_cast<int>(sets_.size());
    disjoint_.assign(k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (sets_[i].is_disjoint(sets_[j])) disjoint_[i] |= std::uint64_t{1} << j;
    containing_.assign(r, 0);
    for (int c = 1; c <= r; ++c)
      for (int j = 0; j < k; ++j)
        if (sets_[j].contains(c)) containing_[c - 1] |= std::uint64_t{1} << j;
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<int> img(k);
      for (int j = 0; j < k; ++j) {
        const auto target = sets_[j].permuted(perm);
        img[j] = static_cast<int>(std::lower_bound(sets_.begin(), sets_.end(), target) - sets_.begin());
      }
      perms_.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Family family(std::uint64_t mask) const {
    Family f;
    for (; mask != 0; mask &= mask - 1) f.push_back(sets_[std::countr_zero(mask)]);
    return f;
  }

  struct Best {
    std::optional<std::pair<std::uint64_t, std::uint64_t>> pair;
    Rational value;
    std::optional<SolutionProfile> witness;
  };

  Best run(Rational incumbent, SearchStats& stats) {
    Best best{std::nullopt, std::move(incumbent), std::nullopt};
    const int k = static_cast<int>(sets_.size());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> batch;
    auto flush = [&] {
      solve_batch(batch, best, stats);
      batch.clear();
    };
    for (int total = 2; total <= 2 * k; ++total) {
      for (int w1 = std::max(1, total - k); w1 <= std::min(k, total - 1); ++w1) {
        const int w2 = total - w1;
        for (std::uint64_t m1 = first(w1); m1 != 0; m1 = next(m1, k)) {
          std::uint64_t forbidden = 0;
          for (std::uint64_t b = m1; b != 0; b &= b - 1) forbidden |= disjoint_[std::countr_zero(b)];
          for (std::uint64_t m2 = first(w2); m2 != 0; m2 = next(m2, k)) {
            if (stats.pairs_examined >= options_.budget) {
              flush();
              return best;
            }
            ++stats.pairs_examined;
            if ((m2 & forbidden) != 0) {
              ++stats.disjoint_skipped;
              continue;
            }
            if (Rational(quick_lower_bound(m1, m2)) > best.value) {
              ++stats.bound_skipped;
              continue;
            }
            if (!is_canonical(m1, m2)) {
              ++stats.noncanonical_skipped;
              continue;
            }
            batch.push_back({m1, m2});
            if (batch.size() >= kBatch) flush();
          }
        }
      }
    }
    flush();
    stats.complete = true;
    return best;
  }

private:
  static constexpr std::size_t kBatch = 256;

  static std::uint64_t first(int w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

  // Gosper's hack; 0 once the next mask would leave the k low bits.
  static std::uint64_t next(std::uint64_t m, int k) {
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    if (r == 0) return 0;
    const std::uint64_t n = (((r ^ m) >> 2) / c) | r;
    if (k < 64 && (n >> k) != 0) return 0;
    return n;
  }

  // A color contained in every set of a family has marginal 1 on that side.
  int quick_lower_bound(std::uint64_t m1, std::uint64_t m2) const {
    int lb = 0;
    for (int c = 0; c < r_; ++c)
      lb = std::max(lb, ((m1 & ~containing_[c]) == 0 ? 1 : 0) + ((m2 & ~containing_[c]) == 0 ? 1 : 0));
    return lb;
  }

  // Families as sorted index lists compared lexicographically.
  static bool mask_less(std::uint64_t a, std::uint64_t b) {
    while (a != 0 && b != 0) {
      const int x = std::countr_zero(a);
      const int y = std::countr_zero(b);
      if (x != y) return x < y;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }

  std::uint64_t apply(const std::vector<int>& img, std::uint64_t m) const {
    std::uint64_t out = 0;
    for (; m != 0; m &= m - 1) out |= std::uint64_t{1} << img[std::countr_zero(m)];
    return out;
  }

  bool is_canonical(std::uint64_t m1, std::uint64_t m2) const {
    for (const auto& img : perms_) {
      const auto i1 = apply(img, m1);
      if (mask_less(i1, m1)) return false;
      if (i1 == m1 && mask_less(apply(img, m2), m2)) return false;
    }
    return true;
  }

  void solve_batch(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& batch, Best& best, SearchStats& stats) {
    std::vector<std::optional<HResult>> results(batch.size());
    auto work = [&](std::size_t start) {
      for (std::size_t i = start; i < batch.size(); i += static_cast<std::size_t>(options_.jobs)) {
        const auto f1 = family(batch[i].first);
        const auto f2 = family(batch[i].second);
        results[i] = solve_h(r_, f1, f2);
      }
    };
    if (options_.jobs <= 1 || batch.size() < 2) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int j = 0; j < options_.jobs; ++j) pool.emplace_back(work, static_cast<std::size_t>(j));
      for (auto& t : pool) t.join();
    }
    stats.lp_solved += batch.size();
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& h = *results[i];
      const bool better = h.value < best.value ||
                          (h.value == best.value && (!best.pair || mask_pair_less(batch[i], *best.pair)));
      if (better) {
        best.pair = batch[i];
        best.value = h.value;
        best.witness = h.witness;
      }
    }
  }

  static bool mask_pair_less(std::pair<std::uint64_t, std::uint64_t> x, std::pair<std::uint64_t, std::uint64_t> y) {
    if (x.first != y.first) return mask_less(x.first, y.first);
    return mask_less(x.second, y.second);
  }

  int r_;
  SearchOptions options_;
  std::vector<ColorSet> sets_;
  std::vector<std::uint64_t> disjoint_;
  std::vector<std::uint64_t> containing_;
  std::vector<std::vector<int>> perms_;
};

/// LP over the supports of the best known construction.
inline Certificate construction_certificate(int r) {
  const auto prof = auto_construction(r);
  Certificate c;
  c.r = r;
  c.p1 = prof.support(Side::A);
  c.p2 = prof.support(Side::B);
  auto h = solve_h(r, c.p1, c.p2);
  c.value = h.value;
  c.profile = *h.witness;
  c.mode = CertificateMode::UpperBoundOnly;
  return c;
}

}  // namespace detail

/// g*(r) as a certificate. r <= 3 is enumerated; r whose best construction
/// meets the 2/sqrt(r) bound exactly is certified by that construction; any
/// other r reports the construction as an upper bound, after a budgeted
/// enumeration when `enumerate_large` is set.
inline Certificate enumerate_gstar(int r, const SearchOptions& options = {}, SearchStats* stats_out = nullptr) {
  if (r < 1) throw DomainError("r must be >= 1, got " + std::to_string(r));
  if (options.jobs < 1) throw DomainError("jobs must be >= 1");
  SearchStats stats;
  Certificate result;
  const bool enumerate = r <= 3 || (options.enumerate_large && r <= detail::kMaxEnumerationColors);
  if (r > 3 && r <= kMaxColors) {
    result = detail::construction_certificate(r);
    if (result.value * result.value * Rational(r) == Rational(4)) {
      result.mode = CertificateMode::Exact;
      stats.complete = true;
      if (stats_out) *stats_out = stats;
      return result;
    }
  } else if (r > kMaxColors) {
    throw DomainError("r exceeds " + std::to_string(kMaxColors) + " colors");
  }
  if (enumerate) {
    detail::PairEnumerator en(r, options);
    const Rational incumbent = r <= 3 ? best_construction_value(r) : result.value;
    auto best = en.run(incumbent, stats);
    if (best.pair) {
      result.r = r;
      result.value = best.value;
      result.p1 = en.family(best.pair->first);
      result.p2 = en.family(best.pair->second);
      result.profile = *best.witness;
    } else if (r <= 3) {
      // Only reachable when the budget ran out before any LP was solved.
      result = detail::construction_certificate(r);
    }
    result.mode = stats.complete ? CertificateMode::Exact : CertificateMode::UpperBoundOnly;
  }
  if (stats_out) *stats_out = stats;
  return result;
}

/// Re-solves the LP over the certificate's supports, validates the profile
/// and checks both against the stated value. Exact mode is trusted as to
/// coverage of the enumeration.
inline bool certify(const Certificate& c) {
  try {
    if (c.profile.r() != c.r) return false;
    const auto h = solve_h(c.r, c.p1, c.p2);
    if (h.value != c.value) return false;
    if (!validate(c.profile).ok()) return false;
    if (marginals(c.profile).objective != c.value) return false;
    const auto p1 = normalize_family(c.p1);
    const auto p2 = normalize_family(c.p2);
    for (const auto& s : c.profile.support(Side::A))
      if (!std::binary_search(p1.begin(), p1.end(), s)) return false;
    for (const auto& s : c.profile.support(Side::B))
      if (!std::binary_search(p2.begin(), p2.end(), s)) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Certificate file: value=, mode=, P1=, P2= header lines, then a profile.

inline std::string family_to_string(const Family& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ";" : "") + f[i].to_string();
  return out;
}

inline Family parse_family_list(std::string_view text, int r) {
  Family f;
  if (text.empty()) return f;
  while (true) {
    const auto semi = text.find(';');
    f.push_back(ColorSet::parse(text.substr(0, semi), r));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return f;
}

inline std::string to_text(const Certificate& c) {
  std::ostringstream os;
  os << "value=" << c.value << "\n"
     << "mode=" << mode_name(c.mode) << "\n"
     << "P1=" << family_to_string(c.p1) << "\n"
     << "P2=" << family_to_string(c.p2) << "\n"
     << to_text(c.profile);
  return os.str();
}

inline Certificate parse_certificate(std::string_view text) {
  const auto lines = detail::split_lines(text);
  auto field = [&](std::size_t i, std::string_view key) {
    if (i >= lines.size() || !lines[i].starts_with(key))
      throw DomainError("certificate line " + std::to_string(i + 1) + " must start with '" + std::string(key) + "'");
    return lines[i].substr(key.size());
  };
  Certificate c;
  c.value = Rational::parse(field(0, "value="));
  const auto mode = field(1, "mode=");
  if (mode == "exact")
    c.mode = CertificateMode::Exact;
  else if (mode == "upper-bound-only")
    c.mode = CertificateMode::UpperBoundOnly;
  else
    throw DomainError("unknown certificate mode '" + std::string(mode) + "'");
  const auto p1 = field(2, "P1=");
  const auto p2 = field(3, "P2=");
  c.profile = detail::parse_profile_lines(std::span(lines).subspan(4));
  c.r = c.profile.r();
  c.p1 = parse_family_list(p1, c.r);
  c.p2 = parse_family_list(p2, c.r);
  return c;
}

}  // namespace gstar
