#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gstar/errors.hpp"
#include "gstar/rational.hpp"

namespace gstar {

inline constexpr int kMaxColors = 256;

/// Subset of the colors 1..r. Color i lives at bit i-1.
class ColorSet {
public:
  ColorSet() = default;
  explicit ColorSet(int r) : r_(r) { check_r(r); }

  static ColorSet of(int r, std::initializer_list<int> colors) {
    return of(r, std::span<const int>(colors.begin(), colors.size()));
  }
  static ColorSet of(int r, std::span<const int> colors) {
    ColorSet s(r);
    for (int c : colors) s.insert(c);
    return s;
  }
  /// Set whose bits are the low word `mask`; requires r <= 64 for bits above r to be meaningful.
  static ColorSet from_mask(int r, std::uint64_t mask) {
    ColorSet s(r);
    if (r < 64 && (mask >> r) != 0) throw DomainError("mask has bits outside colors 1.." + std::to_string(r));
    s.words_[0] = mask;
    return s;
  }
  /// {1, ..., r}
  static ColorSet full(int r) {
    ColorSet s(r);
    for (int c = 1; c <= r; ++c) s.insert(c);
    return s;
  }

  int r() const { return r_; }

  void insert(int color) {
    if (color < 1 || color > r_)
      throw DomainError("color " + std::to_string(color) + " outside 1.." + std::to_string(r_));
    words_[(color - 1) / 64] |= std::uint64_t{1} << ((color - 1) % 64);
  }

  bool contains(int color) const {
    if (color < 1 || color > r_) return false;
    return (words_[(color - 1) / 64] >> ((color - 1) % 64)) & 1U;
  }

  int cardinality() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  bool empty() const { return cardinality() == 0; }

  /// Smallest color in the set, or 0 when empty.
  int min_color() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(words_[i]) + 1;
    return 0;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w != 0) {
        out.push_back(static_cast<int>(i * 64) + std::countr_zero(w) + 1);
        w &= w - 1;
      }
    }
    return out;
  }

  std::uint64_t low_word() const { return words_[0]; }

  ColorSet intersect(const ColorSet& o) const { return combine(o, [](auto a, auto b) { return a & b; }); }
  ColorSet unite(const ColorSet& o) const { return combine(o, [](auto a, auto b) { return a | b; }); }
  ColorSet minus(const ColorSet& o) const { return combine(o, [](auto a, auto b) { return a & ~b; }); }
  bool is_disjoint(const ColorSet& o) const { return intersect(o).empty(); }
  bool is_subset_of(const ColorSet& o) const { return minus(o).empty(); }

  /// Image under the color relabeling c -> perm[c-1].
  ColorSet permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != r_) throw DomainError("permutation size does not match r");
    ColorSet s(r_);
    for (int c : elements()) s.insert(perm[c - 1]);
    return s;
  }

  /// "{i,j,...}" ascending, "{}" when empty.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int c : elements()) {
      if (!first) out += ',';
      out += std::to_string(c);
      first = false;
    }
    return out + "}";
  }

  static ColorSet parse(std::string_view text, int r) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
      throw DomainError("malformed color set: '" + std::string(text) + "'");
    ColorSet s(r);
    std::string_view body = text.substr(1, text.size() - 2);
    if (body.empty()) return s;
    int previous = 0;
    while (true) {
      const auto comma = body.find(',');
      const std::string_view item = body.substr(0, comma);
      if (item.empty() || item.size() > 4) throw DomainError("malformed color set: '" + std::string(text) + "'");
      int c = 0;
      for (char ch : item) {
        if (ch < '0' || ch > '9') throw DomainError("malformed color set: '" + std::string(text) + "'");
        c = c * 10 + (ch - '0');
      }
      if (c <= previous) throw DomainError("color set not strictly ascending: '" + std::string(text) + "'");
      s.insert(c);
      previous = c;
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return s;
  }

  friend bool operator==(const ColorSet& a, const ColorSet& b) { return a.r_ == b.r_ && a.words_ == b.words_; }

  /// Canonical order: cardinality first, then the ascending element lists
  /// lexicographically (r breaks ties between otherwise equal sets).
  friend std::strong_ordering operator<=>(const ColorSet& a, const ColorSet& b) {
    if (auto c = a.cardinality() <=> b.cardinality(); c != 0) return c;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const auto x = a.words_[i];
      const auto y = b.words_[i];
      if (x == y) continue;
      // The lowest differing bit belongs to exactly one set; with equal
      // cardinality and equal lower words, that set has the smaller element
      // at the first differing position.
      const auto diff = x ^ y;
      const auto low = diff & (~diff + 1);
      return (x & low) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.r_ <=> b.r_;
  }

private:
  static void check_r(int r) {
    if (r < 1 || r > kMaxColors)
      throw DomainError("number of colors must be in 1.." + std::to_string(kMaxColors) + ", got " + std::to_string(r));
  }

  template <class Op>
  ColorSet combine(const ColorSet& o, Op op) const {
    if (o.r_ != r_) throw DomainError("color sets over different r (" + std::to_string(r_) + " vs " + std::to_string(o.r_) + ")");
    ColorSet s(r_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = op(words_[i], o.words_[i]);
    return s;
  }

  int r_ = 1;
  std::array<std::uint64_t, kMaxColors / 64> words_{};
};

/// Smallest positive N with N*v integral for every v.
inline mpz_class lcm_denominators(std::span<const Rational> values) {
  if (values.empty()) throw DomainError("lcm_denominators of an empty list");
  mpz_class n = 1;
  for (const auto& v : values) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), v.den().get_mpz_t());
  return n;
}

/// Every subset of [r] containing `set` (requires r <= 20).
inline std::vector<ColorSet> upward_closure(const ColorSet& set) {
  const int r = set.r();
  if (r > 20) throw DomainError("upward closure enumerates 2^r subsets; r must be <= 20");
  std::vector<ColorSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask)
    if ((mask & set.low_word()) == set.low_word()) out.push_back(ColorSet::from_mask(r, mask));
  return out;
}

}  // namespace gstar
