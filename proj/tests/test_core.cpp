#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <vector>

#include "gstar/color_set.hpp"
#include "gstar/rational.hpp"

using gstar::ColorSet;
using gstar::DomainError;
using gstar::Rational;

namespace {

// Unreduced fraction over boost cpp_int, an independent route to the same values.
struct NaiveFraction {
  boost::multiprecision::cpp_int num;
  boost::multiprecision::cpp_int den;
};

NaiveFraction add(const NaiveFraction& x, const NaiveFraction& y) { return {x.num * y.den + y.num * x.den, x.den * y.den}; }
NaiveFraction sub(const NaiveFraction& x, const NaiveFraction& y) { return {x.num * y.den - y.num * x.den, x.den * y.den}; }
NaiveFraction mul(const NaiveFraction& x, const NaiveFraction& y) { return {x.num * y.num, x.den * y.den}; }
NaiveFraction div(const NaiveFraction& x, const NaiveFraction& y) {
  NaiveFraction q{x.num * y.den, x.den * y.num};
  if (q.den < 0) {
    q.num = -q.num;
    q.den = -q.den;
  }
  return q;
}

bool same_value(const Rational& r, const NaiveFraction& f) {
  const boost::multiprecision::cpp_int rn(r.num().get_str());
  const boost::multiprecision::cpp_int rd(r.den().get_str());
  return rn * f.den == f.num * rd;
}

int naive_cmp(const NaiveFraction& x, const NaiveFraction& y) {
  const auto lhs = x.num * y.den;
  const auto rhs = y.num * x.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

TEST(Rational, AddsThirdAndSixth) { EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2)); }

TEST(Rational, StoresReducedForm) {
  const Rational x(2, 4);
  EXPECT_EQ(x.num(), 1);
  EXPECT_EQ(x.den(), 2);
  EXPECT_EQ(x.to_string(), "1/2");
  const Rational y(3, -6);
  EXPECT_EQ(y.num(), -1);
  EXPECT_EQ(y.den(), 2);
}

TEST(Rational, ComparesCrossMultiplied) {
  EXPECT_GT(Rational(11, 12), Rational(5, 6));
  EXPECT_LT(Rational(-1, 2), Rational(0));
  EXPECT_EQ(Rational(7, 7), Rational(1));
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), gstar::DivisionByZero);
  EXPECT_THROW(Rational(1, 0), gstar::DivisionByZero);
  EXPECT_THROW(Rational(0).reciprocal(), DomainError);
}

TEST(Rational, ParseAndPrintRoundTrip) {
  for (const char* s : {"0", "1", "-3", "3/2", "-13/18", "1321/3888"}) EXPECT_EQ(Rational::parse(s).to_string(), s);
  EXPECT_EQ(Rational::parse("4/6"), Rational(2, 3));
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1.5", " 1", "1 ", "+1", "--1", "1/-2", "a"})
    EXPECT_THROW(Rational::parse(bad), DomainError) << bad;
}

TEST(Rational, FloorCeilAndDoubles) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}

TEST(Rational, RandomArithmeticMatchesNaiveFractions) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long long> numd(-1000000000LL, 1000000000LL);
  std::uniform_int_distribution<long long> dend(1, 1000000000LL);
  for (int trial = 0; trial < 2000; ++trial) {
    const long long a = numd(rng), b = dend(rng), c = numd(rng), d = dend(rng);
    const Rational x(a, b), y(c, d);
    const NaiveFraction fx{a, b}, fy{c, d};
    EXPECT_TRUE(same_value(x + y, add(fx, fy)));
    EXPECT_TRUE(same_value(x - y, sub(fx, fy)));
    EXPECT_TRUE(same_value(x * y, mul(fx, fy)));
    if (c != 0) {
      EXPECT_TRUE(same_value(x / y, div(fx, fy)));
    }
    const int expected = naive_cmp(fx, fy);
    EXPECT_EQ((x <=> y) < 0, expected < 0);
    EXPECT_EQ(x == y, expected == 0);
    // Stored form is reduced with a positive denominator.
    const auto s = x * y + x;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s.num().get_mpz_t(), s.den().get_mpz_t());
    EXPECT_EQ(g, 1);
    EXPECT_GT(s.den(), 0);
  }
}

TEST(Rational, ChainedProductsGrowBeyondMachineWords) {
  Rational x = 1;
  for (int i = 2; i < 60; ++i) x *= Rational(i + 1, i * i + 1);
  NaiveFraction f{1, 1};
  for (int i = 2; i < 60; ++i) f = mul(f, NaiveFraction{i + 1, i * i + 1});
  EXPECT_TRUE(same_value(x, f));
  EXPECT_GT(mpz_sizeinbase(x.den().get_mpz_t(), 2), 64U);
}

TEST(ColorSet, IntersectionUnionMinus) {
  const auto a = ColorSet::of(3, {1, 2});
  const auto b = ColorSet::of(3, {1, 3});
  EXPECT_EQ(a.intersect(b), ColorSet::of(3, {1}));
  EXPECT_EQ(a.unite(b), ColorSet::full(3));
  EXPECT_EQ(a.minus(b), ColorSet::of(3, {2}));
  EXPECT_FALSE(a.is_disjoint(b));
}

TEST(ColorSet, DisjointAndCardinality) {
  EXPECT_TRUE(ColorSet::of(5, {1, 2}).is_disjoint(ColorSet::of(5, {3, 4})));
  EXPECT_EQ(ColorSet::of(9, {1, 4, 7}).cardinality(), 3);
  EXPECT_TRUE(ColorSet(4).is_disjoint(ColorSet::full(4)));
}

TEST(ColorSet, MismatchedRThrows) {
  EXPECT_THROW(ColorSet::of(3, {1}).intersect(ColorSet::of(4, {1})), DomainError);
  EXPECT_THROW(ColorSet::of(3, {4}), DomainError);
  EXPECT_THROW(ColorSet::of(3, {0}), DomainError);
  EXPECT_THROW(ColorSet(0), DomainError);
  EXPECT_THROW(ColorSet::from_mask(3, 0b1000), DomainError);
}

TEST(ColorSet, HighColorsUseUpperWords) {
  auto s = ColorSet::of(200, {1, 64, 65, 130, 200});
  EXPECT_EQ(s.cardinality(), 5);
  EXPECT_EQ(s.elements(), (std::vector<int>{1, 64, 65, 130, 200}));
  EXPECT_EQ(ColorSet::parse(s.to_string(), 200), s);
  EXPECT_EQ(s.minus(ColorSet::of(200, {1})).min_color(), 64);
}

TEST(ColorSet, TextFormat) {
  EXPECT_EQ(ColorSet(3).to_string(), "{}");
  EXPECT_EQ(ColorSet::of(5, {3, 1}).to_string(), "{1,3}");
  EXPECT_EQ(ColorSet::parse("{2,5}", 5), ColorSet::of(5, {2, 5}));
  EXPECT_EQ(ColorSet::parse("{}", 2), ColorSet(2));
  for (const char* bad : {"", "{", "1,2", "{1,,2}", "{2,1}", "{1,1}", "{1,6}", "{ 1}", "{a}"})
    EXPECT_THROW(ColorSet::parse(bad, 5), DomainError) << bad;
}

TEST(ColorSet, CanonicalOrderIsCardinalityThenElements) {
  std::vector<ColorSet> sets{ColorSet::of(4, {2, 3}), ColorSet::of(4, {4}), ColorSet::of(4, {1, 4}), ColorSet(4),
                             ColorSet::of(4, {1}), ColorSet::of(4, {1, 2, 3}), ColorSet::of(4, {1, 3})};
  std::sort(sets.begin(), sets.end());
  std::vector<std::string> text;
  for (const auto& s : sets) text.push_back(s.to_string());
  EXPECT_EQ(text, (std::vector<std::string>{"{}", "{1}", "{4}", "{1,3}", "{1,4}", "{2,3}", "{1,2,3}"}));
}

TEST(ColorSet, OrderAgreesWithElementListsOnAllSubsets) {
  const int r = 5;
  for (std::uint64_t x = 0; x < 32; ++x)
    for (std::uint64_t y = 0; y < 32; ++y) {
      const auto a = ColorSet::from_mask(r, x), b = ColorSet::from_mask(r, y);
      const auto ea = a.elements(), eb = b.elements();
      const bool expected = ea.size() != eb.size() ? ea.size() < eb.size() : ea < eb;
      EXPECT_EQ(a < b, expected) << a.to_string() << " vs " << b.to_string();
    }
}

TEST(ColorSet, UpwardClosure) {
  const auto up = gstar::upward_closure(ColorSet::of(3, {1}));
  EXPECT_EQ(up.size(), 4U);
  for (const auto& s : up) EXPECT_TRUE(s.contains(1));
}

TEST(LcmDenominators, Examples) {
  EXPECT_EQ(gstar::lcm_denominators(std::vector<Rational>{Rational(1, 2), Rational(1, 3)}), 6);
  EXPECT_EQ(gstar::lcm_denominators(std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1)}), 2);
  EXPECT_EQ(gstar::lcm_denominators(std::vector<Rational>{Rational(5, 12), Rational(7, 12), Rational(1, 2), Rational(1, 3)}), 12);
  EXPECT_THROW(gstar::lcm_denominators(std::vector<Rational>{}), DomainError);
}

TEST(LcmDenominators, IsTheLeastCommonMultiple) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> den(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> vs;
    for (int i = 0; i < 1 + trial % 5; ++i) vs.emplace_back(1 + den(rng), den(rng));
    const mpz_class n = gstar::lcm_denominators(vs);
    for (const auto& v : vs) EXPECT_TRUE(mpz_divisible_p(n.get_mpz_t(), v.den().get_mpz_t()));
    // No proper divisor works: n/p fails for every prime p dividing n.
    for (unsigned long p = 2; p <= 60; ++p) {
      if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
      const mpz_class smaller = n / p;
      bool all = true;
      for (const auto& v : vs) all = all && mpz_divisible_p(smaller.get_mpz_t(), v.den().get_mpz_t());
      EXPECT_FALSE(all);
    }
  }
}
