#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "gstar/errors.hpp"

namespace gstar {

class DivisionByZero : public DomainError {
public:
  DivisionByZero() : DomainError("rational division by zero") {}
};

/// Exact fraction over unbounded integers. Always stored reduced with a
/// positive denominator, so equality is structural.
class Rational {
public:
  Rational() = default;
  Rational(long long value) : v_(static_cast<long>(value)) {}  // NOLINT: implicit by design of numeric literals
  Rational(long long num, long long den) : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& value) : v_(value) {}

  /// Exact value of a finite double.
  static Rational from_double(double d) {
    if (!std::isfinite(d)) throw DomainError("cannot represent a non-finite double exactly");
    return from_mpq(mpq_class(d));
  }

  /// Parses "p/q" or "p" (optional leading '-'); rejects zero denominators,
  /// whitespace and any other decoration.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw DomainError("malformed rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    if (text.front() == '-') n = -n;
    return Rational(n, d);
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }
  double to_double() const { return v_.get_d(); }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
  }

  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
  }

  Rational operator-() const { return from_mpq(-v_); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    return from_mpq(1 / v_);
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

  const mpq_class& raw() const { return v_; }

private:
  static Rational from_mpq(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);
    return r;
  }

  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace gstar
