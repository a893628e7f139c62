#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gstar/errors.hpp"
#include "gstar/rational.hpp"

namespace gstar {

/// base + coeff * sqrt(radicand) with rational parts and radicand >= 0.
/// Comparisons against rationals are exact (by squaring after sign checks).
struct Surd {
  Rational base;
  Rational coeff;
  Rational radicand;

  double to_double() const { return base.to_double() + coeff.to_double() * std::sqrt(radicand.to_double()); }

  /// Sign of (*this - x).
  std::strong_ordering compare(const Rational& x) const {
    // coeff*sqrt(radicand) versus y = x - base.
    const Rational y = x - base;
    const int sv = radicand.is_zero() ? 0 : coeff.sign();
    const int sy = y.sign();
    if (sv != sy) return sv < sy ? std::strong_ordering::less : std::strong_ordering::greater;
    if (sv == 0) return std::strong_ordering::equal;
    const Rational lhs = coeff * coeff * radicand;
    const Rational rhs = y * y;
    const auto c = lhs <=> rhs;
    return sv > 0 ? c : 0 <=> c;
  }

  bool operator<=(const Rational& x) const { return compare(x) <= 0; }
  bool operator>=(const Rational& x) const { return compare(x) >= 0; }
};

// ---------------------------------------------------------------------------
// Closed-form area bounds. Variables c_i, d_i in [0,1] with c_i + d_i <= k.

/// Given sum c_i >= 1: sum c_i d_i <= k - 1/s.
inline Rational lemma3_bound(long long s, const Rational& k) {
  if (s < 1) throw DomainError("lemma3 needs s >= 1");
  if (k.sign() <= 0 || k > Rational(1)) throw DomainError("lemma3 needs 0 < k <= 1, got k=" + k.to_string());
  if (k > Rational(2, s)) throw DomainError("lemma3 needs k <= 2/s; k=" + k.to_string() + " > 2/" + std::to_string(s));
  return k - Rational(1, s);
}

struct SurdInterval {
  Surd lower;
  Surd upper;
  double lower_double;
  double upper_double;
};

/// Given sum c_i d_i >= A over s indices: the sums of min(c_i,d_i) and of
/// max(c_i,d_i) lie in s(k/2 -/+ sqrt(k^2/4 - A/s)).
inline SurdInterval lemma4_interval(long long s, const Rational& k, const Rational& A) {
  if (s < 1) throw DomainError("lemma4 needs s >= 1");
  if (k.sign() <= 0 || k > Rational(1)) throw DomainError("lemma4 needs 0 < k <= 1, got k=" + k.to_string());
  if (A.sign() < 0 || A > Rational(1)) throw DomainError("lemma4 needs 0 <= A <= 1, got A=" + A.to_string());
  const Rational radicand = k * k / Rational(4) - A / Rational(s);
  if (radicand.sign() < 0) throw DomainError("lemma4 radicand k^2/4 - A/s = " + radicand.to_string() + " is negative");
  const Rational mid = Rational(s) * k / Rational(2);
  SurdInterval out{{mid, Rational(-s), radicand}, {mid, Rational(s), radicand}, 0.0, 0.0};
  out.upper_double = out.upper.to_double();
  // lower * upper = s*A; dividing avoids cancellation in the difference.
  out.lower_double = out.upper_double > 0 ? (Rational(s) * A).to_double() / out.upper_double : 0.0;
  return out;
}

/// Corollary form: sum over all r indices of c_i d_i >= 1 bounds any s of them.
inline SurdInterval corollary1_interval(long long r, long long s, const Rational& k) {
  if (s < 1 || s > r) throw DomainError("corollary1 needs 1 <= s <= r");
  const Rational A = Rational(1) - Rational(r - s) * k * k / Rational(4);
  if (A.sign() < 0 || A > Rational(1))
    throw DomainError("corollary1 needs 1 - (r-s)k^2/4 in [0,1], got " + A.to_string());
  return lemma4_interval(s, k, A);
}

inline double corollary1_max(long long r, long long s, const Rational& k) { return corollary1_interval(r, s, k).upper_double; }

/// Exact: corollary1_max(r, s, k) <= x.
inline bool corollary1_at_most(long long r, long long s, const Rational& k, const Rational& x) {
  return corollary1_interval(r, s, k).upper <= x;
}

/// Index set split I, O1, O2 with |O1| = |O2| = nO; sum over I+O1 of c >= 1
/// and sum over I+O2 of d >= 1.
inline Rational lemma6_bound(long long nI, long long nO, const Rational& k) {
  if (nI < 1 || nO < 1) throw DomainError("lemma6 needs |I| >= 1 and |O1| >= 1");
  if (k.sign() <= 0 || k > Rational(1)) throw DomainError("lemma6 needs 0 < k <= 1, got k=" + k.to_string());
  if (!(k < Rational(2, nI + nO))) throw DomainError("lemma6 needs k < 2/(|I|+|O1|), got k=" + k.to_string());
  const Rational e = (Rational(2) - Rational(nI) * k) / Rational(2 * nO);
  // e > k exactly when k < 2/(|I|+2|O1|), where the hypotheses admit no point.
  if (e > k) throw DomainError("lemma6 hypotheses are infeasible for k < 2/(|I|+2|O1|); k=" + k.to_string());
  return Rational(nI) * k * k / Rational(4) + Rational(2 * nO) * e * (k - e);
}

/// Index set split I, O1, O2 with |O1| = |O2| = nO; sum over I+O1 of c >= 1
/// and sum over I+O2 of c >= 1.
inline Rational lemma7_bound(long long nI, long long nO, const Rational& k) {
  if (nI < 0 || nO < 1) throw DomainError("lemma7 needs |I| >= 0 and |O1| >= 1");
  if (k.sign() <= 0 || k > Rational(1)) throw DomainError("lemma7 needs 0 < k <= 1, got k=" + k.to_string());
  if (!(k < Rational(2, nI + nO))) throw DomainError("lemma7 needs k < 2/(|I|+|O1|), got k=" + k.to_string());
  const Rational e1 = (Rational(2) + Rational(nI) * k) / Rational(2 * nI + nO) - k / Rational(2);
  const Rational e2 = (Rational(1) + Rational(nI) * k / Rational(2)) / Rational(2 * nI + nO);
  if (e1.sign() < 0 || e1 > k || e2.sign() < 0 || e2 > k)
    throw DomainError("lemma7 stationary point e1=" + e1.to_string() + ", e2=" + e2.to_string() + " leaves [0,k]");
  return Rational(nI) * e1 * (k - e1) + Rational(2 * nO) * e2 * (k - e2);
}

// ---------------------------------------------------------------------------
// Grid maximizer.

enum class BoundKind { Lemma3, Lemma4, Lemma6, Lemma7, Corollary1 };

struct BoundQuery {
  BoundKind kind = BoundKind::Lemma3;
  long long s = 1;   ///< lemma3, lemma4, corollary1
  long long nI = 0;  ///< lemma6, lemma7
  long long nO = 1;  ///< lemma6, lemma7
  Rational k = 1;
  Rational A = 0;    ///< lemma4
  long long r = 1;   ///< corollary1
};

/// Closed form for a rational-valued query.
inline Rational closed_form(const BoundQuery& q) {
  switch (q.kind) {
    case BoundKind::Lemma3: return lemma3_bound(q.s, q.k);
    case BoundKind::Lemma6: return lemma6_bound(q.nI, q.nO, q.k);
    case BoundKind::Lemma7: return lemma7_bound(q.nI, q.nO, q.k);
    default: throw DomainError("lemma4 and corollary1 are irrational; use closed_form_surd");
  }
}

/// Upper end of the interval for lemma4/corollary1 queries.
inline Surd closed_form_surd(const BoundQuery& q) {
  switch (q.kind) {
    case BoundKind::Lemma4: return lemma4_interval(q.s, q.k, q.A).upper;
    case BoundKind::Corollary1: return corollary1_interval(q.r, q.s, q.k).upper;
    default: {
      const Rational v = closed_form(q);
      return {v, Rational(0), Rational(0)};
    }
  }
}

namespace detail {

using i128 = __int128;

inline long long small_part(const mpz_class& z) {
  if (!z.fits_slong_p() || abs(z) > 1000000000) throw DomainError("numeric_max needs numerators and denominators below 1e9");
  return z.get_si();
}

// Coordinates c_i = j_i * k / res on an integer grid. Feasibility and the
// objective are compared exactly in integers.
class GridSearch {
public:
  GridSearch(const BoundQuery& q, long long res) : q_(q), res_(res), kp_(small_part(q.k.num())), kq_(small_part(q.k.den())) {
    switch (q.kind) {
      case BoundKind::Lemma3: dim_ = q.s; break;
      case BoundKind::Lemma4:
      case BoundKind::Corollary1: dim_ = q.s; break;
      case BoundKind::Lemma6:
      case BoundKind::Lemma7: dim_ = q.nI + 2 * q.nO; break;
    }
    if (dim_ > 64) throw DomainError("numeric_max supports at most 64 coordinates");
  }

  /// Best feasible objective found, exactly.
  Rational run() {
    std::vector<long long> j = start();
    if (!feasible(j)) throw DomainError("no feasible grid point for this query");
    i128 best = score(j);
    for (long long step = std::max<long long>(1, res_ / 4);; step /= 2) {
      while (improve(j, best, step)) {
      }
      if (step == 1) break;
    }
    return value(j);
  }

private:
  bool linear_objective() const { return q_.kind == BoundKind::Lemma4 || q_.kind == BoundKind::Corollary1; }
  long long lo() const { return linear_objective() ? res_ / 2 : 0; }

  std::vector<long long> start() const {
    std::vector<long long> j(dim_, res_);
    if (linear_objective()) {
      // Largest feasible point on the diagonal, by bisection. Greedy single
      // moves from the centre drift off-diagonal and stall there.
      long long lo = res_ / 2, hi = res_;
      std::fill(j.begin(), j.end(), hi);
      if (feasible(j)) return j;
      while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        std::fill(j.begin(), j.end(), mid);
        (feasible(j) ? lo : hi) = mid;
      }
      std::fill(j.begin(), j.end(), lo);
    }
    if (q_.kind == BoundKind::Lemma6) {
      for (long long i = 0; i < q_.nI; ++i) j[i] = res_ / 2;
      for (long long i = 0; i < q_.nO; ++i) j[q_.nI + q_.nO + i] = 0;
    }
    return j;
  }

  i128 sum(const std::vector<long long>& j, long long from, long long to) const {
    i128 t = 0;
    for (long long i = from; i < to; ++i) t += j[i];
    return t;
  }

  // Integer multiple of the true objective (scale depends only on the query).
  i128 score(const std::vector<long long>& j) const {
    i128 t = 0;
    if (linear_objective()) return sum(j, 0, dim_);
    for (long long x : j) t += static_cast<i128>(x) * (res_ - x);
    return t;
  }

  Rational value(const std::vector<long long>& j) const {
    const Rational u = q_.k / Rational(res_);
    if (linear_objective()) return Rational(static_cast<long long>(sum(j, 0, dim_))) * u;
    Rational t = 0;
    for (long long x : j) t += Rational(x * (res_ - x));
    return t * u * u;
  }

  bool feasible(const std::vector<long long>& j) const {
    for (long long x : j)
      if (x < lo() || x > res_) return false;
    const i128 kp = kp_, kq = kq_, res = res_;
    switch (q_.kind) {
      case BoundKind::Lemma3:
        // sum c >= 1  <=>  sum j * kp >= res * kq
        return sum(j, 0, dim_) * kp >= res * kq;
      case BoundKind::Lemma6: {
        const long long nI = q_.nI, nO = q_.nO;
        const i128 c_side = sum(j, 0, nI + nO);
        const i128 d_side = (nI + nO) * res - sum(j, 0, nI) - sum(j, nI + nO, nI + 2 * nO);
        return c_side * kp >= res * kq && d_side * kp >= res * kq;
      }
      case BoundKind::Lemma7: {
        const long long nI = q_.nI, nO = q_.nO;
        const i128 s1 = sum(j, 0, nI + nO);
        const i128 s2 = sum(j, 0, nI) + sum(j, nI + nO, nI + 2 * nO);
        return s1 * kp >= res * kq && s2 * kp >= res * kq;
      }
      case BoundKind::Lemma4:
      case BoundKind::Corollary1: {
        // sum c(k-c) >= A  <=>  sum j(res-j) * kp^2 * Aq >= Ap * res^2 * kq^2
        Rational A = q_.A;
        i128 fixed = 0;
        if (q_.kind == BoundKind::Corollary1) {
          A = Rational(1);
          fixed = static_cast<i128>(q_.r - q_.s) * (res / 2) * (res / 2);
        }
        const i128 ap = small_part(A.num()), aq = small_part(A.den());
        i128 prod = fixed;
        for (long long x : j) prod += static_cast<i128>(x) * (res_ - x);
        return prod * kp * kp * aq >= ap * res * res * kq * kq;
      }
    }
    return false;
  }

  bool try_move(std::vector<long long>& j, i128& best, std::vector<std::pair<long long, long long>> delta) {
    for (auto [i, d] : delta) j[i] += d;
    if (feasible(j)) {
      const i128 s = score(j);
      if (s > best) {
        best = s;
        return true;
      }
    }
    for (auto [i, d] : delta) j[i] -= d;
    return false;
  }

  // Single moves, pair moves with every sign pattern, then triples.
  bool improve(std::vector<long long>& j, i128& best, long long step) {
    const long long n = dim_;
    for (long long a = 0; a < n; ++a)
      for (long long sa : {step, -step})
        if (try_move(j, best, {{a, sa}})) return true;
    for (long long a = 0; a < n; ++a)
      for (long long b = a + 1; b < n; ++b)
        for (long long sa : {step, -step})
          for (long long sb : {step, -step})
            if (try_move(j, best, {{a, sa}, {b, sb}})) return true;
    if (n <= 12)
      for (long long a = 0; a < n; ++a)
        for (long long b = a + 1; b < n; ++b)
          for (long long c = b + 1; c < n; ++c)
            for (long long sa : {step, -step})
              for (long long sb : {step, -step})
                for (long long sc : {step, -step})
                  if (try_move(j, best, {{a, sa}, {b, sb}, {c, sc}})) return true;
    return false;
  }

  BoundQuery q_;
  long long res_;
  long long kp_;
  long long kq_;
  long long dim_ = 0;
};

}  // namespace detail

/// Best feasible grid point for the lemma's maximization, as an exact rational.
/// Always a lower estimate of the true maximum.
inline Rational numeric_max_exact(const BoundQuery& q, long long resolution) {
  if (resolution < 8) throw DomainError("numeric_max needs resolution >= 8");
  if (resolution % 2 != 0) ++resolution;
  // Validate the query's own hypotheses first.
  (void)closed_form_surd(q);
  return detail::GridSearch(q, resolution).run();
}

/// numeric_max_exact rounded toward zero to a double, so the double never
/// exceeds the exact feasible value.
inline double numeric_max(const BoundQuery& q, long long resolution) {
  const Rational v = numeric_max_exact(q, resolution);
  double d = v.to_double();
  if (Rational::from_double(d) > v) d = std::nextafter(d, -INFINITY);
  return d;
}

}  // namespace gstar
