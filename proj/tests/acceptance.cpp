// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gstar/gstar.hpp"

using namespace gstar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

int failures = 0;

// Runs one criterion. The body appends findings to `note` and returns pass/fail.
void criterion(int id, const std::string& title, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream note;
  bool ok = false;
  const auto start = Clock::now();
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note << "exception: " << e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << note.str() << "; "
            << seconds_since(start) << " s)" << std::endl;
}

Rational random_fraction(std::mt19937& rng, const Rational& lo, const Rational& hi, int steps = 97) {
  const int u = std::uniform_int_distribution<int>(0, steps)(rng);
  return lo + (hi - lo) * Rational(u, steps);
}

// closed form >= oracle >= closed form - 2k/res, decided exactly.
bool oracle_tracks(const BoundQuery& q, long long res, std::ostringstream& note) {
  const Surd closed = closed_form_surd(q);
  const Rational found = numeric_max_exact(q, res);
  const double reported = numeric_max(q, res);
  const bool ok = closed >= found && closed <= found + Rational(2) * q.k / Rational(res) && Rational::from_double(reported) <= found;
  if (!ok) note << "miss at k=" << q.k << " closed=" << closed.to_double() << " oracle=" << reported << "; ";
  return ok;
}

}  // namespace

int main() {
  criterion(1, "exact g*(2)=3/2 and g*(3)=5/4 with re-verified certificates", [](auto& note) {
    SearchOptions opt;
    opt.enumerate_large = true;
    auto t0 = Clock::now();
    const auto c2 = enumerate_gstar(2, opt);
    const double s2 = seconds_since(t0);
    t0 = Clock::now();
    const auto c3 = enumerate_gstar(3, opt);
    const double s3 = seconds_since(t0);
    note << "r=2 " << c2.value << " in " << s2 << " s, r=3 " << c3.value << " in " << s3 << " s";
    return c2.value == Rational(3, 2) && c2.mode == CertificateMode::Exact && certify(c2) && s2 < 1.0 &&
           c3.value == Rational(5, 4) && c3.mode == CertificateMode::Exact && certify(c3) && s3 < 600.0 &&
           certify(parse_certificate(to_text(c3)));
  });

  criterion(2, "g*(4)=1 certified without enumeration", [](auto& note) {
    SearchStats stats;
    const auto c = enumerate_gstar(4, {}, &stats);
    note << "value " << c.value << ", pairs examined " << stats.pairs_examined;
    return c.value == Rational(1) && c.value * c.value * Rational(4) == Rational(4) && c.mode == CertificateMode::Exact &&
           stats.pairs_examined == 0 && certify(c);
  });

  criterion(3, "auto construction objectives for r=2..9", [](auto& note) {
    const Rational expected[] = {Rational(3, 2), Rational(5, 4),  Rational(1),     Rational(11, 12),
                                 Rational(5, 6), Rational(7, 9), Rational(13, 18), Rational(2, 3)};
    bool ok = true;
    for (int r = 2; r <= 9; ++r) {
      const auto p = auto_construction(r);
      const Rational v = marginals(p).objective;
      note << v << (r < 9 ? " " : "");
      ok = ok && v == expected[r - 2];
    }
    return ok;
  });

  criterion(4, "universal formulas agree at boundaries and never increase", [](auto& note) {
    const auto start = Clock::now();
    bool ok = true;
    for (long long t = 1; t <= 10; ++t) {
      ok = ok && universal_low_value(t * t) == square_grid_value(t);
      ok = ok && universal_low_value(t * (t + 1)) == universal_high_value(t * (t + 1));
      ok = ok && universal_high_value((t + 1) * (t + 1)) == square_grid_value(t + 1);
    }
    for (long long r = 2; r < 200; ++r) ok = ok && universal_value(r + 1) <= universal_value(r);
    const double s = seconds_since(start);
    note << "checked t<=10 and 2<=r<=200";
    return ok && s < 1.0;
  });

  criterion(5, "t^2-1 construction values at t=3 and t=5", [](auto& note) {
    const Rational v3 = marginals(square_minus_one(3)).objective;
    const Rational v5 = marginals(square_minus_one(5)).objective;
    note << v3 << ", " << v5;
    return v3 == Rational(13, 18) && v5 == Rational(41, 100);
  });

  criterion(6, "brute-force oracle sandwich for r=2", [](auto& note) {
    auto t0 = Clock::now();
    const int g2 = brute_force_g(2, 2);
    const double s2 = seconds_since(t0);
    t0 = Clock::now();
    const int g4 = brute_force_g(4, 2);
    const double s4 = seconds_since(t0);
    const int g3 = brute_force_g(3, 2);
    const Rational gs(3, 2);
    note << "g(2,2)=" << g2 << " g(4,2)=" << g4 << " g(3,2)=" << g3;
    return g2 == 3 && g4 == 6 && s2 < 30 && s4 < 30 && Rational(g2) == gs * Rational(2) && Rational(g4) == gs * Rational(4) &&
           g3 >= (gs * Rational(3)).ceil() && Rational(g3) <= gs * Rational(3) + Rational(2);
  });

  criterion(7, "discretize-and-extend stays within objective*n + 2(N-1)", [](auto& note) {
    const auto start = Clock::now();
    std::vector<SolutionProfile> catalog;
    for (int r = 2; r <= 8; ++r) catalog.push_back(small_catalog(r));
    catalog.push_back(square_grid(3));
    int checked = 0;
    for (const auto& p : catalog) {
      const Rational obj = marginals(p).objective;
      const long grain = profile_grain(p).get_si();
      for (int n = 1; n <= 40; ++n) {
        const auto sq = extend_square(profile_to_square(p, static_cast<int>(n / grain)), n);
        const int worst = touched_counts(sq).max_touched;
        if (sq.n() != n || Rational(worst) > obj * Rational(n) + Rational(2 * (grain - 1))) {
          note << "violated at r=" << p.r() << " n=" << n;
          return false;
        }
        ++checked;
      }
    }
    note << checked << " (r, n) pairs";
    return seconds_since(start) < 10.0;
  });

  criterion(8, "two-color profile at t=2 touches (6, 6)", [](auto& note) {
    const auto rep = touched_counts(profile_to_square(small_catalog(2), 2));
    note << "(" << rep.touched[0] << ", " << rep.touched[1] << ")";
    return rep.touched == std::vector<int>{6, 6};
  });

  criterion(9, "analytic bound constants", [](auto& note) {
    const bool rational_ok = lemma6_bound(1, 1, Rational(5, 6)) == Rational(67, 144) &&
                             lemma6_bound(1, 1, Rational(7, 9)) == Rational(115, 324) &&
                             lemma7_bound(1, 1, Rational(7, 9)) == Rational(409, 972) &&
                             lemma7_bound(1, 1, Rational(13, 18)) == Rational(1321, 3888) &&
                             lemma3_bound(2, Rational(11, 12)) == Rational(5, 12);
    const bool surd_ok = corollary1_at_most(5, 1, Rational(11, 12), Rational(69, 100)) &&
                         corollary1_at_most(8, 2, Rational(13, 18), Rational(102, 100));
    note << "corollary maxima " << corollary1_max(5, 1, Rational(11, 12)) << ", " << corollary1_max(8, 2, Rational(13, 18));
    return rational_ok && surd_ok;
  });

  criterion(10, "grid oracle vs closed forms, 50 random queries per bound", [](auto& note) {
    const auto start = Clock::now();
    const long long res = 512;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> small(1, 3);
    bool ok = true;
    int counts[5] = {0, 0, 0, 0, 0};

    while (counts[0] < 50) {
      BoundQuery q;
      q.kind = BoundKind::Lemma3;
      q.s = std::uniform_int_distribution<int>(1, 6)(rng);
      q.k = random_fraction(rng, Rational(1, q.s), min(Rational(1), Rational(2, q.s)));
      ok = oracle_tracks(q, res, note) && ok;
      ++counts[0];
    }
    while (counts[1] < 50) {
      BoundQuery q;
      q.kind = BoundKind::Lemma4;
      q.s = std::uniform_int_distribution<int>(1, 6)(rng);
      q.k = random_fraction(rng, Rational(1, 10), Rational(1));
      q.A = random_fraction(rng, Rational(0), min(Rational(1), Rational(q.s) * q.k * q.k / Rational(4)));
      ok = oracle_tracks(q, res, note) && ok;
      ++counts[1];
    }
    while (counts[2] < 50) {
      BoundQuery q;
      q.kind = BoundKind::Lemma6;
      q.nI = small(rng);
      q.nO = small(rng);
      const Rational lo = Rational(2, q.nI + 2 * q.nO);
      const Rational hi = min(Rational(1), Rational(2, q.nI + q.nO));
      q.k = random_fraction(rng, lo, hi);
      if (q.k >= Rational(2, q.nI + q.nO)) continue;
      ok = oracle_tracks(q, res, note) && ok;
      ++counts[2];
    }
    while (counts[3] < 50) {
      BoundQuery q;
      q.kind = BoundKind::Lemma7;
      q.nI = small(rng) - 1;
      q.nO = small(rng);
      // Feasible region needs (|I|+|O1|) k >= 1.
      const Rational lo = Rational(1, q.nI + q.nO);
      const Rational hi = min(Rational(1), Rational(2, q.nI + q.nO));
      q.k = random_fraction(rng, lo, hi);
      try {
        (void)closed_form(q);
      } catch (const DomainError&) {
        continue;
      }
      ok = oracle_tracks(q, res, note) && ok;
      ++counts[3];
    }
    while (counts[4] < 50) {
      BoundQuery q;
      q.kind = BoundKind::Corollary1;
      q.r = std::uniform_int_distribution<int>(2, 9)(rng);
      q.s = std::uniform_int_distribution<long long>(1, q.r)(rng);
      q.k = random_fraction(rng, Rational(1, 3), Rational(1));
      try {
        (void)closed_form_surd(q);
      } catch (const DomainError&) {
        continue;
      }
      ok = oracle_tracks(q, res, note) && ok;
      ++counts[4];
    }
    const double s = seconds_since(start);
    note << "250 queries";
    return ok && s < 60.0;
  });

  criterion(11, "random-square profiles satisfy the area, weight and intersection properties; h is relabeling-invariant", [](auto& note) {
    std::mt19937 rng(77);
    int instances = 0, permuted = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 8)(rng);
      const int r = std::uniform_int_distribution<int>(1, 6)(rng);
      ColoringSquare sq(n, r);
      std::uniform_int_distribution<int> color(1, r);
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k) sq.set(c, k, color(rng));
      const auto p = square_to_profile(sq);
      if (!validate(p).ok() || !area_check(p).second || !weight_identity(p)) {
        note << "property failed on trial " << trial;
        return false;
      }
      ++instances;
      if (r > 4) continue;
      const auto p1 = p.support(Side::A);
      const auto p2 = p.support(Side::B);
      const Rational base = h_value(r, p1, p2);
      std::vector<int> perm(r);
      std::iota(perm.begin(), perm.end(), 1);
      for (int j = 0; j < 20; ++j) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Family q1, q2;
        for (const auto& s : p1) q1.push_back(s.permuted(perm));
        for (const auto& s : p2) q2.push_back(s.permuted(perm));
        if (h_value(r, q1, q2) != base) {
          note << "h changed under relabeling on trial " << trial;
          return false;
        }
        ++permuted;
      }
    }
    note << instances << " profiles, " << permuted << " relabelings";
    return instances == 1000;
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
