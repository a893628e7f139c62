// Walks through r = 2..9: best construction, its LP certificate, and a
// concrete coloring square built from it.
#include <iostream>

#include "gstar/gstar.hpp"

int main() {
  using namespace gstar;
  for (int r = 2; r <= 9; ++r) {
    const auto p = auto_construction(r);
    const auto m = marginals(p);
    const auto N = profile_grain(p);
    const auto sq = profile_to_square(p, 1);
    const auto touch = touched_counts(sq);
    std::cout << "r=" << r << "  objective=" << m.objective << "  2/sqrt(r) squared=" << Rational(4, r)
              << "  N=" << N << "  max touched at n=N: " << touch.max_touched << "\n";
  }

  const auto cert = enumerate_gstar(3);
  std::cout << "\ng*(3) by enumeration:\n" << to_text(cert);
  std::cout << "certificate re-checks: " << (certify(cert) ? "yes" : "no") << "\n";

  std::cout << "\ntwo-color optimum discretized at t=2:\n" << to_csv(profile_to_square(small_catalog(2), 2));
  return 0;
}
