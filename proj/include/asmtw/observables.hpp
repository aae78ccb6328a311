#pragma once
// Brute-force slice counts behind the trapezoid identities: configurations
// whose frozen corner reaches a prescribed depth, on both the corner-sum
// side and the matching side.

#include <asmtw/dimer.hpp>
#include <asmtw/top_path.hpp>

#include <utility>

namespace asmtw {

// First component: corner-sum matrices of size n with first defect at depth
// >= n+1-m. Second: matchings whose diagonal band edges ((k,k+1),(k,k+2))
// are covered for all 0 <= k <= n-1-m. Both equal the (n,m)-trapezoid count.
inline std::pair<Int, Int> trapezoid_slices(int n, int m,
                                            int cap = kEnumerationCap) {
  if (m < 0 || m > n)
    throw std::invalid_argument("trapezoid_slices: need 0 <= m <= n");
  Int gog_count = 0;
  for_each_asm(n + 1, [&](const AsmMatrix& a) {
    if (x_gog(asm_to_pcsm(a)) >= n + 1 - m) ++gog_count;
  }, cap + 1);
  Int magog_count = 0;
  auto g = build_dimer_graph(n);
  for_each_matching(n, [&](const DimerMatching& mm) {
    for (int k = 0; k <= n - 1 - m; ++k)
      if (!mm.covers(g->index_of(k, k + 1), g->index_of(k, k + 2))) return;
    ++magog_count;
  }, cap);
  return {gog_count, magog_count};
}

}  // namespace asmtw
