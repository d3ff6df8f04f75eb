#ifndef UCL_COHOMOLOGY_HPP
#define UCL_COHOMOLOGY_HPP

// Closed-form cohomology of line bundles on P^n and of twists O_Y(-j) of a
// degree-d hypersurface Y in P^n.

#include <cstdint>
#include <string>
#include <vector>

namespace ucl {

/// C(n, k) for n >= 0; zero when k < 0 or k > n. Throws on overflow.
std::uint64_t binomial(long long n, long long k);

/// h^i(P^n, O(l)) for i = 0..n.
std::vector<std::uint64_t> pn_line_bundle_cohomology(int n, long long l);

/// h^i(Y, O_Y(l)) for i = 0..n-1, Y a hypersurface of degree d in P^n
/// (n >= 2), from 0 -> O(l-d) -> O(l) -> O_Y(l) -> 0.
std::vector<std::uint64_t> hypersurface_line_bundle_cohomology(int n, int d, long long l);

/// h^i(Y, O_Y(-j)) for 1 <= j <= n-1; the range is enforced.
std::vector<std::uint64_t> hypersurface_twist_cohomology(int n, int d, int j);

/// True when every h^i(Y, O_Y(-j)), 1 <= j <= n-1, vanishes.
bool structure_sheaf_is_ulrich(int n, int d);

/// Aligned text table: one row per j in [1, n-1], one column per i.
std::string cohomology_table_text(int n, int d);
/// CSV with header `n,d,j,i,h`.
std::string cohomology_table_csv(int n, int d);

}  // namespace ucl

#endif  // UCL_COHOMOLOGY_HPP
