#include "ucl/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <iomanip>

#include "ucl/error.hpp"

namespace ucl {

std::uint64_t binomial(long long n, long long k) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "binomial with negative upper index");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > UINT64_MAX) throw Error(ErrorCode::InvalidArgument, "binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> pn_line_bundle_cohomology(int n, long long l) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "projective space dimension must be at least 1");
  std::vector<std::uint64_t> h(static_cast<std::size_t>(n) + 1, 0);
  if (l >= 0) h[0] = binomial(n + l, n);
  if (l <= -n - 1) h[static_cast<std::size_t>(n)] = binomial(-l - 1, n);
  return h;
}

std::vector<std::uint64_t> hypersurface_line_bundle_cohomology(int n, int d, long long l) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "hypersurface cohomology needs n >= 2");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  const auto sub = pn_line_bundle_cohomology(n, l - d);
  const auto amb = pn_line_bundle_cohomology(n, l);
  std::vector<std::uint64_t> h(static_cast<std::size_t>(n), 0);
  // H^1 and H^{n-1} of P^n vanish, multiplication by f is injective on H^0
  // and surjective on H^n; the long exact sequence splits into these pieces.
  h[0] = amb[0] - sub[0];
  h[static_cast<std::size_t>(n) - 1] += sub[static_cast<std::size_t>(n)] - amb[static_cast<std::size_t>(n)];
  return h;
}

std::vector<std::uint64_t> hypersurface_twist_cohomology(int n, int d, int j) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "hypersurface cohomology needs n >= 2");
  if (j < 1 || j > n - 1)
    throw Error(ErrorCode::InvalidArgument, "twist j must satisfy 1 <= j <= n-1 (got " + std::to_string(j) + ")");
  return hypersurface_line_bundle_cohomology(n, d, -j);
}

bool structure_sheaf_is_ulrich(int n, int d) {
  for (int j = 1; j <= n - 1; ++j) {
    const auto h = hypersurface_twist_cohomology(n, d, j);
    if (std::any_of(h.begin(), h.end(), [](std::uint64_t v) { return v != 0; })) return false;
  }
  return true;
}

std::string cohomology_table_text(int n, int d) {
  std::ostringstream os;
  os << "h^i(Y, O_Y(-j)) for a degree-" << d << " hypersurface in P^" << n << "\n";
  os << std::setw(4) << "j";
  for (int i = 0; i < n; ++i) os << std::setw(8) << ("h^" + std::to_string(i));
  os << "\n";
  for (int j = 1; j <= n - 1; ++j) {
    os << std::setw(4) << j;
    for (auto v : hypersurface_twist_cohomology(n, d, j)) os << std::setw(8) << v;
    os << "\n";
  }
  return os.str();
}

std::string cohomology_table_csv(int n, int d) {
  std::ostringstream os;
  os << "n,d,j,i,h\n";
  for (int j = 1; j <= n - 1; ++j) {
    const auto h = hypersurface_twist_cohomology(n, d, j);
    for (std::size_t i = 0; i < h.size(); ++i) os << n << "," << d << "," << j << "," << i << "," << h[i] << "\n";
  }
  return os.str();
}

}  // namespace ucl
