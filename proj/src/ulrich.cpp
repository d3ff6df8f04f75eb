#include "ucl/ulrich.hpp"

namespace ucl {

std::vector<std::uint64_t> expected_hilbert(std::uint64_t t, std::size_t n, unsigned max_degree) {
  std::vector<std::uint64_t> out;
  for (unsigned e = 0; e <= max_degree; ++e) {
    if (n == 0) {
      out.push_back(e == 0 ? t : 0);
      continue;
    }
    out.push_back(t * binomial(static_cast<long long>(e + n - 1), static_cast<long long>(n - 1)));
  }
  return out;
}

}  // namespace ucl
