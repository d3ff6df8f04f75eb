#ifndef UCL_CHECK_HPP
#define UCL_CHECK_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ucl {

enum class Status { Pass, Fail, Inconclusive, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

/// One named check with an ordered key/value witness payload.
struct Check {
  std::string name;
  Status status = Status::Skipped;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> witness;
};

/// Independent, reproducible stream `stream` of the generator seeded by `seed`.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace ucl

#endif  // UCL_CHECK_HPP
