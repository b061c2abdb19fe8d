#include "icrl/rng.hpp"

#include <limits>
#include <vector>

namespace icrl {

Rng::Rng(std::uint64_t seed, std::string_view stream) {
  std::vector<std::uint32_t> words = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (char ch : stream) words.push_back(static_cast<unsigned char>(ch));
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

}  // namespace icrl
