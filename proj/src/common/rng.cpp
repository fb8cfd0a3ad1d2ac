#include "clay/common/rng.hpp"

#include "clay/common/digest.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace clay {

std::uint64_t derive_seed(std::initializer_list<std::string_view> parts) {
  std::string buf;
  for (auto p : parts) {
    buf += std::to_string(p.size());
    buf += ':';
    buf += p;
  }
  const auto raw = sha256_raw(buf);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i)
    seed = (seed << 8) | raw[static_cast<std::size_t>(i)];
  return seed;
}

std::size_t DeterministicRng::index(std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit)
    x = next();
  return static_cast<std::size_t>(x % bound);
}

std::vector<std::size_t> DeterministicRng::sample_indices(std::size_t n,
                                                          std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(pool[i], pool[i + index(n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

} // namespace clay
