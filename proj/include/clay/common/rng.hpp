#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace clay {

// Seed derived from a list of labelled parts via SHA-256. Used wherever an
// output must be a pure function of its declared inputs.
std::uint64_t derive_seed(std::initializer_list<std::string_view> parts);

// mt19937_64 is fully specified by the standard; the distributions are not,
// so all mapping to ranges is done here to keep streams portable.
class DeterministicRng {
public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // `k` distinct indices out of [0, n), returned in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

private:
  std::mt19937_64 engine_;
};

} // namespace clay
