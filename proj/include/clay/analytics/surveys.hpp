#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace clay {

using Rational = boost::rational<std::int64_t>;

// "18.5", "-3", "7/2". Throws a validation Error otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational &r);
double to_double(const Rational &r);

// NASA-TLX ------------------------------------------------------------------

enum class TlxSubscale {
  Mental,
  Physical,
  Temporal,
  Effort,
  Performance,
  Frustration
};

inline constexpr int kTlxSubscales = 6;
inline constexpr int kTlxPairs = 15;

std::string_view to_string(TlxSubscale s) noexcept;

// The 15 unordered subscale pairs, (i, j) with i < j, in lexicographic order.
const std::array<std::pair<TlxSubscale, TlxSubscale>, kTlxPairs> &tlx_pairs();

struct TlxResponse {
  std::array<Rational, kTlxSubscales> ratings{}; // each in [0, 100]
  // Winner of each pair in tlx_pairs() order, when weighting was collected.
  std::optional<std::array<TlxSubscale, kTlxPairs>> pair_winners;
};

void validate(const TlxResponse &r);

// Per-subscale tally of pair wins; sums to 15.
std::array<int, kTlxSubscales> tlx_weights(const TlxResponse &r);

Rational nasa_tlx_raw(const TlxResponse &r);
Rational nasa_tlx_weighted(const TlxResponse &r);

// Creativity Support Index --------------------------------------------------

enum class CsiFactor {
  Enjoyment,
  Exploration,
  Expressiveness,
  Immersion,
  ResultsWorthEffort,
  Collaboration
};

inline constexpr int kCsiFactors = 6;

std::string_view to_string(CsiFactor f) noexcept;

struct CsiResponse {
  std::array<std::array<Rational, 2>, kCsiFactors> items{}; // each in [0, 10]
  std::array<int, kCsiFactors> pair_counts{};               // each 0..5, sum 15
};

void validate(const CsiResponse &r);

struct CsiScore {
  Rational total;                                  // 0..100
  std::array<Rational, kCsiFactors> per_factor{};  // factor sum x 5, 0..100
};

CsiScore csi_score(const CsiResponse &r);

// Likert --------------------------------------------------------------------

struct LikertResponse {
  std::string item_id;
  int value = 0; // 1..7
};

void validate(const LikertResponse &r);

} // namespace clay
