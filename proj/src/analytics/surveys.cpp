#include "clay/analytics/surveys.hpp"

#include "clay/common/error.hpp"

#include <charconv>

namespace clay {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw validation_error("not a number: '" + std::string(whole) + "'");
  return v;
}

constexpr int kMaxDecimals = 9;

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(s.substr(slash + 1), text);
    if (den == 0)
      throw validation_error("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(s.substr(0, slash), text), den);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string digits(s.substr(0, dot));
  std::int64_t scale = 1;
  if (dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.size() > kMaxDecimals)
      throw validation_error("too many decimals in '" + std::string(text) + "'");
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw validation_error("not a number: '" + std::string(text) + "'");
  const Rational r(parse_int(digits, text), scale);
  return negative ? -r : r;
}

std::string to_string(const Rational &r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational &r) {
  return boost::rational_cast<double>(r);
}

std::string_view to_string(TlxSubscale s) noexcept {
  switch (s) {
  case TlxSubscale::Mental:
    return "mental";
  case TlxSubscale::Physical:
    return "physical";
  case TlxSubscale::Temporal:
    return "temporal";
  case TlxSubscale::Effort:
    return "effort";
  case TlxSubscale::Performance:
    return "performance";
  case TlxSubscale::Frustration:
    return "frustration";
  }
  return "unknown";
}

const std::array<std::pair<TlxSubscale, TlxSubscale>, kTlxPairs> &tlx_pairs() {
  static const auto pairs = [] {
    std::array<std::pair<TlxSubscale, TlxSubscale>, kTlxPairs> out{};
    int k = 0;
    for (int i = 0; i < kTlxSubscales; ++i)
      for (int j = i + 1; j < kTlxSubscales; ++j)
        out[k++] = {static_cast<TlxSubscale>(i), static_cast<TlxSubscale>(j)};
    return out;
  }();
  return pairs;
}

void validate(const TlxResponse &r) {
  for (int i = 0; i < kTlxSubscales; ++i)
    if (r.ratings[i] < 0 || r.ratings[i] > 100)
      throw validation_error(std::string("TLX ") +
                             std::string(to_string(static_cast<TlxSubscale>(i))) +
                             " rating outside [0, 100]");
  if (!r.pair_winners)
    return;
  for (int k = 0; k < kTlxPairs; ++k) {
    const auto [a, b] = tlx_pairs()[k];
    const auto w = (*r.pair_winners)[k];
    if (w != a && w != b)
      throw validation_error("TLX pair " + std::to_string(k + 1) + " (" +
                             std::string(to_string(a)) + " vs " +
                             std::string(to_string(b)) + ") names winner " +
                             std::string(to_string(w)));
  }
}

std::array<int, kTlxSubscales> tlx_weights(const TlxResponse &r) {
  if (!r.pair_winners)
    throw validation_error("TLX response has no pairwise weights");
  validate(r);
  std::array<int, kTlxSubscales> w{};
  for (auto s : *r.pair_winners)
    ++w[static_cast<int>(s)];
  return w;
}

Rational nasa_tlx_raw(const TlxResponse &r) {
  validate(r);
  Rational sum = 0;
  for (const auto &v : r.ratings)
    sum += v;
  return sum / kTlxSubscales;
}

Rational nasa_tlx_weighted(const TlxResponse &r) {
  const auto w = tlx_weights(r);
  Rational sum = 0;
  for (int i = 0; i < kTlxSubscales; ++i)
    sum += r.ratings[i] * w[i];
  return sum / kTlxPairs;
}

std::string_view to_string(CsiFactor f) noexcept {
  switch (f) {
  case CsiFactor::Enjoyment:
    return "enjoyment";
  case CsiFactor::Exploration:
    return "exploration";
  case CsiFactor::Expressiveness:
    return "expressiveness";
  case CsiFactor::Immersion:
    return "immersion";
  case CsiFactor::ResultsWorthEffort:
    return "results_worth_effort";
  case CsiFactor::Collaboration:
    return "collaboration";
  }
  return "unknown";
}

void validate(const CsiResponse &r) {
  int total = 0;
  for (int f = 0; f < kCsiFactors; ++f) {
    const std::string name(to_string(static_cast<CsiFactor>(f)));
    for (const auto &item : r.items[f])
      if (item < 0 || item > 10)
        throw validation_error("CSI " + name + " item outside [0, 10]");
    if (r.pair_counts[f] < 0 || r.pair_counts[f] > 5)
      throw validation_error("CSI " + name + " pair count outside [0, 5]");
    total += r.pair_counts[f];
  }
  if (total != 15)
    throw validation_error("CSI pair counts sum to " + std::to_string(total) +
                           ", expected 15");
}

CsiScore csi_score(const CsiResponse &r) {
  validate(r);
  CsiScore out;
  Rational weighted = 0;
  for (int f = 0; f < kCsiFactors; ++f) {
    const Rational factor = r.items[f][0] + r.items[f][1];
    weighted += factor * r.pair_counts[f];
    out.per_factor[f] = factor * 5;
  }
  out.total = weighted / 3;
  return out;
}

void validate(const LikertResponse &r) {
  if (r.item_id.empty())
    throw validation_error("Likert response needs an item id");
  if (r.value < 1 || r.value > 7)
    throw validation_error("Likert value for '" + r.item_id +
                           "' outside [1, 7]");
}

} // namespace clay
