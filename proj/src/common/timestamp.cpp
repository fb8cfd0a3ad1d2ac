#include "clay/common/timestamp.hpp"

#include <cstdio>

namespace clay {

using namespace std::chrono;

std::string format_iso8601(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss<milliseconds> tod{t - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long long>(tod.seconds().count()));
  std::string out(buf);
  char ms[8];
  std::snprintf(ms, sizeof ms, ".%03lld",
                static_cast<long long>(tod.subseconds().count()));
  out.insert(out.size() - 1, ms);
  return out;
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0, ms = 0;
  int consumed = 0;
  const std::string buf(text);
  if (std::sscanf(buf.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%n", &y, &mo, &d, &h,
                  &mi, &s, &consumed) != 6)
    return std::nullopt;
  std::string_view rest = text.substr(static_cast<std::size_t>(consumed));
  if (!rest.empty() && rest.front() == '.') {
    int n = 0;
    if (std::sscanf(buf.c_str() + consumed, ".%3u%n", &ms, &n) != 1 || n != 4)
      return std::nullopt;
    rest.remove_prefix(4);
  }
  if (rest != "Z")
    return std::nullopt;
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60)
    return std::nullopt;
  return Timestamp{sys_days{ymd}.time_since_epoch() + hours{h} + minutes{mi} +
                   seconds{s} + milliseconds{ms}};
}

Timestamp system_now() {
  return floor<milliseconds>(system_clock::now());
}

} // namespace clay
