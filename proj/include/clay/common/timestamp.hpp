#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace clay {

using Timestamp =
    std::chrono::time_point<std::chrono::system_clock,
                            std::chrono::milliseconds>;

// "YYYY-MM-DDTHH:MM:SS.mmmZ"
std::string format_iso8601(Timestamp t);
// Accepts the format above, with or without the millisecond field.
std::optional<Timestamp> parse_iso8601(std::string_view text);

using Clock = std::function<Timestamp()>;

Timestamp system_now();

// Deterministic clock for simulations and replays: start, start+step, ...
class LogicalClock {
public:
  explicit LogicalClock(Timestamp start,
                        std::chrono::milliseconds step = std::chrono::seconds(1))
      : next_(start), step_(step) {}

  Timestamp operator()() {
    const auto t = next_;
    next_ += step_;
    return t;
  }

private:
  Timestamp next_;
  std::chrono::milliseconds step_;
};

} // namespace clay
