#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clay {

// Closed set; these names go over the wire in API error bodies.
enum class ErrorCode {
  validation,
  illegal_transition,
  backend_failure,
  not_found,
  configuration,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  // `retriable` is only honored for backend_failure.
  Error(ErrorCode code, const std::string &message, bool retriable = false);

  ErrorCode code() const noexcept { return code_; }
  bool retriable() const noexcept { return retriable_; }

private:
  ErrorCode code_;
  bool retriable_;
};

// A generative backend answered with text that does not match the requested
// schema. Always retry-advised.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::string raw);

  const std::string &raw() const noexcept { return raw_; }
  bool retry_advised() const noexcept { return true; }

private:
  std::string raw_;
};

[[nodiscard]] Error validation_error(const std::string &message);
[[nodiscard]] Error illegal_transition_error(const std::string &message);
[[nodiscard]] Error backend_error(const std::string &message,
                                  bool retriable = true);
[[nodiscard]] Error not_found_error(const std::string &message);
[[nodiscard]] Error configuration_error(const std::string &message);

} // namespace clay
