#include "clay/common/error.hpp"

namespace clay {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::validation:
    return "validation";
  case ErrorCode::illegal_transition:
    return "illegal_transition";
  case ErrorCode::backend_failure:
    return "backend_failure";
  case ErrorCode::not_found:
    return "not_found";
  case ErrorCode::configuration:
    return "configuration";
  }
  return "validation";
}

Error::Error(ErrorCode code, const std::string &message, bool retriable)
    : std::runtime_error(message), code_(code),
      retriable_(retriable && code == ErrorCode::backend_failure) {}

ParseError::ParseError(const std::string &message, std::string raw)
    : Error(ErrorCode::backend_failure, message, true), raw_(std::move(raw)) {}

Error validation_error(const std::string &message) {
  return Error(ErrorCode::validation, message);
}

Error illegal_transition_error(const std::string &message) {
  return Error(ErrorCode::illegal_transition, message);
}

Error backend_error(const std::string &message, bool retriable) {
  return Error(ErrorCode::backend_failure, message, retriable);
}

Error not_found_error(const std::string &message) {
  return Error(ErrorCode::not_found, message);
}

Error configuration_error(const std::string &message) {
  return Error(ErrorCode::configuration, message);
}

} // namespace clay
