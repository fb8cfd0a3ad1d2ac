#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace clay {

// SHA-256 of `bytes`, lowercase hex (64 chars).
std::string sha256_hex(std::string_view bytes);
std::array<std::uint8_t, 32> sha256_raw(std::string_view bytes);

bool is_hex_digest(std::string_view s) noexcept;

std::string base64_encode(std::string_view bytes);
// nullopt on malformed input.
std::optional<std::string> base64_decode(std::string_view text);

} // namespace clay
