#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace clay {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels; // row-major RGB
  std::map<std::string, std::string> text; // tEXt chunks

  std::uint8_t *at(int x, int y) { return &pixels[3 * (y * width + x)]; }
  const std::uint8_t *at(int x, int y) const {
    return &pixels[3 * (y * width + x)];
  }
};

// 8-bit RGB, fixed compression settings, no timestamps: equal images encode
// to equal bytes.
std::string encode_png(const RgbImage &img);

// Throws a validation Error on anything that is not a decodable PNG.
RgbImage decode_png(std::string_view bytes);

// 4-connected components of pixels that are not pure black.
int count_non_black_regions(const RgbImage &img);

} // namespace clay
