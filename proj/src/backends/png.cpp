#include "clay/backends/png.hpp"

#include "clay/common/error.hpp"

#include <png.h>
#include <zlib.h>

#include <cstring>

namespace clay {

namespace {

constexpr std::size_t kSignature = 8;

void put_u32(std::string &out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

std::uint32_t get_u32(std::string_view s, std::size_t at) {
  auto b = [&](std::size_t i) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + i]));
  };
  return b(0) << 24 | b(1) << 16 | b(2) << 8 | b(3);
}

std::string text_chunk(const std::string &key, const std::string &value) {
  std::string body = "tEXt" + key;
  body.push_back('\0');
  body += value;
  std::string out;
  put_u32(out, static_cast<std::uint32_t>(body.size() - 4));
  out += body;
  put_u32(out, static_cast<std::uint32_t>(
                   crc32(0, reinterpret_cast<const Bytef *>(body.data()),
                         static_cast<uInt>(body.size()))));
  return out;
}

} // namespace

std::string encode_png(const RgbImage &img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(3 * img.width * img.height))
    throw validation_error("image buffer does not match its dimensions");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels.data(),
                                 0, nullptr))
    throw backend_error(std::string("png sizing failed: ") + image.message,
                        false);
  std::string bytes(size, '\0');
  if (!png_image_write_to_memory(&image, bytes.data(), &size, 0,
                                 img.pixels.data(), 0, nullptr))
    throw backend_error(std::string("png encoding failed: ") + image.message,
                        false);
  bytes.resize(size);

  // tEXt chunks go right after IHDR (signature + 25-byte chunk).
  std::string chunks;
  for (const auto &[k, v] : img.text)
    chunks += text_chunk(k, v);
  bytes.insert(kSignature + 25, chunks);
  return bytes;
}

RgbImage decode_png(std::string_view bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw validation_error(std::string("not a PNG: ") + image.message);
  image.format = PNG_FORMAT_RGB;
  RgbImage out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw validation_error(std::string("corrupt PNG: ") + image.message);
  }

  for (std::size_t at = kSignature; at + 12 <= bytes.size();) {
    const std::uint32_t len = get_u32(bytes, at);
    if (at + 12 + len > bytes.size())
      break;
    const std::string_view type = bytes.substr(at + 4, 4);
    if (type == "tEXt") {
      const std::string_view body = bytes.substr(at + 8, len);
      const auto nul = body.find('\0');
      if (nul != std::string_view::npos)
        out.text.emplace(std::string(body.substr(0, nul)),
                         std::string(body.substr(nul + 1)));
    }
    if (type == "IEND")
      break;
    at += 12 + len;
  }
  return out;
}

int count_non_black_regions(const RgbImage &img) {
  const int w = img.width;
  const int h = img.height;
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  auto black = [&](int x, int y) {
    const auto *p = img.at(x, y);
    return p[0] == 0 && p[1] == 0 && p[2] == 0;
  };
  int regions = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (seen[y * w + x] || black(x, y))
        continue;
      ++regions;
      stack.push_back({x, y});
      seen[y * w + x] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        const int nx[4] = {cx - 1, cx + 1, cx, cx};
        const int ny[4] = {cy, cy, cy - 1, cy + 1};
        for (int i = 0; i < 4; ++i) {
          if (nx[i] < 0 || ny[i] < 0 || nx[i] >= w || ny[i] >= h)
            continue;
          if (seen[ny[i] * w + nx[i]] || black(nx[i], ny[i]))
            continue;
          seen[ny[i] * w + nx[i]] = 1;
          stack.push_back({nx[i], ny[i]});
        }
      }
    }
  return regions;
}

} // namespace clay
