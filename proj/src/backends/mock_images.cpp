#include "clay/backends/mock_images.hpp"

#include "clay/backends/png.hpp"
#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"

#include <algorithm>
#include <cmath>

namespace clay {

namespace {

constexpr int kGutter = 2;
constexpr int kMaxSide = 4096;

struct Rgb {
  std::uint8_t r, g, b;
};

// Never black: every channel lands in [40, 239].
Rgb color_from(std::uint64_t h) {
  return {static_cast<std::uint8_t>(40 + (h & 0xff) % 200),
          static_cast<std::uint8_t>(40 + ((h >> 8) & 0xff) % 200),
          static_cast<std::uint8_t>(40 + ((h >> 16) & 0xff) % 200)};
}

Rgb shade(Rgb c, int delta) {
  auto f = [&](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(v + delta, 16, 255));
  };
  return {f(c.r), f(c.g), f(c.b)};
}

void fill(RgbImage &img, int x0, int y0, int w, int h, Rgb c) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) {
      auto *p = img.at(x, y);
      p[0] = c.r;
      p[1] = c.g;
      p[2] = c.b;
    }
}

RgbImage blank(int w, int h) {
  RgbImage img;
  img.width = w;
  img.height = h;
  img.pixels.assign(static_cast<std::size_t>(3 * w * h), 0);
  return img;
}

std::string render_collage(const ImageRequest &req, std::uint64_t seed) {
  const auto &layout = *req.collage;
  const int n = layout.tile_count;
  if (n < 1)
    throw validation_error("collage needs at least one tile");
  if (layout.fashion_ratio < 0.0 || layout.fashion_ratio > 1.0)
    throw validation_error("fashion ratio must lie in [0, 1]");
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  const int tw = (req.width - kGutter * (cols + 1)) / cols;
  const int th = (req.height - kGutter * (rows + 1)) / rows;
  if (tw < 1 || th < 1)
    throw validation_error("image too small for " + std::to_string(n) +
                           " tiles");

  const std::string s = std::to_string(seed);
  DeterministicRng rng(derive_seed({"collage", req.prompt_text, s}));
  const auto fashion_count = static_cast<std::size_t>(
      std::llround(layout.fashion_ratio * n));
  std::vector<bool> fashion(static_cast<std::size_t>(n), false);
  for (auto i : rng.sample_indices(static_cast<std::size_t>(n), fashion_count))
    fashion[i] = true;

  RgbImage img = blank(req.width, req.height);
  for (int i = 0; i < n; ++i) {
    const std::string keyword =
        layout.tile_keywords.empty()
            ? req.prompt_text
            : layout.tile_keywords[static_cast<std::size_t>(i) %
                                   layout.tile_keywords.size()];
    const int x0 = kGutter + (i % cols) * (tw + kGutter);
    const int y0 = kGutter + (i / cols) * (th + kGutter);
    const Rgb base = color_from(
        derive_seed({"tile", req.prompt_text, s, std::to_string(i), keyword}));
    for (int y = 0; y < th; ++y)
      for (int x = 0; x < tw; ++x) {
        const Rgb c = ((x + y) / 4) % 2 ? shade(base, 12) : base;
        auto *p = img.at(x0 + x, y0 + y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
      }
    if (fashion[static_cast<std::size_t>(i)] && tw >= 3)
      fill(img, x0 + tw / 3, y0 + th / 6, std::max(1, tw / 3),
           std::max(1, th - th / 3), shade(base, -24));
    img.text["clay:tile:" + std::to_string(i)] =
        std::string(fashion[static_cast<std::size_t>(i)] ? "fashion|"
                                                         : "object|") +
        keyword;
  }
  img.text["clay:tiles"] = std::to_string(n);
  img.text["clay:prompt"] = req.prompt_text;
  return encode_png(img);
}

std::string render_variant(const ImageRequest &req, std::uint64_t seed,
                           int index) {
  const std::string s = std::to_string(seed);
  const std::string i = std::to_string(index);
  const Rgb bg = color_from(derive_seed({"variant-bg", req.prompt_text, s, i}));
  const Rgb fg = color_from(derive_seed({"variant-fg", req.prompt_text, s, i}));
  RgbImage img = blank(req.width, req.height);
  fill(img, 0, 0, req.width, req.height, bg);
  // Garment silhouette: a trapezoid widening towards the hem.
  const int top = req.height / 8;
  const int bottom = req.height - req.height / 8;
  for (int y = top; y < bottom; ++y) {
    const double t = static_cast<double>(y - top) / std::max(1, bottom - top);
    const int half = static_cast<int>(req.width * (0.12 + 0.22 * t));
    const int cx = req.width / 2;
    fill(img, std::max(0, cx - half), y,
         std::min(req.width, cx + half) - std::max(0, cx - half), 1,
         ((y / 6) % 2) ? fg : shade(fg, 20));
  }
  img.text["clay:variant"] = i;
  img.text["clay:prompt"] = req.prompt_text;
  return encode_png(img);
}

} // namespace

MockImageSynthesizer::MockImageSynthesizer(std::shared_ptr<BlobStore> store)
    : store_(std::move(store)) {
  if (!store_)
    throw configuration_error("mock image synthesizer needs a blob store");
}

std::vector<std::string> MockImageSynthesizer::render(const ImageRequest &req) {
  if (req.prompt_text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw validation_error("image prompt must be non-empty");
  if (req.count < 1)
    throw validation_error("image count must be at least 1");
  if (req.width < 1 || req.height < 1 || req.width > kMaxSide ||
      req.height > kMaxSide)
    throw validation_error("image size out of range");
  const std::uint64_t seed =
      req.seed.value_or(derive_seed({"prompt", req.prompt_text}));
  std::vector<std::string> out;
  for (int i = 0; i < req.count; ++i) {
    if (req.collage)
      out.push_back(render_collage(
          req, i == 0 ? seed : derive_seed({std::to_string(seed), std::to_string(i)})));
    else
      out.push_back(render_variant(req, seed, i));
  }
  return out;
}

std::vector<std::string> MockImageSynthesizer::synthesize(const ImageRequest &req) {
  std::vector<std::string> refs;
  for (const auto &png : render(req))
    refs.push_back(store_->put(png));
  return refs;
}

} // namespace clay
