#pragma once

#include <memory>

#include "clay/core/blob_store.hpp"
#include "clay/core/ports.hpp"

namespace clay {

// Renders PNGs that are a pure function of the request. A collage request
// yields a grid of tile_count coloured tiles separated by black gutters;
// round(fashion_ratio * tile_count) of them carry a garment stripe. Each
// tile is labelled in a tEXt chunk "clay:tile:<i>" = "fashion|<keyword>" or
// "object|<keyword>". Without a collage, `count` design variants are drawn.
class MockImageSynthesizer final : public ImageSynthesizer {
public:
  explicit MockImageSynthesizer(std::shared_ptr<BlobStore> store);

  std::vector<std::string> synthesize(const ImageRequest &request) override;
  std::string backend_id() const override { return "mock-image"; }

  // The PNG bytes without storing them.
  static std::vector<std::string> render(const ImageRequest &request);

private:
  std::shared_ptr<BlobStore> store_;
};

} // namespace clay
