#pragma once

// Capability ports the workflow engine drives. Adapters (mock, remote) live
// in clay/backends.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clay/core/hierarchy.hpp"

namespace clay {

struct KeywordLists {
  std::vector<std::string> styles;
  std::vector<std::string> moods;

  bool empty() const noexcept { return styles.empty() && moods.empty(); }
  bool operator==(const KeywordLists &) const = default;
};

struct ElementSuggestion {
  std::string category;
  std::vector<std::string> sub_elements;

  bool operator==(const ElementSuggestion &) const = default;
};

struct ElementSuggestions {
  std::vector<ElementSuggestion> elements;

  bool operator==(const ElementSuggestions &) const = default;
};

// Present for moodboard requests: the collage the image should realize.
struct CollageLayout {
  int tile_count = 1;
  double fashion_ratio = 0.5;
  std::vector<std::string> tile_keywords; // cycled over the tiles
};

struct ImageRequest {
  std::string prompt_text;
  int count = 1;
  int width = 256;
  int height = 256;
  std::optional<std::uint64_t> seed; // honored only by the mock
  std::optional<CollageLayout> collage;
};

// What a captioner sees of a moodboard: its image and recorded provenance.
struct MoodboardSource {
  std::string artifact_id;
  std::string image_ref;
  std::string prompt_text;
  std::vector<std::string> keywords;
  std::string style_seed;
};

class KeywordExtractor {
public:
  virtual ~KeywordExtractor() = default;
  virtual KeywordLists extract_keywords(std::string_view free_text,
                                        std::uint64_t seed) = 0;
};

class HierarchyGenerator {
public:
  virtual ~HierarchyGenerator() = default;
  virtual StyleHierarchy generate_hierarchy(const KeywordLists &keywords,
                                            std::uint64_t seed) = 0;
};

class MoodboardCaptioner {
public:
  virtual ~MoodboardCaptioner() = default;
  virtual ElementSuggestions caption(const MoodboardSource &moodboard,
                                     std::uint64_t seed) = 0;
};

class ImageSynthesizer {
public:
  virtual ~ImageSynthesizer() = default;
  // Stores the images and returns their content digests.
  virtual std::vector<std::string> synthesize(const ImageRequest &request) = 0;
  virtual std::string backend_id() const = 0;
};

struct BackendSet {
  std::shared_ptr<KeywordExtractor> extractor;
  std::shared_ptr<HierarchyGenerator> hierarchy;
  std::shared_ptr<MoodboardCaptioner> captioner;
  std::shared_ptr<ImageSynthesizer> images;
};

} // namespace clay
