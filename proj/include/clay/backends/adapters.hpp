#pragma once

#include <functional>
#include <memory>
#include <string>

#include "clay/backends/chat.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"

namespace clay {

// Receives parser warnings (dropped duplicates). May be empty.
using WarningSink = std::function<void(const std::string &)>;

// The three text ports realized on a chat model: build the request, call,
// parse. A ParseError triggers exactly one more call; the second failure
// propagates.
class ChatKeywordExtractor final : public KeywordExtractor {
public:
  explicit ChatKeywordExtractor(std::shared_ptr<ChatModel> model,
                                WarningSink warn = {});
  KeywordLists extract_keywords(std::string_view free_text,
                                std::uint64_t seed) override;

private:
  std::shared_ptr<ChatModel> model_;
  WarningSink warn_;
};

class ChatHierarchyGenerator final : public HierarchyGenerator {
public:
  ChatHierarchyGenerator(std::shared_ptr<ChatModel> model,
                         HierarchyCardinality cardinality,
                         WarningSink warn = {});
  StyleHierarchy generate_hierarchy(const KeywordLists &keywords,
                                    std::uint64_t seed) override;

private:
  std::shared_ptr<ChatModel> model_;
  HierarchyCardinality cardinality_;
  WarningSink warn_;
};

// With `images` set and vision on, the moodboard PNG travels with the
// request; the provenance text is always included.
class ChatMoodboardCaptioner final : public MoodboardCaptioner {
public:
  ChatMoodboardCaptioner(std::shared_ptr<ChatModel> model,
                         std::shared_ptr<const BlobStore> images = nullptr,
                         bool vision = false, WarningSink warn = {});
  ElementSuggestions caption(const MoodboardSource &moodboard,
                             std::uint64_t seed) override;

private:
  std::shared_ptr<ChatModel> model_;
  std::shared_ptr<const BlobStore> images_;
  bool vision_;
  WarningSink warn_;
};

} // namespace clay
