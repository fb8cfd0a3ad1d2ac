#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "clay/backends/chat.hpp"
#include "clay/backends/taxonomy.hpp"
#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"

namespace clay {

// Styles are taxonomy style names found in the text, moods are taxonomy
// moods found in it (both case-insensitive, taxonomy order). With no match
// the trimmed text itself is returned as the style.
KeywordLists mock_extract_keywords(std::string_view text, const Taxonomy &t);

// Samples sub-styles, elements and sub-elements of every matched style at
// the given cardinalities (fewer when the taxonomy has fewer), keeping
// taxonomy order. Styles match by case-insensitive substring; when no style
// keyword matches, styles carrying one of the moods are used. Throws a
// validation Error listing the known styles when nothing matches.
StyleHierarchy mock_generate_hierarchy(const KeywordLists &keywords,
                                       const Taxonomy &t, std::uint64_t seed,
                                       const HierarchyCardinality &cardinality);

// Elements of every taxonomy sub-style that one of the moodboard's keywords
// names (as the sub-style or one of its sub-elements), merged by category.
// Falls back to a single "detail" category listing the keywords.
ElementSuggestions mock_caption(const MoodboardSource &moodboard,
                                const Taxonomy &t);

// Offline chat model answering the three request kinds from a taxonomy, in
// the response format the parsers expect. Reentrant.
class MockChatModel final : public ChatModel {
public:
  explicit MockChatModel(std::shared_ptr<const Taxonomy> taxonomy);

  std::string complete(const ChatRequest &request) override;
  std::string model_id() const override { return "mock-chat"; }

private:
  std::shared_ptr<const Taxonomy> taxonomy_;
};

} // namespace clay
