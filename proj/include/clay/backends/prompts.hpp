#pragma once

#include <string_view>
#include <vector>

#include "clay/backends/chat.hpp"
#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"
#include "clay/core/session.hpp"

namespace clay {

// Bundled few-shot pairs for keyword extraction, in file order.
const std::vector<Exemplar> &extraction_exemplars();

ChatRequest build_extraction_request(std::string_view free_text);

ChatRequest build_hierarchy_request(const KeywordLists &keywords,
                                    const HierarchyCardinality &cardinality);

ChatRequest build_caption_request(const MoodboardSource &moodboard);

// Resolves `artifact_id` in the session; it must name a moodboard image.
MoodboardSource moodboard_source(const Session &s, std::string_view artifact_id);

} // namespace clay
