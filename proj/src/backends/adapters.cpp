#include "clay/backends/adapters.hpp"

#include "clay/backends/parsers.hpp"
#include "clay/backends/prompts.hpp"
#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"

namespace clay {

namespace {

template <typename ParseFn>
auto ask(ChatModel &model, const ChatRequest &req, ParseFn parse,
         const WarningSink &warn) {
  for (int attempt = 0;; ++attempt) {
    const std::string raw = model.complete(req);
    try {
      auto parsed = parse(raw);
      if (warn)
        for (const auto &w : parsed.warnings)
          warn(w);
      return std::move(parsed.value);
    } catch (const ParseError &) {
      if (attempt >= 1)
        throw;
    }
  }
}

void require_model(const std::shared_ptr<ChatModel> &m) {
  if (!m)
    throw configuration_error("chat adapter needs a model");
}

} // namespace

ChatKeywordExtractor::ChatKeywordExtractor(std::shared_ptr<ChatModel> model,
                                           WarningSink warn)
    : model_(std::move(model)), warn_(std::move(warn)) {
  require_model(model_);
}

KeywordLists ChatKeywordExtractor::extract_keywords(std::string_view free_text,
                                                    std::uint64_t seed) {
  ChatRequest req = build_extraction_request(free_text);
  req.seed = seed;
  return ask(*model_, req, parse_keyword_response, warn_);
}

ChatHierarchyGenerator::ChatHierarchyGenerator(std::shared_ptr<ChatModel> model,
                                               HierarchyCardinality cardinality,
                                               WarningSink warn)
    : model_(std::move(model)), cardinality_(cardinality),
      warn_(std::move(warn)) {
  require_model(model_);
}

StyleHierarchy
ChatHierarchyGenerator::generate_hierarchy(const KeywordLists &keywords,
                                           std::uint64_t seed) {
  ChatRequest req = build_hierarchy_request(keywords, cardinality_);
  req.seed = seed;
  return ask(*model_, req, parse_hierarchy_response, warn_);
}

ChatMoodboardCaptioner::ChatMoodboardCaptioner(
    std::shared_ptr<ChatModel> model, std::shared_ptr<const BlobStore> images,
    bool vision, WarningSink warn)
    : model_(std::move(model)), images_(std::move(images)), vision_(vision),
      warn_(std::move(warn)) {
  require_model(model_);
}

ElementSuggestions ChatMoodboardCaptioner::caption(const MoodboardSource &m,
                                                   std::uint64_t seed) {
  ChatRequest req = build_caption_request(m);
  req.seed = seed;
  if (vision_ && images_)
    if (auto png = images_->get(m.image_ref))
      req.image_png_base64 = base64_encode(*png);
  return ask(*model_, req, parse_caption_response, warn_);
}

} // namespace clay
