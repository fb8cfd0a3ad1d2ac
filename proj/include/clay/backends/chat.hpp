#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clay {

enum class ChatTask { KeywordExtraction, HierarchyGeneration, Captioning };

std::string_view to_string(ChatTask task) noexcept;

struct Exemplar {
  std::string input;
  std::string output;

  bool operator==(const Exemplar &) const = default;
};

struct ChatRequest {
  ChatTask task = ChatTask::KeywordExtraction;
  std::string instruction;
  std::vector<Exemplar> exemplars; // few-shot pairs; empty = zero-shot
  std::string user_content;
  std::string response_schema_hint;
  std::optional<std::string> image_png_base64; // only sent in vision mode
  std::optional<std::uint64_t> seed;
};

// A chat-completion capable model. Returns the raw assistant text.
class ChatModel {
public:
  virtual ~ChatModel() = default;
  virtual std::string complete(const ChatRequest &request) = 0;
  virtual std::string model_id() const = 0;
};

} // namespace clay
