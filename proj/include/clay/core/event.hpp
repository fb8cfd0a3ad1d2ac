#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "clay/common/timestamp.hpp"
#include "json.hpp"

namespace clay {

enum class EventKind {
  VaguePromptSubmitted,
  HierarchyViewed,
  KeywordSelected,
  PromptRefined,
  GenerationRequested,
  CompositionDirective,
  StageAdvanced,
};

std::string_view to_string(EventKind k) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view s) noexcept;

// Only backend-generation triggers count: vague-prompt submissions,
// generation requests and composition directives.
constexpr bool counts_as_interaction(EventKind k) noexcept {
  return k == EventKind::VaguePromptSubmitted ||
         k == EventKind::GenerationRequested ||
         k == EventKind::CompositionDirective;
}

struct InteractionEvent {
  Timestamp timestamp;
  std::string session_id;
  EventKind kind = EventKind::HierarchyViewed;
  std::string payload_digest; // sha256 of payload.dump()
  bool counts_as_interaction = false;
  // Everything needed to re-apply the event; logged alongside the digest so
  // sessions can be restored and replayed.
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const InteractionEvent &) const = default;
};

InteractionEvent make_event(Timestamp t, std::string session_id, EventKind kind,
                            nlohmann::json payload);

// One JSON object per line, no trailing newline. Fields: timestamp
// (ISO-8601 UTC), session_id, kind, payload_digest, counts_as_interaction,
// payload.
std::string to_log_line(const InteractionEvent &e);
// Throws a validation Error describing the first problem found, including a
// payload whose digest does not match.
InteractionEvent parse_log_line(std::string_view line);

nlohmann::json to_json(const InteractionEvent &e, bool with_payload = true);

int interaction_count(std::span<const InteractionEvent> events) noexcept;

} // namespace clay
