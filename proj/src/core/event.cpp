#include "clay/core/event.hpp"

#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"

#include <algorithm>

namespace clay {

using nlohmann::json;

namespace {
constexpr EventKind kAllKinds[] = {
    EventKind::VaguePromptSubmitted, EventKind::HierarchyViewed,
    EventKind::KeywordSelected,      EventKind::PromptRefined,
    EventKind::GenerationRequested,  EventKind::CompositionDirective,
    EventKind::StageAdvanced,
};
} // namespace

std::string_view to_string(EventKind k) noexcept {
  switch (k) {
  case EventKind::VaguePromptSubmitted:
    return "VaguePromptSubmitted";
  case EventKind::HierarchyViewed:
    return "HierarchyViewed";
  case EventKind::KeywordSelected:
    return "KeywordSelected";
  case EventKind::PromptRefined:
    return "PromptRefined";
  case EventKind::GenerationRequested:
    return "GenerationRequested";
  case EventKind::CompositionDirective:
    return "CompositionDirective";
  case EventKind::StageAdvanced:
    return "StageAdvanced";
  }
  return "HierarchyViewed";
}

std::optional<EventKind> parse_event_kind(std::string_view s) noexcept {
  for (auto k : kAllKinds)
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

InteractionEvent make_event(Timestamp t, std::string session_id, EventKind kind,
                            json payload) {
  InteractionEvent e;
  e.timestamp = t;
  e.session_id = std::move(session_id);
  e.kind = kind;
  e.payload_digest = sha256_hex(payload.dump());
  e.counts_as_interaction = counts_as_interaction(kind);
  e.payload = std::move(payload);
  return e;
}

json to_json(const InteractionEvent &e, bool with_payload) {
  json j{{"timestamp", format_iso8601(e.timestamp)},
         {"session_id", e.session_id},
         {"kind", to_string(e.kind)},
         {"payload_digest", e.payload_digest},
         {"counts_as_interaction", e.counts_as_interaction}};
  if (with_payload)
    j["payload"] = e.payload;
  return j;
}

std::string to_log_line(const InteractionEvent &e) { return to_json(e).dump(); }

InteractionEvent parse_log_line(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw validation_error("event line is not a JSON object");
  auto str = [&](const char *key) -> std::string {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string())
      throw validation_error(std::string("event line lacks string '") + key +
                             "'");
    return it->get<std::string>();
  };
  InteractionEvent e;
  const auto ts = parse_iso8601(str("timestamp"));
  if (!ts)
    throw validation_error("event timestamp is not ISO-8601 UTC");
  e.timestamp = *ts;
  e.session_id = str("session_id");
  const auto kind = parse_event_kind(str("kind"));
  if (!kind)
    throw validation_error("unknown event kind");
  e.kind = *kind;
  e.payload_digest = str("payload_digest");
  const auto flag = j.find("counts_as_interaction");
  if (flag == j.end() || !flag->is_boolean())
    throw validation_error("event line lacks boolean 'counts_as_interaction'");
  e.counts_as_interaction = flag->get<bool>();
  if (e.counts_as_interaction != counts_as_interaction(e.kind))
    throw validation_error("counts_as_interaction disagrees with event kind");
  const auto payload = j.find("payload");
  if (payload == j.end() || !payload->is_object())
    throw validation_error("event line lacks object 'payload'");
  e.payload = *payload;
  if (sha256_hex(e.payload.dump()) != e.payload_digest)
    throw validation_error("payload digest mismatch");
  return e;
}

int interaction_count(std::span<const InteractionEvent> events) noexcept {
  return static_cast<int>(
      std::count_if(events.begin(), events.end(),
                    [](const InteractionEvent &e) {
                      return e.counts_as_interaction;
                    }));
}

} // namespace clay
