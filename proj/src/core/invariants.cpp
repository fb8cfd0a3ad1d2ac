#include "clay/core/invariants.hpp"

#include "clay/core/event.hpp"

#include <set>

namespace clay {

namespace {

void check_keywords(const Session &s, const std::vector<Keyword> &keywords,
                    const std::string &where, std::vector<std::string> &out) {
  for (const auto &k : keywords) {
    const bool suggested = k.origin == KeywordOrigin::HierarchySuggested;
    if (suggested != k.path.has_value()) {
      out.push_back(where + ": keyword '" + k.text +
                    "' path presence disagrees with origin");
      continue;
    }
    if (!suggested)
      continue;
    if (!s.hierarchy) {
      out.push_back(where + ": suggested keyword '" + k.text +
                    "' without a hierarchy");
      continue;
    }
    const auto text = node_text(*s.hierarchy, *k.path);
    if (!text || *text != k.text)
      out.push_back(where + ": suggested keyword '" + k.text +
                    "' does not resolve at " + k.path->to_string());
  }
}

void check_phase_history(const Session &s, std::vector<std::string> &out) {
  const auto &h = s.phase_history;
  if (h.empty() || h.front() != PhaseStep{Stage::Moodboard, Phase::VaguePrompt}) {
    out.push_back("phase history must start at moodboard/vague_prompt");
    return;
  }
  for (std::size_t i = 1; i < h.size(); ++i) {
    const auto &prev = h[i - 1];
    const auto &cur = h[i];
    if (prev.stage != cur.stage) {
      if (!(prev.stage == Stage::Moodboard && cur.stage == Stage::Design &&
            cur.phase == Phase::VaguePrompt))
        out.push_back("illegal stage entry at history step " +
                      std::to_string(i));
      continue;
    }
    if (!is_permitted_transition(s.mode, prev.phase, cur.phase))
      out.push_back("illegal phase edge " + std::string(to_string(prev.phase)) +
                    " -> " + std::string(to_string(cur.phase)) + " at step " +
                    std::to_string(i));
  }
  if (h.back() != PhaseStep{s.stage, s.phase})
    out.push_back("phase history does not end at the current phase");
}

} // namespace

std::vector<std::string> audit_session(const Session &s) {
  std::vector<std::string> out;
  check_phase_history(s, out);

  if (s.mode == SessionMode::Baseline) {
    if (s.hierarchy)
      out.push_back("baseline session holds a hierarchy");
    for (const auto &e : s.events)
      if (e.kind == EventKind::HierarchyViewed ||
          e.kind == EventKind::KeywordSelected ||
          e.kind == EventKind::CompositionDirective ||
          e.kind == EventKind::PromptRefined)
        out.push_back("baseline session logged " +
                      std::string(to_string(e.kind)));
    for (const auto &a : s.artifacts)
      if (a.kind != ArtifactKind::BaselineImage)
        out.push_back("baseline session holds non-baseline artifact " + a.id);
  }

  Stage stage = Stage::Moodboard;
  bool refined_in_stage = false;
  int revision = 0;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto &e = s.events[i];
    if (i > 0 && e.timestamp < s.events[i - 1].timestamp)
      out.push_back("timestamp decreases at event " + std::to_string(i + 1));
    if (e.counts_as_interaction != counts_as_interaction(e.kind))
      out.push_back("interaction flag wrong at event " + std::to_string(i + 1));
    if (e.session_id != s.id)
      out.push_back("foreign session id at event " + std::to_string(i + 1));
    switch (e.kind) {
    case EventKind::StageAdvanced:
      stage = Stage::Design;
      refined_in_stage = false;
      break;
    case EventKind::PromptRefined: {
      refined_in_stage = true;
      const auto r = e.payload.at("prompt").at("revision").get<int>();
      if (r != revision + 1)
        out.push_back("revision jumps to " + std::to_string(r));
      revision = r;
      break;
    }
    case EventKind::GenerationRequested:
    case EventKind::CompositionDirective:
      if (s.mode == SessionMode::Clay && !refined_in_stage)
        out.push_back("artifact at event " + std::to_string(i + 1) +
                      " not preceded by a refinement in " +
                      std::string(to_string(stage)));
      break;
    default:
      break;
    }
  }
  if (revision != s.last_revision)
    out.push_back("last_revision disagrees with the log");

  std::set<std::string> ids;
  for (const auto &a : s.artifacts) {
    if (a.image_refs.empty())
      out.push_back("artifact " + a.id + " has no images");
    if (!ids.insert(a.id).second)
      out.push_back("duplicate artifact id " + a.id);
  }
  if (s.stage == Stage::Design) {
    const auto *src =
        s.source_moodboard ? s.find_artifact(*s.source_moodboard) : nullptr;
    if (!src)
      out.push_back("design stage without a resolvable source artifact");
    else if (s.mode == SessionMode::Clay &&
             src->kind != ArtifactKind::MoodboardImage)
      out.push_back("design stage sourced from a non-moodboard artifact");
  }

  check_keywords(s, s.keyword_draft, "draft", out);
  if (s.current_prompt)
    check_keywords(s, s.current_prompt->keywords, "current prompt", out);
  return out;
}

std::vector<std::string> SessionMonitor::observe(const Session &s) {
  std::vector<std::string> out;
  if (s.events.size() < digests_.size())
    out.push_back("event log shrank");
  for (std::size_t i = 0; i < digests_.size() && i < s.events.size(); ++i)
    if (s.events[i].payload_digest != digests_[i]) {
      out.push_back("event " + std::to_string(i + 1) + " was rewritten");
      break;
    }
  if (s.last_revision < last_revision_)
    out.push_back("revision decreased");
  const int count = s.interaction_count();
  if (count < last_count_)
    out.push_back("interaction count decreased");
  digests_.clear();
  for (const auto &e : s.events)
    digests_.push_back(e.payload_digest);
  last_revision_ = s.last_revision;
  last_count_ = count;
  return out;
}

} // namespace clay
