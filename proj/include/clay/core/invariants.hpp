#pragma once

#include <string>
#include <vector>

#include "clay/core/session.hpp"

namespace clay {

// Snapshot invariants of one session. Empty result = all hold:
//  - consecutive phases within a stage are permitted edges; stages only move
//    Moodboard -> Design and each stage is entered at VaguePrompt
//  - Baseline: no hierarchy, no HierarchyViewed / KeywordSelected /
//    CompositionDirective / PromptRefined events, only baseline images
//  - every moodboard/design artifact is preceded by a PromptRefined event in
//    the same stage
//  - suggested keywords in the draft and current prompt resolve in the
//    hierarchy to their own text; paths present iff suggested
//  - timestamps non-decreasing; interaction flags match kinds; logged prompt
//    revisions increase by exactly one
std::vector<std::string> audit_session(const Session &s);

// Cross-snapshot checks: the event log only grows (earlier entries never
// change), and revision and interaction count never decrease.
class SessionMonitor {
public:
  // Returns violations observed between the previous snapshot and this one.
  std::vector<std::string> observe(const Session &s);

private:
  std::vector<std::string> digests_;
  int last_revision_ = 0;
  int last_count_ = 0;
};

} // namespace clay
