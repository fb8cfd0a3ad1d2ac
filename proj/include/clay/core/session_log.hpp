#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "clay/core/config.hpp"
#include "clay/core/engine.hpp"
#include "clay/core/event.hpp"
#include "clay/core/session.hpp"

namespace clay {

// First line of a session log. Everything after it is one event per line.
struct SessionHeader {
  std::string session_id;
  SessionMode mode = SessionMode::Clay;
  std::string style_seed;
  std::uint64_t rng_seed = 0;
  Timestamp created_at{};
  WorkflowConfig config;
};

SessionHeader header_of(const Session &s, const WorkflowConfig &config);
std::string to_header_line(const SessionHeader &h);
SessionHeader parse_header_line(std::string_view line);

// Header line plus one line per event, each newline-terminated.
std::string serialize_log(const Session &s, const WorkflowConfig &config);

struct ParsedLog {
  SessionHeader header;
  std::vector<InteractionEvent> events;
  bool truncated_tail = false; // last line lacked its newline and was dropped
};

// `source` names the log in error messages, which also carry the 1-based
// line number. With `tolerate_torn_tail`, an unterminated final line (a write
// cut short by a crash) is dropped instead of rejected.
ParsedLog parse_log(std::istream &in, std::string_view source,
                    bool tolerate_torn_tail = false);
ParsedLog read_log_file(const std::string &path,
                        bool tolerate_torn_tail = false);

// Rebuilds a session by folding the logged events; no backend is called.
Session restore_session(const ParsedLog &log);

struct ReplayReport {
  bool identical = false;
  std::vector<std::string> differences;
  Session session; // as rebuilt by re-execution
};

// Re-executes the operations recorded in `log` against fresh backends and
// compares every regenerated event (payload, digest, timestamp) with the
// logged one.
ReplayReport replay_session(const ParsedLog &log, const BackendSet &backends);

} // namespace clay
