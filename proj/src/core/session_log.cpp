#include "clay/core/session_log.hpp"

#include "clay/common/error.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace clay {

using nlohmann::json;

SessionHeader header_of(const Session &s, const WorkflowConfig &config) {
  return SessionHeader{s.id,         s.mode,        s.style_seed,
                       s.rng_seed,   s.created_at,  config};
}

std::string to_header_line(const SessionHeader &h) {
  return json{{"record", "session"},
              {"format", 1},
              {"session_id", h.session_id},
              {"mode", to_string(h.mode)},
              {"style_seed", h.style_seed},
              {"rng_seed", h.rng_seed},
              {"created_at", format_iso8601(h.created_at)},
              {"config", to_json(h.config)}}
      .dump();
}

SessionHeader parse_header_line(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("record", "") != "session")
    throw validation_error("first line is not a session header");
  try {
    SessionHeader h;
    h.session_id = j.at("session_id").get<std::string>();
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    const auto created = parse_iso8601(j.at("created_at").get<std::string>());
    if (!mode || !created)
      throw validation_error("session header has a bad mode or timestamp");
    h.mode = *mode;
    h.style_seed = j.at("style_seed").get<std::string>();
    h.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    h.created_at = *created;
    h.config = workflow_config_from_json(j.at("config"));
    return h;
  } catch (const json::exception &e) {
    throw validation_error(std::string("malformed session header: ") +
                           e.what());
  }
}

std::string serialize_log(const Session &s, const WorkflowConfig &config) {
  std::string out = to_header_line(header_of(s, config));
  out += '\n';
  for (const auto &e : s.events) {
    out += to_log_line(e);
    out += '\n';
  }
  return out;
}

ParsedLog parse_log(std::istream &in, std::string_view source,
                    bool tolerate_torn_tail) {
  ParsedLog log;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    const bool terminated = !in.eof();
    if (line.empty() && terminated)
      continue;
    try {
      if (!have_header) {
        log.header = parse_header_line(line);
        have_header = true;
      } else {
        auto e = parse_log_line(line);
        if (e.session_id != log.header.session_id)
          throw validation_error("event belongs to session '" + e.session_id +
                                 "'");
        log.events.push_back(std::move(e));
      }
    } catch (const Error &e) {
      if (!terminated && tolerate_torn_tail && have_header) {
        log.truncated_tail = true;
        break;
      }
      throw validation_error(std::string(source) + ":" +
                             std::to_string(number) + ": " + e.what());
    }
  }
  if (!have_header)
    throw validation_error(std::string(source) + ": empty session log");
  return log;
}

ParsedLog read_log_file(const std::string &path, bool tolerate_torn_tail) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw not_found_error("cannot open log " + path);
  return parse_log(in, path, tolerate_torn_tail);
}

Session restore_session(const ParsedLog &log) {
  const auto &h = log.header;
  Session s = initial_session(
      h.session_id, h.mode, h.style_seed, h.rng_seed, h.created_at,
      default_composition(Stage::Moodboard, h.config.composition));
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    try {
      apply_event(s, log.events[i]);
    } catch (const Error &e) {
      throw validation_error("event " + std::to_string(i + 1) + ": " +
                             e.what());
    }
  }
  return s;
}

namespace {

// Feeds back the logged timestamps so regenerated events match byte for byte.
Clock replay_clock(const ParsedLog &log) {
  auto times = std::make_shared<std::vector<Timestamp>>();
  times->push_back(log.header.created_at);
  for (const auto &e : log.events)
    times->push_back(e.timestamp);
  auto next = std::make_shared<std::size_t>(0);
  return [times, next]() {
    const auto i = std::min(*next, times->size() - 1);
    ++*next;
    return (*times)[i];
  };
}

void run_recorded_op(const WorkflowEngine &engine, Session &s,
                     const InteractionEvent &e) {
  const auto &p = e.payload;
  switch (e.kind) {
  case EventKind::VaguePromptSubmitted:
    engine.submit_vague_prompt(s, p.at("text").get<std::string>());
    break;
  case EventKind::HierarchyViewed:
    engine.view_hierarchy(s);
    break;
  case EventKind::KeywordSelected: {
    const auto k = keyword_from_json(p.at("keyword"));
    if (k.path)
      engine.select_keywords(s, std::span(&*k.path, 1), {});
    else
      engine.select_keywords(s, {}, std::span(&k.text, 1));
    break;
  }
  case EventKind::PromptRefined: {
    const auto prompt = prompt_from_json(p.at("prompt"));
    engine.refine_prompt(s, prompt.keywords, prompt.free_text);
    break;
  }
  case EventKind::GenerationRequested:
    engine.generate_combination(s);
    break;
  case EventKind::CompositionDirective: {
    const auto d = parse_directive(p.at("directive").get<std::string>());
    if (!d)
      throw validation_error("unknown directive in log");
    engine.modify_composition(s, *d);
    break;
  }
  case EventKind::StageAdvanced:
    engine.advance_stage(s, p.at("source_artifact").get<std::string>());
    break;
  }
}

} // namespace

ReplayReport replay_session(const ParsedLog &log, const BackendSet &backends) {
  ReplayReport report;
  const auto &h = log.header;
  WorkflowEngine engine(backends, h.config, replay_clock(log));
  report.session = engine.create_session(h.mode, h.style_seed, h.rng_seed,
                                         h.session_id);
  Session &s = report.session;

  std::size_t i = 0;
  while (i < log.events.size()) {
    const auto &logged = log.events[i];
    const std::size_t before = s.events.size();
    try {
      run_recorded_op(engine, s, logged);
    } catch (const std::exception &ex) {
      report.differences.push_back("event " + std::to_string(i + 1) + " (" +
                                   std::string(to_string(logged.kind)) +
                                   "): re-execution failed: " + ex.what());
      break;
    }
    if (s.events.size() == before) {
      report.differences.push_back("event " + std::to_string(i + 1) +
                                   ": re-execution produced no event");
      break;
    }
    for (std::size_t k = before; k < s.events.size(); ++k, ++i) {
      if (i >= log.events.size()) {
        report.differences.push_back("re-execution produced extra events");
        break;
      }
      if (to_log_line(s.events[k]) != to_log_line(log.events[i]))
        report.differences.push_back(
            "event " + std::to_string(i + 1) + " (" +
            std::string(to_string(log.events[i].kind)) + ") differs");
    }
    if (!report.differences.empty())
      break;
  }
  report.identical = report.differences.empty() &&
                     s.events.size() == log.events.size();
  if (report.differences.empty() && !report.identical)
    report.differences.push_back("event count differs");
  return report;
}

} // namespace clay
