#include "clay/service/api.hpp"

#include "clay/backends/taxonomy.hpp"
#include "clay/common/digest.hpp"
#include "clay/common/rng.hpp"
#include "clay/core/event.hpp"

#include <random>

#include "httplib.h"

namespace clay {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::validation:
    return 400;
  case ErrorCode::illegal_transition:
    return 409;
  case ErrorCode::not_found:
    return 404;
  case ErrorCode::backend_failure:
    return 502;
  case ErrorCode::configuration:
    return 500;
  }
  return 500;
}

json error_body(const Error &e) {
  return {{"code", to_string(e.code())},
          {"message", e.what()},
          {"retriable", e.retriable()}};
}

std::string dump_json(const json &j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

namespace {

constexpr const char *kJson = "application/json";

json parse_body(const httplib::Request &req) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos)
    return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw validation_error("request body must be a JSON object");
  return j;
}

std::string string_field(const json &j, const char *key, bool required) {
  if (!j.contains(key) || j.at(key).is_null()) {
    if (required)
      throw validation_error(std::string("missing field '") + key + "'");
    return {};
  }
  if (!j.at(key).is_string())
    throw validation_error(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

HierarchyPath path_from_json(const json &p) {
  if (p.is_string()) {
    if (auto path = HierarchyPath::parse(p.get<std::string>()))
      return *path;
    throw validation_error("unresolvable hierarchy path: " + p.get<std::string>());
  }
  if (p.is_array()) {
    HierarchyPath path;
    for (const auto &i : p) {
      if (!i.is_number_unsigned())
        throw validation_error("hierarchy path indices must be non-negative");
      path.indices.push_back(i.get<std::size_t>());
    }
    if (path.depth() >= 1 && path.depth() <= 4)
      return path;
  }
  throw validation_error("hierarchy path must be \"i/j/k/l\" or [i, j, k, l]");
}

// A bare string keeps its origin from the keyword draft; otherwise it is
// hierarchy-suggested when found in the hierarchy and user-originated if not.
Keyword keyword_for(const Session &s, const json &k) {
  if (k.is_string()) {
    const std::string text = k.get<std::string>();
    for (const auto &d : s.keyword_draft)
      if (d.text == text)
        return d;
    if (s.hierarchy)
      if (auto path = find_text(*s.hierarchy, text))
        return Keyword::suggested(text, *path);
    return Keyword::user(text);
  }
  if (!k.is_object())
    throw validation_error("keywords must be strings or objects");
  if (k.contains("origin"))
    return keyword_from_json(k);
  const std::string text = string_field(k, "text", true);
  if (k.contains("path") && !k.at("path").is_null())
    return Keyword::suggested(text, path_from_json(k.at("path")));
  return keyword_for(s, json(text));
}

json events_json(const Session &s) {
  json events = json::array();
  for (const auto &e : s.events)
    events.push_back(to_json(e));
  return events;
}

} // namespace

struct ApiServer::Impl {
  SessionManager &sessions;
  std::shared_ptr<const BlobStore> blobs;
  ApiOptions options;
  httplib::Server server;
  bool bound = false;

  Impl(SessionManager &s, std::shared_ptr<const BlobStore> b, ApiOptions o)
      : sessions(s), blobs(std::move(b)), options(o) {
    const int threads = std::max(1, options.threads);
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char *>(&yes),
                   sizeof(yes));
    });
    server.set_default_headers(
        {{"Access-Control-Allow-Origin", "*"},
         {"Access-Control-Allow-Headers", "Content-Type"},
         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    routes();
  }

  template <typename Fn> httplib::Server::Handler json_handler(Fn fn) {
    return [fn](const httplib::Request &req, httplib::Response &res) {
      try {
        auto [status, body] = fn(req);
        res.status = status;
        res.set_content(dump_json(body), kJson);
      } catch (const Error &e) {
        res.status = http_status(e.code());
        res.set_content(dump_json(error_body(e)), kJson);
      } catch (const json::exception &e) {
        const Error err = validation_error(std::string("malformed request: ") + e.what());
        res.status = 400;
        res.set_content(dump_json(error_body(err)), kJson);
      } catch (const std::exception &e) {
        const Error err = configuration_error(std::string("internal error: ") + e.what());
        res.status = 500;
        res.set_content(dump_json(error_body(err)), kJson);
      }
    };
  }

  using Result = std::pair<int, json>;

  Result with_summary(const std::string &id, json body) {
    body["session"] = session_summary(sessions.snapshot(id));
    return {200, std::move(body)};
  }

  void routes() {
    server.Options(R"(/.*)", [](const httplib::Request &, httplib::Response &res) {
      res.status = 204;
    });

    server.Get("/healthz", json_handler([this](const httplib::Request &) {
      return Result{200, {{"status", "ok"}, {"sessions", sessions.size()}}};
    }));

    server.Post("/sessions", json_handler([this](const httplib::Request &req) {
      const json body = parse_body(req);
      SessionMode mode = SessionMode::Clay;
      if (body.contains("mode")) {
        const auto m = parse_mode(string_field(body, "mode", true));
        if (!m)
          throw validation_error("mode must be 'clay' or 'baseline'");
        mode = *m;
      }
      std::uint64_t seed = 0;
      if (body.contains("seed") && !body.at("seed").is_null()) {
        if (!body.at("seed").is_number_integer())
          throw validation_error("seed must be an integer");
        seed = body.at("seed").get<std::uint64_t>();
      } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
      }
      std::string style = string_field(body, "style_seed", false);
      if (style.find_first_not_of(" \t\r\n") == std::string::npos &&
          options.random_style) {
        DeterministicRng rng(derive_seed({"random-style", std::to_string(seed)}));
        style = std::string(kStudyStyles[rng.index(kStudyStyles.size())]);
      }
      const Session s = sessions.create(mode, style, seed);
      return Result{201, session_summary(s)};
    }));

    server.Post(R"(/sessions/([^/]+)/vague-prompt)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      const std::string text = string_field(parse_body(req), "text", true);
      VagueResult r;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        r = e.submit_vague_prompt(s, text);
      });
      return with_summary(
          id, {{"hierarchy", r.hierarchy ? to_json(*r.hierarchy) : json(nullptr)},
               {"artifact", r.artifact ? to_json(*r.artifact) : json(nullptr)}});
    }));

    server.Get(R"(/sessions/([^/]+)/hierarchy)",
               json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      json h;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        h = to_json(e.view_hierarchy(s));
      });
      return with_summary(id, {{"hierarchy", std::move(h)}});
    }));

    server.Post(R"(/sessions/([^/]+)/keywords)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      const json body = parse_body(req);
      std::vector<HierarchyPath> paths;
      std::vector<std::string> words;
      if (body.contains("paths"))
        for (const auto &p : body.at("paths"))
          paths.push_back(path_from_json(p));
      if (body.contains("new_keywords"))
        for (const auto &w : body.at("new_keywords"))
          words.push_back(w.get<std::string>());
      json draft = json::array();
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        for (const auto &k : e.select_keywords(s, paths, words))
          draft.push_back(to_json(k));
      });
      return with_summary(id, {{"draft", std::move(draft)}});
    }));

    server.Post(R"(/sessions/([^/]+)/refine)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      const json body = parse_body(req);
      if (body.contains("keywords") && !body.at("keywords").is_array())
        throw validation_error("'keywords' must be an array");
      std::optional<std::string> free_text;
      if (body.contains("free_text") && !body.at("free_text").is_null())
        free_text = string_field(body, "free_text", true);
      json prompt;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        std::vector<Keyword> keywords;
        if (body.contains("keywords"))
          for (const auto &k : body.at("keywords"))
            keywords.push_back(keyword_for(s, k));
        prompt = to_json(e.refine_prompt(s, std::move(keywords), free_text));
      });
      return with_summary(id, {{"prompt", std::move(prompt)}});
    }));

    server.Post(R"(/sessions/([^/]+)/generate)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      json artifact;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        artifact = to_json(e.generate_combination(s));
      });
      return with_summary(id, {{"artifact", std::move(artifact)}});
    }));

    server.Post(R"(/sessions/([^/]+)/composition)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      const std::string name = string_field(parse_body(req), "directive", true);
      const auto directive = parse_directive(name);
      if (!directive)
        throw validation_error("unknown directive '" + name + "'");
      json body;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        const auto r = e.modify_composition(s, *directive);
        body = {{"artifact", to_json(r.artifact)}, {"clamped", r.clamped}};
      });
      return with_summary(id, std::move(body));
    }));

    server.Post(R"(/sessions/([^/]+)/advance-stage)",
                json_handler([this](const httplib::Request &req) {
      const std::string id = req.matches[1];
      const std::string artifact = string_field(parse_body(req), "artifact_id", true);
      json h;
      sessions.mutate(id, [&](const WorkflowEngine &e, Session &s) {
        e.advance_stage(s, artifact);
        h = s.hierarchy ? to_json(*s.hierarchy) : json(nullptr);
      });
      return with_summary(id, {{"hierarchy", std::move(h)}});
    }));

    server.Get(R"(/sessions/([^/]+)/events)",
               json_handler([this](const httplib::Request &req) {
      const Session s = sessions.snapshot(req.matches[1]);
      return Result{200,
                    {{"session_id", s.id},
                     {"events", events_json(s)},
                     {"interaction_count", s.interaction_count()},
                     {"session", session_summary(s)}}};
    }));

    server.Get(R"(/artifacts/([^/]+))",
               [this](const httplib::Request &req, httplib::Response &res) {
      const std::string hash = req.matches[1];
      std::optional<std::string> bytes;
      if (is_hex_digest(hash) && blobs)
        bytes = blobs->get(hash);
      if (!bytes) {
        res.status = 404;
        res.set_content(dump_json(error_body(not_found_error("no artifact " + hash))),
                        kJson);
        return;
      }
      res.set_header("Cache-Control", "public, max-age=31536000, immutable");
      res.set_content(std::move(*bytes), "image/png");
    });

    server.set_error_handler([](const httplib::Request &req, httplib::Response &res) {
      if (!res.body.empty())
        return;
      const Error err = res.status == 404
                            ? not_found_error("no route " + req.method + " " + req.path)
                            : validation_error("request rejected with status " +
                                               std::to_string(res.status));
      res.set_content(dump_json(error_body(err)), kJson);
    });
  }
};

ApiServer::ApiServer(SessionManager &sessions,
                     std::shared_ptr<const BlobStore> blobs, ApiOptions options)
    : impl_(std::make_unique<Impl>(sessions, std::move(blobs), options)) {}

ApiServer::~ApiServer() = default;

int ApiServer::bind(const std::string &host, int port) {
  int bound = port;
  if (port == 0)
    bound = impl_->server.bind_to_any_port(host);
  else if (!impl_->server.bind_to_port(host, port))
    bound = -1;
  if (bound <= 0)
    throw configuration_error("cannot listen on " + host + ":" +
                              std::to_string(port) + " (address in use?)");
  impl_->bound = true;
  return bound;
}

void ApiServer::listen() {
  if (!impl_->bound)
    throw configuration_error("listen() before bind()");
  impl_->server.listen_after_bind();
}

void ApiServer::stop() { impl_->server.stop(); }

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

} // namespace clay
