#pragma once

#include <memory>
#include <string>

#include "clay/common/error.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/service/session_manager.hpp"

#include "json.hpp"

namespace clay {

// validation 400, illegal_transition 409, not_found 404, backend_failure
// 502, configuration 500.
int http_status(ErrorCode code) noexcept;

// {code, message, retriable}
nlohmann::json error_body(const Error &e);

// JSON serialization that never throws on invalid UTF-8 (replaces it).
std::string dump_json(const nlohmann::json &j);

struct ApiOptions {
  bool random_style = false; // style_seed may be omitted on POST /sessions
  int threads = 8;
};

// The HTTP binding of SessionManager.
//   POST /sessions                         {mode, style_seed, seed}
//   POST /sessions/{id}/vague-prompt       {text}
//   GET  /sessions/{id}/hierarchy
//   POST /sessions/{id}/keywords           {paths, new_keywords}
//   POST /sessions/{id}/refine             {keywords, free_text}
//   POST /sessions/{id}/generate
//   POST /sessions/{id}/composition        {directive}
//   POST /sessions/{id}/advance-stage      {artifact_id}
//   GET  /sessions/{id}/events
//   GET  /artifacts/{hash}
//   GET  /healthz
// Mutating responses carry the updated session summary under "session".
class ApiServer {
public:
  ApiServer(SessionManager &sessions, std::shared_ptr<const BlobStore> blobs,
            ApiOptions options = {});
  ~ApiServer();
  ApiServer(const ApiServer &) = delete;
  ApiServer &operator=(const ApiServer &) = delete;

  // Port 0 picks a free port. Returns the bound port; throws a
  // configuration Error when the address is unavailable.
  int bind(const std::string &host, int port);
  // Serves until stop(). Requires bind().
  void listen();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace clay
