#include "clay/backends/remote.hpp"

#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"

namespace clay {

using nlohmann::json;

std::string_view to_string(BackendKind k) noexcept {
  switch (k) {
  case BackendKind::RemoteChat:
    return "remote_chat";
  case BackendKind::RemoteImage:
    return "remote_image";
  case BackendKind::Mock:
    return "mock";
  }
  return "unknown";
}

std::optional<BackendKind> parse_backend_kind(std::string_view s) noexcept {
  if (s == "remote_chat")
    return BackendKind::RemoteChat;
  if (s == "remote_image")
    return BackendKind::RemoteImage;
  if (s == "mock")
    return BackendKind::Mock;
  return std::nullopt;
}

void validate(const BackendConfig &cfg) {
  if (cfg.kind != BackendKind::Mock) {
    if (!cfg.base_url || cfg.base_url->empty())
      throw configuration_error(std::string(to_string(cfg.kind)) +
                                " backend needs base_url");
    if (cfg.base_url->rfind("http://", 0) != 0 &&
        cfg.base_url->rfind("https://", 0) != 0)
      throw configuration_error("base_url must start with http:// or https://");
    if (cfg.credential_env_var.empty())
      throw configuration_error(std::string(to_string(cfg.kind)) +
                                " backend needs credential_env_var");
  }
  if (!(cfg.timeout_seconds > 0))
    throw configuration_error("backend timeout must be positive");
  if (cfg.max_retries < 0)
    throw configuration_error("max_retries must be >= 0");
  if (cfg.backoff_initial_ms < 0)
    throw configuration_error("backoff_initial_ms must be >= 0");
}

json to_json(const BackendConfig &cfg) {
  json j{{"kind", to_string(cfg.kind)},
         {"credential_env_var", cfg.credential_env_var},
         {"timeout_seconds", cfg.timeout_seconds},
         {"max_retries", cfg.max_retries},
         {"backoff_initial_ms", cfg.backoff_initial_ms},
         {"vision", cfg.vision}};
  if (cfg.base_url)
    j["base_url"] = *cfg.base_url;
  if (cfg.model_name)
    j["model_name"] = *cfg.model_name;
  return j;
}

BackendConfig backend_config_from_json(const json &j, BackendConfig base) {
  try {
    if (j.contains("kind")) {
      const auto k = parse_backend_kind(j.at("kind").get<std::string>());
      if (!k)
        throw configuration_error("unknown backend kind '" +
                                  j.at("kind").get<std::string>() + "'");
      base.kind = *k;
    }
    if (j.contains("base_url"))
      base.base_url = j.at("base_url").get<std::string>();
    if (j.contains("model_name"))
      base.model_name = j.at("model_name").get<std::string>();
    base.credential_env_var =
        j.value("credential_env_var", base.credential_env_var);
    base.timeout_seconds = j.value("timeout_seconds", base.timeout_seconds);
    base.max_retries = j.value("max_retries", base.max_retries);
    base.backoff_initial_ms =
        j.value("backoff_initial_ms", base.backoff_initial_ms);
    base.vision = j.value("vision", base.vision);
  } catch (const json::exception &e) {
    throw configuration_error(std::string("bad backend config: ") + e.what());
  }
  return base;
}

void InFlightLimiter::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return active_ < limit_; });
  ++active_;
  peak_ = std::max(peak_, active_);
}

void InFlightLimiter::release() {
  {
    std::lock_guard lock(mu_);
    --active_;
  }
  cv_.notify_one();
}

void InFlightLimiter::set_limit(int limit) {
  {
    std::lock_guard lock(mu_);
    limit_ = std::max(limit, 1);
  }
  cv_.notify_all();
}

int InFlightLimiter::peak() const {
  std::lock_guard lock(mu_);
  return peak_;
}

void InFlightLimiter::reset_peak() {
  std::lock_guard lock(mu_);
  peak_ = active_;
}

InFlightLimiter &remote_call_limiter() {
  static InFlightLimiter limiter(4);
  return limiter;
}

namespace {

constexpr std::size_t kExcerpt = 300;

struct Endpoint {
  std::string origin; // scheme://host[:port]
  std::string prefix; // path below the origin, no trailing slash
};

Endpoint split_url(const std::string &url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos)
    throw configuration_error("malformed URL '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = url.substr(0, slash);
  if (slash != std::string::npos)
    e.prefix = url.substr(slash);
  while (!e.prefix.empty() && e.prefix.back() == '/')
    e.prefix.pop_back();
  return e;
}

std::string read_credential(const BackendConfig &cfg) {
  const char *v = std::getenv(cfg.credential_env_var.c_str());
  if (!v || !*v)
    throw configuration_error("environment variable " + cfg.credential_env_var +
                              " is not set");
  return v;
}

class LimiterSlot {
public:
  LimiterSlot() { remote_call_limiter().acquire(); }
  ~LimiterSlot() { remote_call_limiter().release(); }
  LimiterSlot(const LimiterSlot &) = delete;
  LimiterSlot &operator=(const LimiterSlot &) = delete;
};

std::string excerpt(const std::string &body) {
  return body.size() > kExcerpt ? body.substr(0, kExcerpt) + "..." : body;
}

// One request with retries on transport errors, 429 and 5xx.
std::string send(const BackendConfig &cfg, const std::string &url,
                 const std::string *json_body, const std::string *token) {
  const Endpoint ep = split_url(url);
  const auto timeout = std::chrono::duration<double>(cfg.timeout_seconds);
  const auto as_us = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
  std::string last;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(
          static_cast<long long>(cfg.backoff_initial_ms) << (attempt - 1)));
    httplib::Client client(ep.origin);
    client.set_connection_timeout(as_us);
    client.set_read_timeout(as_us);
    client.set_write_timeout(as_us);
    if (token)
      client.set_bearer_token_auth(*token);
    httplib::Result res;
    {
      LimiterSlot slot;
      res = json_body ? client.Post(ep.prefix, *json_body, "application/json")
                      : client.Get(ep.prefix);
    }
    if (!res) {
      last = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300)
      return res->body;
    last = "HTTP " + std::to_string(res->status) + ": " + excerpt(res->body);
    if (res->status != 429 && res->status < 500)
      throw backend_error(std::string(json_body ? "POST " : "GET ") + url +
                              " failed: " + last,
                          false);
  }
  throw backend_error(std::string(json_body ? "POST " : "GET ") + url +
                      " failed after " + std::to_string(cfg.max_retries + 1) +
                      " attempts: " + last);
}

} // namespace

RemoteChatModel::RemoteChatModel(BackendConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  if (cfg_.kind != BackendKind::RemoteChat)
    throw configuration_error("RemoteChatModel needs a remote_chat config");
  token_ = read_credential(cfg_);
}

std::string RemoteChatModel::model_id() const {
  return "remote-chat:" + cfg_.model_name.value_or("default");
}

json RemoteChatModel::request_body(const ChatRequest &r) const {
  json messages = json::array();
  messages.push_back(
      {{"role", "system"},
       {"content", r.instruction + "\nRespond with JSON of the form: " +
                       r.response_schema_hint}});
  for (const auto &e : r.exemplars) {
    messages.push_back({{"role", "user"}, {"content", e.input}});
    messages.push_back({{"role", "assistant"}, {"content", e.output}});
  }
  if (cfg_.vision && r.image_png_base64) {
    json parts = json::array();
    parts.push_back({{"type", "text"}, {"text", r.user_content}});
    parts.push_back(
        {{"type", "image_url"},
         {"image_url", {{"url", "data:image/png;base64," + *r.image_png_base64}}}});
    messages.push_back({{"role", "user"}, {"content", std::move(parts)}});
  } else {
    messages.push_back({{"role", "user"}, {"content", r.user_content}});
  }
  json body{{"messages", std::move(messages)}};
  if (cfg_.model_name)
    body["model"] = *cfg_.model_name;
  return body;
}

std::string RemoteChatModel::complete(const ChatRequest &request) {
  const std::string body =
      request_body(request).dump(-1, ' ', false, json::error_handler_t::replace);
  const std::string raw =
      send(cfg_, *cfg_.base_url + "/chat/completions", &body, &token_);
  const json j = json::parse(raw, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("choices") ||
      !j["choices"].is_array() || j["choices"].empty() ||
      !j["choices"][0].contains("message") ||
      !j["choices"][0]["message"].contains("content") ||
      !j["choices"][0]["message"]["content"].is_string())
    throw ParseError("chat completion lacks choices[0].message.content", raw);
  return j["choices"][0]["message"]["content"].get<std::string>();
}

RemoteImageSynthesizer::RemoteImageSynthesizer(BackendConfig cfg,
                                               std::shared_ptr<BlobStore> store)
    : cfg_(std::move(cfg)), store_(std::move(store)) {
  validate(cfg_);
  if (cfg_.kind != BackendKind::RemoteImage)
    throw configuration_error(
        "RemoteImageSynthesizer needs a remote_image config");
  if (!store_)
    throw configuration_error("remote image synthesizer needs a blob store");
  token_ = read_credential(cfg_);
}

std::string RemoteImageSynthesizer::backend_id() const {
  return "remote-image:" + cfg_.model_name.value_or("default");
}

std::vector<std::string>
RemoteImageSynthesizer::synthesize(const ImageRequest &req) {
  if (req.prompt_text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw validation_error("image prompt must be non-empty");
  if (req.count < 1)
    throw validation_error("image count must be at least 1");
  json body{{"prompt", req.prompt_text},
            {"n", req.count},
            {"size", std::to_string(req.width) + "x" + std::to_string(req.height)}};
  if (cfg_.model_name)
    body["model"] = *cfg_.model_name;
  const std::string payload =
      body.dump(-1, ' ', false, json::error_handler_t::replace);
  const std::string raw =
      send(cfg_, *cfg_.base_url + "/images/generations", &payload, &token_);
  const json j = json::parse(raw, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("data") ||
      !j["data"].is_array() || j["data"].empty())
    throw backend_error("image response lacks a data array: " + excerpt(raw));

  std::vector<std::string> refs;
  for (const auto &item : j["data"]) {
    std::string bytes;
    if (item.contains("b64_json") && item["b64_json"].is_string()) {
      auto decoded = base64_decode(item["b64_json"].get<std::string>());
      if (!decoded)
        throw backend_error("image response carries malformed base64");
      bytes = std::move(*decoded);
    } else if (item.contains("url") && item["url"].is_string()) {
      bytes = send(cfg_, item["url"].get<std::string>(), nullptr, nullptr);
    } else {
      throw backend_error("image entry has neither b64_json nor url");
    }
    if (bytes.empty())
      throw backend_error("image entry is empty");
    refs.push_back(store_->put(bytes));
  }
  return refs;
}

} // namespace clay
