#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "clay/backends/chat.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/core/ports.hpp"

#include "json.hpp"

namespace clay {

enum class BackendKind { RemoteChat, RemoteImage, Mock };

std::string_view to_string(BackendKind k) noexcept;
std::optional<BackendKind> parse_backend_kind(std::string_view s) noexcept;

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  std::optional<std::string> base_url;
  std::optional<std::string> model_name;
  std::string credential_env_var;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  int backoff_initial_ms = 500; // doubles per retry
  bool vision = false;          // chat only: send moodboard pixels
};

// Throws a configuration Error: remote kinds need base_url and
// credential_env_var; timeout > 0; retries >= 0.
void validate(const BackendConfig &cfg);

nlohmann::json to_json(const BackendConfig &cfg);
BackendConfig backend_config_from_json(const nlohmann::json &j,
                                       BackendConfig base = {});

// Bounds in-flight remote calls across all adapters in the process.
class InFlightLimiter {
public:
  explicit InFlightLimiter(int limit) : limit_(limit) {}

  void acquire();
  void release();
  void set_limit(int limit);
  int peak() const;
  void reset_peak();

private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  int limit_;
  int active_ = 0;
  int peak_ = 0;
};

// Default limit 4.
InFlightLimiter &remote_call_limiter();

// POST {base_url}/chat/completions with {model, messages}. The bearer
// credential is read from the environment once, at construction.
class RemoteChatModel final : public ChatModel {
public:
  explicit RemoteChatModel(BackendConfig cfg);

  std::string complete(const ChatRequest &request) override;
  std::string model_id() const override;

  // The body that complete() sends.
  nlohmann::json request_body(const ChatRequest &request) const;

private:
  BackendConfig cfg_;
  std::string token_;
};

// POST {base_url}/images/generations with {model, prompt, n, size}. Each
// returned entry may carry "b64_json" or a "url" that is then fetched.
class RemoteImageSynthesizer final : public ImageSynthesizer {
public:
  RemoteImageSynthesizer(BackendConfig cfg, std::shared_ptr<BlobStore> store);

  std::vector<std::string> synthesize(const ImageRequest &request) override;
  std::string backend_id() const override;

private:
  BackendConfig cfg_;
  std::string token_;
  std::shared_ptr<BlobStore> store_;
};

} // namespace clay
