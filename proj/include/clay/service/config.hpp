#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "clay/backends/remote.hpp"
#include "clay/core/config.hpp"

#include "json.hpp"

namespace clay {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "clay-data";
  std::optional<std::string> taxonomy_path; // bundled taxonomy when unset
  BackendConfig chat;
  BackendConfig images;
  WorkflowConfig workflow;
  bool random_style = false;
  int threads = 8;
};

// Throws a configuration Error.
void validate(const ServiceConfig &cfg);

nlohmann::json to_json(const ServiceConfig &cfg);

// Overrides use the to_json() shape; absent keys leave the value alone.
void apply_overrides(ServiceConfig &cfg, const nlohmann::json &overrides);

using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;
EnvLookup process_env();

// CLAY_HOST, CLAY_PORT, CLAY_DATA_DIR, CLAY_TAXONOMY, CLAY_RANDOM_STYLE,
// CLAY_THREADS, CLAY_CHAT_BACKEND, CLAY_CHAT_BASE_URL, CLAY_CHAT_MODEL,
// CLAY_CHAT_CREDENTIAL_ENV, CLAY_CHAT_VISION, CLAY_IMAGE_BACKEND,
// CLAY_IMAGE_BASE_URL, CLAY_IMAGE_MODEL, CLAY_IMAGE_CREDENTIAL_ENV.
nlohmann::json env_overrides(const EnvLookup &env);

// Defaults, then the JSON config file, then the environment, then flags.
ServiceConfig resolve_config(const std::optional<std::string> &config_file,
                             const EnvLookup &env,
                             const nlohmann::json &flag_overrides);

} // namespace clay
