#include "clay/service/config.hpp"

#include "clay/common/error.hpp"

#include <cstdlib>
#include <fstream>

namespace clay {

using nlohmann::json;

void validate(const ServiceConfig &cfg) {
  if (cfg.host.empty())
    throw configuration_error("host must be non-empty");
  if (cfg.port < 0 || cfg.port > 65535)
    throw configuration_error("port out of range: " + std::to_string(cfg.port));
  if (cfg.data_dir.empty())
    throw configuration_error("data_dir must be non-empty");
  if (cfg.threads < 1)
    throw configuration_error("threads must be >= 1");
  if (cfg.chat.kind == BackendKind::RemoteImage)
    throw configuration_error("chat backend cannot be remote_image");
  if (cfg.images.kind == BackendKind::RemoteChat)
    throw configuration_error("image backend cannot be remote_chat");
  validate(cfg.chat);
  validate(cfg.images);
  try {
    validate(cfg.workflow);
  } catch (const Error &e) {
    throw configuration_error(e.what());
  }
}

json to_json(const ServiceConfig &cfg) {
  json j{{"host", cfg.host},
         {"port", cfg.port},
         {"data_dir", cfg.data_dir.string()},
         {"random_style", cfg.random_style},
         {"threads", cfg.threads},
         {"chat", to_json(cfg.chat)},
         {"images", to_json(cfg.images)},
         {"workflow", to_json(cfg.workflow)}};
  j["taxonomy"] = cfg.taxonomy_path ? json(*cfg.taxonomy_path) : json(nullptr);
  return j;
}

void apply_overrides(ServiceConfig &cfg, const json &o) {
  if (o.is_null())
    return;
  if (!o.is_object())
    throw configuration_error("configuration must be a JSON object");
  try {
    cfg.host = o.value("host", cfg.host);
    cfg.port = o.value("port", cfg.port);
    if (o.contains("data_dir"))
      cfg.data_dir = o.at("data_dir").get<std::string>();
    if (o.contains("taxonomy"))
      cfg.taxonomy_path =
          o.at("taxonomy").is_null()
              ? std::nullopt
              : std::optional<std::string>(o.at("taxonomy").get<std::string>());
    cfg.random_style = o.value("random_style", cfg.random_style);
    cfg.threads = o.value("threads", cfg.threads);
    if (o.contains("chat"))
      cfg.chat = backend_config_from_json(o.at("chat"), cfg.chat);
    if (o.contains("images"))
      cfg.images = backend_config_from_json(o.at("images"), cfg.images);
    if (o.contains("workflow"))
      cfg.workflow = workflow_config_from_json(o.at("workflow"), cfg.workflow);
  } catch (const json::exception &e) {
    throw configuration_error(std::string("bad configuration: ") + e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::configuration)
      throw;
    throw configuration_error(e.what());
  }
}

EnvLookup process_env() {
  return [](const std::string &name) -> std::optional<std::string> {
    const char *v = std::getenv(name.c_str());
    if (!v)
      return std::nullopt;
    return std::string(v);
  };
}

namespace {

bool parse_bool(const std::string &name, const std::string &v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on")
    return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty())
    return false;
  throw configuration_error(name + " must be a boolean, got '" + v + "'");
}

int parse_int(const std::string &name, const std::string &v) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used == v.size())
      return n;
  } catch (const std::exception &) {
  }
  throw configuration_error(name + " must be an integer, got '" + v + "'");
}

} // namespace

json env_overrides(const EnvLookup &env) {
  json o = json::object();
  auto str = [&](const char *name, json &target, const char *key) {
    if (auto v = env(name))
      target[key] = *v;
  };
  str("CLAY_HOST", o, "host");
  if (auto v = env("CLAY_PORT"))
    o["port"] = parse_int("CLAY_PORT", *v);
  str("CLAY_DATA_DIR", o, "data_dir");
  str("CLAY_TAXONOMY", o, "taxonomy");
  if (auto v = env("CLAY_RANDOM_STYLE"))
    o["random_style"] = parse_bool("CLAY_RANDOM_STYLE", *v);
  if (auto v = env("CLAY_THREADS"))
    o["threads"] = parse_int("CLAY_THREADS", *v);

  json chat = json::object();
  str("CLAY_CHAT_BACKEND", chat, "kind");
  str("CLAY_CHAT_BASE_URL", chat, "base_url");
  str("CLAY_CHAT_MODEL", chat, "model_name");
  str("CLAY_CHAT_CREDENTIAL_ENV", chat, "credential_env_var");
  if (auto v = env("CLAY_CHAT_VISION"))
    chat["vision"] = parse_bool("CLAY_CHAT_VISION", *v);
  if (!chat.empty())
    o["chat"] = std::move(chat);

  json images = json::object();
  str("CLAY_IMAGE_BACKEND", images, "kind");
  str("CLAY_IMAGE_BASE_URL", images, "base_url");
  str("CLAY_IMAGE_MODEL", images, "model_name");
  str("CLAY_IMAGE_CREDENTIAL_ENV", images, "credential_env_var");
  if (!images.empty())
    o["images"] = std::move(images);
  return o;
}

ServiceConfig resolve_config(const std::optional<std::string> &config_file,
                             const EnvLookup &env, const json &flag_overrides) {
  ServiceConfig cfg;
  if (config_file) {
    std::ifstream in(*config_file, std::ios::binary);
    if (!in)
      throw configuration_error("cannot read config file " + *config_file);
    const json file = json::parse(in, nullptr, false);
    if (file.is_discarded())
      throw configuration_error(*config_file + " is not valid JSON");
    apply_overrides(cfg, file);
  }
  apply_overrides(cfg, env_overrides(env));
  apply_overrides(cfg, flag_overrides);
  validate(cfg);
  return cfg;
}

} // namespace clay
