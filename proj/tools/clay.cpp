#include "clay/analytics/report.hpp"
#include "clay/backends/factory.hpp"
#include "clay/backends/taxonomy.hpp"
#include "clay/common/error.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/service/analyze.hpp"
#include "clay/service/api.hpp"
#include "clay/service/config.hpp"
#include "clay/service/scripted.hpp"
#include "clay/service/session_manager.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::shared_ptr<const clay::Taxonomy>
taxonomy_from(const std::optional<std::string> &path) {
  if (path)
    return std::make_shared<clay::Taxonomy>(clay::load_taxonomy_file(*path));
  return std::make_shared<clay::Taxonomy>(clay::bundled_taxonomy());
}

int serve(const std::optional<std::string> &config_file, const json &flags) {
  const clay::ServiceConfig cfg =
      clay::resolve_config(config_file, clay::process_env(), flags);
  const auto taxonomy = taxonomy_from(cfg.taxonomy_path);
  auto blobs = std::make_shared<clay::FsBlobStore>(cfg.data_dir / "blobs");
  auto backends = clay::make_backends(
      cfg.chat, cfg.images, taxonomy, blobs, cfg.workflow.cardinality,
      [](const std::string &w) { std::cerr << "warning: " << w << "\n"; });
  clay::SessionManager sessions(clay::WorkflowEngine(backends, cfg.workflow),
                                cfg.data_dir / "sessions", blobs);
  const auto restored = sessions.restore_all();
  for (const auto &w : restored.warnings)
    std::cerr << "warning: " << w << "\n";

  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  clay::ApiServer server(sessions, blobs, {cfg.random_style, cfg.threads});
  const int port = server.bind(cfg.host, cfg.port);
  std::cerr << "clay: " << restored.restored << " session(s) restored, listening on "
            << cfg.host << ":" << port << " (chat " << to_string(cfg.chat.kind)
            << ", images " << to_string(cfg.images.kind) << ")\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    std::cerr << "clay: shutting down\n";
    server.stop();
  });
  server.listen();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return 0;
}

void print_report(const clay::Report &r, const std::optional<std::string> &json_out) {
  std::cout << clay::render_table(r);
  if (json_out) {
    std::ofstream out(*json_out, std::ios::binary | std::ios::trunc);
    out << to_json(r).dump(2) << "\n";
    if (!out)
      throw clay::configuration_error("cannot write " + *json_out);
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Vagueness-balancing fashion design assistant"};
  app.require_subcommand(1);

  auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  std::optional<std::string> config_file;
  std::optional<std::string> host, data_dir, taxonomy, chat_backend, image_backend;
  std::optional<int> port, threads;
  bool random_style = false;
  serve_cmd->add_option("--config", config_file, "JSON configuration file");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--data-dir", data_dir, "Sessions and blobs root");
  serve_cmd->add_option("--taxonomy", taxonomy, "Taxonomy document");
  serve_cmd->add_option("--threads", threads, "Request worker threads");
  serve_cmd->add_option("--chat-backend", chat_backend, "mock or remote_chat");
  serve_cmd->add_option("--image-backend", image_backend, "mock or remote_image");
  serve_cmd->add_flag("--random-style", random_style,
                      "Assign a random study style when none is given");

  auto *sim_cmd = app.add_subcommand("simulate", "Run scripted sessions");
  std::string policy_name = "converger";
  int count = 1, k = 2, k2 = 2, n = 11;
  std::uint64_t seed = 1;
  std::string sim_out = "simulated";
  std::optional<std::string> sim_style, sim_taxonomy;
  sim_cmd->add_option("--policy", policy_name, "explorer, converger or baseline_free")
      ->check(CLI::IsMember({"explorer", "converger", "baseline_free"}));
  sim_cmd->add_option("--count", count, "Number of sessions")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "Seed of the first session");
  sim_cmd->add_option("-k", k, "Moodboard cycles");
  sim_cmd->add_option("--k2", k2, "Design cycles");
  sim_cmd->add_option("-n", n, "Baseline prompts");
  sim_cmd->add_option("--style", sim_style, "Style seed (default: picked from the seed)");
  sim_cmd->add_option("--taxonomy", sim_taxonomy);
  sim_cmd->add_option("--out", sim_out, "Output directory for logs and blobs");

  auto *analyze_cmd = app.add_subcommand("analyze", "Recount session logs and compare conditions");
  std::vector<std::string> analyze_inputs;
  std::string analyze_out = "analysis";
  bool analyze_welch = false;
  analyze_cmd->add_option("inputs", analyze_inputs, "Logs, directories or study CSVs")
      ->required();
  analyze_cmd->add_option("--out", analyze_out, "Output directory");
  analyze_cmd->add_flag("--welch", analyze_welch, "Welch instead of pooled t-test");

  auto *report_cmd = app.add_subcommand("report", "Render a report from study CSVs");
  std::vector<std::string> report_inputs;
  std::optional<std::string> report_json, cond_a, cond_b;
  bool report_welch = false;
  report_cmd->add_option("csv", report_inputs, "Samples or summaries CSV")->required();
  report_cmd->add_option("--json", report_json, "Also write the report document here");
  report_cmd->add_option("--a", cond_a, "First condition");
  report_cmd->add_option("--b", cond_b, "Second condition");
  report_cmd->add_flag("--welch", report_welch, "Welch instead of pooled t-test");

  auto *tax_cmd = app.add_subcommand("validate-taxonomy", "Check a taxonomy document");
  std::string tax_file;
  tax_cmd->add_option("file", tax_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) {
      json flags = json::object();
      if (host) flags["host"] = *host;
      if (port) flags["port"] = *port;
      if (data_dir) flags["data_dir"] = *data_dir;
      if (taxonomy) flags["taxonomy"] = *taxonomy;
      if (threads) flags["threads"] = *threads;
      if (random_style) flags["random_style"] = true;
      if (chat_backend) flags["chat"] = {{"kind", *chat_backend}};
      if (image_backend) flags["images"] = {{"kind", *image_backend}};
      return serve(config_file, flags);
    }
    if (*sim_cmd) {
      const clay::ScriptPolicy policy{*clay::parse_policy(policy_name), k, k2, n};
      clay::validate(policy);
      const fs::path out(sim_out);
      fs::create_directories(out);
      auto blobs = std::make_shared<clay::FsBlobStore>(out / "blobs");
      const clay::WorkflowConfig config;
      const auto backends = clay::make_mock_backends(taxonomy_from(sim_taxonomy),
                                                     blobs, config.cardinality);
      for (int i = 0; i < count; ++i) {
        const auto run = clay::run_scripted_session(
            backends, config, policy, seed + static_cast<std::uint64_t>(i),
            std::nullopt, sim_style);
        const fs::path path = out / (run.session.id + ".jsonl");
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << run.log;
        if (!f)
          throw clay::configuration_error("cannot write " + path.string());
        std::cout << path.string() << " " << run.session.interaction_count() << "\n";
      }
      return 0;
    }
    if (*analyze_cmd) {
      std::vector<fs::path> inputs(analyze_inputs.begin(), analyze_inputs.end());
      const auto a = clay::analyze(inputs, analyze_welch ? clay::TTestVariant::Welch
                                                         : clay::TTestVariant::Pooled);
      clay::write_analysis(a, analyze_out);
      std::cout << clay::render_table(a.report);
      std::cout << a.sessions.size() << " session log(s); wrote " << analyze_out << "/\n";
      return 0;
    }
    if (*report_cmd) {
      clay::StudyData data;
      for (const auto &path : report_inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
          throw clay::validation_error("cannot read " + path);
        clay::read_study_csv(in, path, data);
      }
      print_report(clay::build_report(data, cond_a, cond_b,
                                      report_welch ? clay::TTestVariant::Welch
                                                   : clay::TTestVariant::Pooled),
                   report_json);
      return 0;
    }
    if (*tax_cmd) {
      const auto t = clay::load_taxonomy_file(tax_file);
      std::cout << tax_file << ": ok, version " << t.version << ", "
                << t.tree.styles.size() << " styles, digest " << t.digest << "\n";
      return 0;
    }
  } catch (const clay::Error &e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == clay::ErrorCode::configuration ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
