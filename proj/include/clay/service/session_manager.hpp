#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "clay/core/blob_store.hpp"
#include "clay/core/engine.hpp"

namespace clay {

// Owns the live sessions and their logs (<dir>/<id>.jsonl). Operations on
// one session are serialized by its own mutex; different sessions run in
// parallel. Every event is appended and fsynced before the operation
// returns, so an acknowledged event survives a crash.
class SessionManager {
public:
  SessionManager(WorkflowEngine engine, std::filesystem::path sessions_dir,
                 std::shared_ptr<const BlobStore> blobs);
  ~SessionManager();

  struct RestoreReport {
    int restored = 0;
    std::vector<std::string> warnings;
  };

  // Loads every log in the directory. A torn final line is cut off the file;
  // a log whose artifacts reference missing blobs is skipped with a warning.
  RestoreReport restore_all();

  Session create(SessionMode mode, std::string_view style_seed,
                 std::uint64_t rng_seed);

  // Runs `op` on the session under its lock, then persists the events it
  // appended. Throws not_found for unknown ids.
  void mutate(const std::string &id,
              const std::function<void(const WorkflowEngine &, Session &)> &op);

  Session snapshot(const std::string &id) const;
  std::vector<std::string> ids() const;
  std::size_t size() const;

  const WorkflowEngine &engine() const noexcept { return engine_; }
  const std::filesystem::path &directory() const noexcept { return dir_; }

private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string &id) const;
  void append(Entry &e, std::size_t from);

  WorkflowEngine engine_;
  std::filesystem::path dir_;
  std::shared_ptr<const BlobStore> blobs_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

} // namespace clay
