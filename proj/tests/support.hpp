#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "clay/backends/factory.hpp"
#include "clay/backends/taxonomy.hpp"
#include "clay/core/blob_store.hpp"
#include "clay/core/engine.hpp"

namespace clay::test {

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("clay-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

private:
  std::filesystem::path path_;
};

inline Timestamp epoch_2024() {
  return Timestamp{std::chrono::milliseconds(1704067200000LL)};
}

inline std::shared_ptr<const Taxonomy> taxonomy() {
  static const auto t = std::make_shared<const Taxonomy>(bundled_taxonomy());
  return t;
}

// Mock backends over an in-memory store, engine on a logical clock.
struct Harness {
  std::shared_ptr<MemoryBlobStore> store = std::make_shared<MemoryBlobStore>();
  WorkflowConfig config;
  BackendSet backends = make_mock_backends(taxonomy(), store, config.cardinality);
  WorkflowEngine engine{backends, config, LogicalClock(epoch_2024())};
};

} // namespace clay::test
