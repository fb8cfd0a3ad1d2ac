#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace clay {

// Content-addressed store: key = sha256 hex of the bytes. put() is idempotent.
class BlobStore {
public:
  virtual ~BlobStore() = default;

  virtual std::string put(std::string_view bytes) = 0;
  virtual std::optional<std::string> get(std::string_view digest) const = 0;
  virtual bool contains(std::string_view digest) const = 0;
  virtual std::vector<std::string> keys() const = 0;
};

// Keys whose stored bytes no longer hash to the key.
std::vector<std::string> audit(const BlobStore &store);

class MemoryBlobStore final : public BlobStore {
public:
  std::string put(std::string_view bytes) override;
  std::optional<std::string> get(std::string_view digest) const override;
  bool contains(std::string_view digest) const override;
  std::vector<std::string> keys() const override;

private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::string, std::less<>> blobs_;
};

// Layout: <root>/ab/cd/<digest>. Writes go to a temp file in the target
// directory, are fsynced, then renamed into place, so a reader never sees a
// partial blob under its key.
class FsBlobStore final : public BlobStore {
public:
  explicit FsBlobStore(std::filesystem::path root);

  std::string put(std::string_view bytes) override;
  std::optional<std::string> get(std::string_view digest) const override;
  bool contains(std::string_view digest) const override;
  std::vector<std::string> keys() const override;

  const std::filesystem::path &root() const noexcept { return root_; }
  std::filesystem::path path_for(std::string_view digest) const;

private:
  std::filesystem::path root_;
};

} // namespace clay
