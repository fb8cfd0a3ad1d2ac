#include "clay/core/blob_store.hpp"

#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace clay {

std::vector<std::string> audit(const BlobStore &store) {
  std::vector<std::string> bad;
  for (const auto &key : store.keys()) {
    const auto bytes = store.get(key);
    if (!bytes || sha256_hex(*bytes) != key)
      bad.push_back(key);
  }
  return bad;
}

std::string MemoryBlobStore::put(std::string_view bytes) {
  auto digest = sha256_hex(bytes);
  std::unique_lock lock(mu_);
  blobs_.try_emplace(digest, bytes);
  return digest;
}

std::optional<std::string> MemoryBlobStore::get(std::string_view digest) const {
  std::shared_lock lock(mu_);
  const auto it = blobs_.find(digest);
  if (it == blobs_.end())
    return std::nullopt;
  return it->second;
}

bool MemoryBlobStore::contains(std::string_view digest) const {
  std::shared_lock lock(mu_);
  return blobs_.find(digest) != blobs_.end();
}

std::vector<std::string> MemoryBlobStore::keys() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  out.reserve(blobs_.size());
  for (const auto &[k, v] : blobs_)
    out.push_back(k);
  return out;
}

namespace {

std::string temp_name() {
  static std::atomic<std::uint64_t> counter{0};
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream name;
  name << ".tmp-" << ::getpid() << '-' << counter++ << '-' << std::hex << rng();
  return name.str();
}

void write_all(int fd, std::string_view bytes, const fs::path &where) {
  while (!bytes.empty()) {
    const ssize_t n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR)
        continue;
      throw configuration_error("write failed for " + where.string() + ": " +
                                std::strerror(errno));
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

void fsync_dir(const fs::path &dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

} // namespace

FsBlobStore::FsBlobStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec)
    throw configuration_error("cannot create blob store at " + root_.string() +
                              ": " + ec.message());
}

fs::path FsBlobStore::path_for(std::string_view digest) const {
  const std::string d(digest);
  return root_ / d.substr(0, 2) / d.substr(2, 2) / d;
}

std::string FsBlobStore::put(std::string_view bytes) {
  auto digest = sha256_hex(bytes);
  const auto target = path_for(digest);
  if (fs::exists(target))
    return digest;
  fs::create_directories(target.parent_path());
  const auto tmp = target.parent_path() / temp_name();
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  if (fd < 0)
    throw configuration_error("cannot create " + tmp.string() + ": " +
                              std::strerror(errno));
  try {
    write_all(fd, bytes, tmp);
    if (::fsync(fd) != 0)
      throw configuration_error("fsync failed for " + tmp.string());
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), target.c_str()) != 0) {
    const int err = errno;
    ::unlink(tmp.c_str());
    throw configuration_error("rename into " + target.string() +
                              " failed: " + std::strerror(err));
  }
  fsync_dir(target.parent_path());
  return digest;
}

std::optional<std::string> FsBlobStore::get(std::string_view digest) const {
  if (!is_hex_digest(digest))
    return std::nullopt;
  std::ifstream in(path_for(digest), std::ios::binary);
  if (!in)
    return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool FsBlobStore::contains(std::string_view digest) const {
  return is_hex_digest(digest) && fs::exists(path_for(digest));
}

std::vector<std::string> FsBlobStore::keys() const {
  std::vector<std::string> out;
  for (const auto &entry : fs::recursive_directory_iterator(root_)) {
    if (!entry.is_regular_file())
      continue;
    const auto name = entry.path().filename().string();
    if (is_hex_digest(name))
      out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace clay
