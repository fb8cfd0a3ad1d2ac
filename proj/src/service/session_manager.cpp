#include "clay/service/session_manager.hpp"

#include "clay/common/error.hpp"
#include "clay/core/session_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>

namespace clay {

namespace fs = std::filesystem;

struct SessionManager::Entry {
  std::mutex mu;
  Session session;
  int fd = -1;

  ~Entry() {
    if (fd >= 0)
      ::close(fd);
  }
};

namespace {

void write_all(int fd, const std::string &data, const fs::path &path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR)
        continue;
      throw configuration_error("write " + path.string() + ": " +
                                std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0)
    throw configuration_error("fsync " + path.string() + ": " +
                              std::strerror(errno));
}

int open_append(const fs::path &path, bool create) {
  const int flags = O_WRONLY | O_APPEND | O_CLOEXEC | (create ? O_CREAT | O_EXCL : 0);
  const int fd = ::open(path.c_str(), flags, 0644);
  if (fd < 0)
    throw configuration_error("open " + path.string() + ": " +
                              std::strerror(errno));
  return fd;
}

void sync_dir(const fs::path &dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

// Cuts the file back to its last newline.
void drop_torn_tail(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const auto nl = data.rfind('\n');
  fs::resize_file(path, nl == std::string::npos ? 0 : nl + 1);
}

} // namespace

SessionManager::SessionManager(WorkflowEngine engine, fs::path sessions_dir,
                               std::shared_ptr<const BlobStore> blobs)
    : engine_(std::move(engine)), dir_(std::move(sessions_dir)),
      blobs_(std::move(blobs)) {
  fs::create_directories(dir_);
}

SessionManager::~SessionManager() = default;

SessionManager::RestoreReport SessionManager::restore_all() {
  RestoreReport report;
  std::vector<fs::path> logs;
  for (const auto &entry : fs::directory_iterator(dir_))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      logs.push_back(entry.path());
  std::sort(logs.begin(), logs.end());

  for (const auto &path : logs) {
    try {
      ParsedLog log = read_log_file(path.string(), true);
      if (log.truncated_tail) {
        drop_torn_tail(path);
        report.warnings.push_back(path.string() +
                                  ": dropped an incomplete final line");
      }
      Session s = restore_session(log);
      std::vector<std::string> missing;
      for (const auto &a : s.artifacts)
        for (const auto &ref : a.image_refs)
          if (blobs_ && !blobs_->contains(ref))
            missing.push_back(a.id + " -> " + ref);
      if (!missing.empty()) {
        report.warnings.push_back(path.string() + ": skipped, " +
                                  std::to_string(missing.size()) +
                                  " image(s) missing, first " + missing.front());
        continue;
      }
      auto e = std::make_shared<Entry>();
      e->session = std::move(s);
      e->fd = open_append(path, false);
      std::unique_lock lock(mu_);
      sessions_[e->session.id] = std::move(e);
      ++report.restored;
    } catch (const std::exception &ex) {
      report.warnings.push_back(path.string() + ": skipped, " + ex.what());
    }
  }
  return report;
}

Session SessionManager::create(SessionMode mode, std::string_view style_seed,
                               std::uint64_t rng_seed) {
  Session s = engine_.create_session(mode, style_seed, rng_seed);
  auto e = std::make_shared<Entry>();
  std::unique_lock lock(mu_);
  std::string id = s.id;
  for (int n = 2; sessions_.count(id) || fs::exists(dir_ / (id + ".jsonl")); ++n)
    id = s.id + "-" + std::to_string(n);
  s.id = id;
  const fs::path path = dir_ / (id + ".jsonl");
  e->fd = open_append(path, true);
  write_all(e->fd, serialize_log(s, engine_.config()), path);
  sync_dir(dir_);
  e->session = s;
  sessions_[id] = std::move(e);
  return s;
}

std::shared_ptr<SessionManager::Entry>
SessionManager::find(const std::string &id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw not_found_error("no session '" + id + "'");
  return it->second;
}

void SessionManager::append(Entry &e, std::size_t from) {
  std::string lines;
  for (std::size_t i = from; i < e.session.events.size(); ++i) {
    lines += to_log_line(e.session.events[i]);
    lines += '\n';
  }
  if (!lines.empty())
    write_all(e.fd, lines, dir_ / (e.session.id + ".jsonl"));
}

void SessionManager::mutate(
    const std::string &id,
    const std::function<void(const WorkflowEngine &, Session &)> &op) {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  const std::size_t before = e->session.events.size();
  try {
    op(engine_, e->session);
  } catch (...) {
    append(*e, before);
    throw;
  }
  append(*e, before);
}

Session SessionManager::snapshot(const std::string &id) const {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  return e->session;
}

std::vector<std::string> SessionManager::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto &[id, _] : sessions_)
    out.push_back(id);
  return out;
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

} // namespace clay
