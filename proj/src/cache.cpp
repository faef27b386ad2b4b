#include "griddraw/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace griddraw {

namespace {

std::string_view objective_name(Objective o) { return o == Objective::maximize ? "max" : "min"; }

bool improves(Objective o, const Rational& candidate, const Rational& best) {
  return o == Objective::maximize ? candidate > best : candidate < best;
}

/// Exclusive advisory lock held for the lifetime of the object.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot open cache " + path.string());
    while (::flock(fd_, LOCK_EX) != 0) {
      if (errno != EINTR) {
        const int err = errno;
        ::close(fd_);
        throw std::system_error(err, std::generic_category(), "cannot lock cache " + path.string());
      }
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

CacheKey coloring_key(const GridSpec& grid, const PartitionSpec& spec, Objective objective) {
  std::ostringstream ss;
  ss << "grid:" << grid.dim << ':' << grid.half_width << (grid.exclude_origin ? ":x" : "") << "/classes:";
  for (int i = 0; i < spec.class_count(); ++i) ss << (i ? "," : "") << spec.size(i);
  return {ss.str(), objective};
}

CacheKey graph_key(const Graph& g, Objective objective) {
  std::ostringstream ss;
  ss << "graph:" << g.vertex_count() << ':' << std::hex << graph_hash(g);
  return {ss.str(), objective};
}

ResultCache::ResultCache(std::filesystem::path path, std::ostream* warnings)
    : path_(std::move(path)), warnings_(warnings) {}

std::optional<RunRecord> ResultCache::scan(const CacheKey& key) const {
  std::ifstream in(path_);
  std::optional<RunRecord> best;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      const auto j = Json::parse(line);
      if (j.at("key").get<std::string>() != key.text) continue;
      if (j.at("objective").get<std::string>() != objective_name(key.objective)) continue;
      auto rec = run_record_from_json(j.at("record"));
      if (!best || improves(key.objective, rec.lambda, best->lambda)) best = std::move(rec);
    } catch (const std::exception& e) {
      if (warnings_) *warnings_ << "warning: skipping corrupt cache line " << lineno << " in " << path_.string() << ": " << e.what() << '\n';
    }
  }
  return best;
}

std::optional<RunRecord> ResultCache::lookup(const CacheKey& key) const {
  if (!std::filesystem::exists(path_)) return std::nullopt;
  return scan(key);
}

RunRecord ResultCache::update(const CacheKey& key, const RunRecord& candidate) {
  const FileLock lock(path_);
  auto best = scan(key);
  if (best && !improves(key.objective, candidate.lambda, best->lambda)) return *best;
  const Json line{{"key", key.text}, {"objective", objective_name(key.objective)}, {"record", to_json(candidate)}};
  bool torn = false;  // a previous writer died mid-line
  if (const auto size = std::filesystem::file_size(path_); size > 0) {
    std::ifstream tail(path_, std::ios::binary);
    tail.seekg(static_cast<std::streamoff>(size) - 1);
    torn = tail.get() != '\n';
  }
  std::ofstream out(path_, std::ios::app);
  if (torn) out << '\n';
  out << line.dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to cache " + path_.string());
  return candidate;
}

}  // namespace griddraw
