#pragma once

#include "griddraw/io.hpp"
#include "griddraw/max_anneal.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace griddraw {

/// Identity of a cached instance: grid, class sizes or graph hash, and objective.
struct CacheKey {
  std::string text;
  Objective objective = Objective::minimize;

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

CacheKey coloring_key(const GridSpec& grid, const PartitionSpec& spec, Objective objective);
CacheKey graph_key(const Graph& g, Objective objective = Objective::minimize);

/// Append-only JSON-lines store of the best known record per key. Each line is
/// {"key": ..., "objective": "min"|"max", "record": RunRecord}. Writers serialize
/// through an advisory lock on the file.
class ResultCache {
 public:
  /// Warnings about unreadable lines go to `warnings` (may be null).
  explicit ResultCache(std::filesystem::path path, std::ostream* warnings = nullptr);

  /// Best record for the key; ties go to the earliest line.
  [[nodiscard]] std::optional<RunRecord> lookup(const CacheKey& key) const;

  /// Appends the candidate when it strictly improves on the stored best and
  /// returns the best record after the update.
  RunRecord update(const CacheKey& key, const RunRecord& candidate);

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  [[nodiscard]] std::optional<RunRecord> scan(const CacheKey& key) const;

  std::filesystem::path path_;
  std::ostream* warnings_;
};

}  // namespace griddraw
