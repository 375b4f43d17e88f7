#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcurve/catalan.hpp"
#include "qcurve/hurwitz.hpp"

namespace qcurve {

inline constexpr int kCacheVersion = 1;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// --cache-dir if given, else $QCURVE_CACHE_DIR, else nothing.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag);

struct CacheLoadReport {
  std::size_t loaded = 0;
  std::size_t quarantined = 0;
  /// Header missing or from another schema version: the file was reset.
  bool rebuilt = false;
  std::vector<std::string> warnings;
};

/// Files are <dir>/catalan.jsonl and <dir>/hurwitz.jsonl: one header line
/// {"schema":"qcurve-cache","version":1,"kind":...} followed by one entry per
/// line. Lines that fail to parse or whose check hash does not match are moved
/// to <file>.quarantine and dropped from the table, so they get recomputed.
CacheLoadReport load_catalan_cache(const std::filesystem::path& dir, CatalanTable& table);
CacheLoadReport load_hurwitz_cache(const std::filesystem::path& dir, HurwitzTable& table);

/// Appends table entries not yet present in the file; returns how many.
std::size_t save_catalan_cache(const std::filesystem::path& dir, const CatalanTable& table);
std::size_t save_hurwitz_cache(const std::filesystem::path& dir, const HurwitzTable& table);

struct CacheFileInfo {
  std::string kind;
  bool present = false;
  std::optional<int> version;
  std::size_t entries = 0;
  std::size_t quarantined_lines = 0;
};

std::vector<CacheFileInfo> inspect_cache(const std::filesystem::path& dir);
/// Removes the cache and quarantine files; returns how many were removed.
std::size_t clear_cache(const std::filesystem::path& dir);

}  // namespace qcurve
