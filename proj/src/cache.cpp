#include "qcurve/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <json.hpp>
#include <set>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::optional<fs::path> resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv("QCURVE_CACHE_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

namespace {

json header(const std::string& kind) {
  return json{{"schema", "qcurve-cache"}, {"version", kCacheVersion}, {"kind", kind}};
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xF];
  return s;
}

// The hashed payload: every entry field except "check", in a fixed order.
std::string payload(const json& entry) {
  json copy = entry;
  copy.erase("check");
  return copy.dump();
}

json with_check(json entry) {
  entry["check"] = hex64(fnv1a64(payload(entry)));
  return entry;
}

// Kind-specific conversion between table entries and JSON lines.
template <class Key, class Value>
struct Codec {
  std::string kind;
  std::function<json(const Key&, const Value&)> encode;
  std::function<std::pair<Key, Value>(const json&)> decode;  // throws on bad input
};

Codec<CatalanKey, Integer> catalan_codec() {
  return {"catalan",
          [](const CatalanKey& k, const Integer& v) {
            return json{{"kind", "catalan"}, {"g", k.g}, {"mu", k.mu}, {"value", v.get_str()}};
          },
          [](const json& j) {
            CatalanKey k{j.at("g").get<int>(), j.at("mu").get<std::vector<int>>()};
            Rational v = Rational::parse(j.at("value").get<std::string>());
            if (!v.is_integer() || v.sign() < 0) throw IntegrityError("catalan value must be a non-negative integer");
            return std::pair{k, v.num()};
          }};
}

Codec<HurwitzKey, Rational> hurwitz_codec() {
  return {"hurwitz",
          [](const HurwitzKey& k, const Rational& v) {
            return json{{"kind", "hurwitz"}, {"r", k.r}, {"g", k.g}, {"mu", k.mu}, {"value", v.str()}};
          },
          [](const json& j) {
            HurwitzKey k{j.at("r").get<int>(), j.at("g").get<int>(), j.at("mu").get<std::vector<int>>()};
            Rational v = Rational::parse(j.at("value").get<std::string>());
            if (v.sign() < 0) throw IntegrityError("hurwitz value must be non-negative");
            return std::pair{k, v};
          }};
}

fs::path file_for(const fs::path& dir, const std::string& kind) { return dir / (kind + ".jsonl"); }

bool header_ok(const std::string& line, const std::string& kind) {
  try {
    json h = json::parse(line);
    return h.value("schema", "") == "qcurve-cache" && h.value("version", -1) == kCacheVersion &&
           h.value("kind", "") == kind;
  } catch (const json::exception&) {
    return false;
  }
}

void write_file(const fs::path& path, const std::string& kind, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw UsageError("cannot write cache file " + path.string());
  out << header(kind).dump() << '\n';
  for (const auto& l : lines) out << l << '\n';
}

template <class Key, class Value>
struct ParsedFile {
  bool header_valid = false;
  std::vector<std::pair<Key, Value>> entries;
  std::vector<std::string> good_lines;
  std::vector<std::string> bad_lines;
};

template <class Key, class Value>
ParsedFile<Key, Value> parse_file(const fs::path& path, const Codec<Key, Value>& codec) {
  ParsedFile<Key, Value> out;
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) return out;
  out.header_valid = header_ok(line, codec.kind);
  if (!out.header_valid) return out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      if (j.at("kind").get<std::string>() != codec.kind) throw IntegrityError("wrong kind");
      if (j.at("check").get<std::string>() != hex64(fnv1a64(payload(j)))) throw IntegrityError("check mismatch");
      out.entries.push_back(codec.decode(j));
      out.good_lines.push_back(line);
    } catch (const std::exception&) {
      out.bad_lines.push_back(line);
    }
  }
  return out;
}

template <class Key, class Value>
CacheLoadReport load(const fs::path& dir, MemoTable<Key, Value>& table, const Codec<Key, Value>& codec) {
  CacheLoadReport report;
  const fs::path path = file_for(dir, codec.kind);
  if (!fs::exists(path)) return report;
  auto parsed = parse_file(path, codec);
  if (!parsed.header_valid) {
    report.rebuilt = true;
    report.warnings.push_back(path.string() + ": missing or foreign schema header; rebuilding");
    write_file(path, codec.kind, {});
    return report;
  }
  for (const auto& [k, v] : parsed.entries) table.insert(k, v);
  report.loaded = parsed.entries.size();
  if (!parsed.bad_lines.empty()) {
    std::ofstream q(path.string() + ".quarantine", std::ios::app);
    for (const auto& l : parsed.bad_lines) q << l << '\n';
    report.quarantined = parsed.bad_lines.size();
    report.warnings.push_back(path.string() + ": quarantined " + std::to_string(report.quarantined) +
                              " corrupt line(s); affected values will be recomputed");
    write_file(path, codec.kind, parsed.good_lines);
  }
  return report;
}

template <class Key, class Value>
std::size_t save(const fs::path& dir, const MemoTable<Key, Value>& table, const Codec<Key, Value>& codec) {
  fs::create_directories(dir);
  const fs::path path = file_for(dir, codec.kind);
  std::set<Key> present;
  bool valid = false;
  if (fs::exists(path)) {
    auto parsed = parse_file(path, codec);
    valid = parsed.header_valid;
    for (const auto& [k, v] : parsed.entries) present.insert(k);
  }
  if (!valid) {
    write_file(path, codec.kind, {});
    present.clear();
  }
  std::ofstream out(path, std::ios::app);
  std::size_t appended = 0;
  for (const auto& [k, v] : table.snapshot()) {
    if (present.count(k)) continue;
    out << with_check(codec.encode(k, v)).dump() << '\n';
    ++appended;
  }
  return appended;
}

template <class Key, class Value>
CacheFileInfo info(const fs::path& dir, const Codec<Key, Value>& codec) {
  CacheFileInfo i;
  i.kind = codec.kind;
  const fs::path path = file_for(dir, codec.kind);
  if (fs::exists(path)) {
    i.present = true;
    std::ifstream in(path);
    std::string line;
    if (std::getline(in, line)) {
      try {
        i.version = json::parse(line).value("version", -1);
      } catch (const json::exception&) {
      }
    }
    i.entries = parse_file(path, codec).entries.size();
  }
  const fs::path q = path.string() + ".quarantine";
  if (fs::exists(q)) {
    std::ifstream in(q);
    std::string line;
    while (std::getline(in, line)) ++i.quarantined_lines;
  }
  return i;
}

}  // namespace

CacheLoadReport load_catalan_cache(const fs::path& dir, CatalanTable& table) {
  return load(dir, table, catalan_codec());
}

CacheLoadReport load_hurwitz_cache(const fs::path& dir, HurwitzTable& table) {
  return load(dir, table, hurwitz_codec());
}

std::size_t save_catalan_cache(const fs::path& dir, const CatalanTable& table) {
  return save(dir, table, catalan_codec());
}

std::size_t save_hurwitz_cache(const fs::path& dir, const HurwitzTable& table) {
  return save(dir, table, hurwitz_codec());
}

std::vector<CacheFileInfo> inspect_cache(const fs::path& dir) {
  return {info(dir, catalan_codec()), info(dir, hurwitz_codec())};
}

std::size_t clear_cache(const fs::path& dir) {
  std::size_t removed = 0;
  for (const char* kind : {"catalan", "hurwitz"}) {
    const fs::path path = file_for(dir, kind);
    removed += fs::remove(path) ? 1 : 0;
    removed += fs::remove(path.string() + ".quarantine") ? 1 : 0;
  }
  return removed;
}

}  // namespace qcurve
