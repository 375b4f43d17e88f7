#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace qcurve {

/// Memoization table shared by the recursions: concurrent readers,
/// serialized writers. Inserting an existing key keeps the first value.
template <class Key, class Value>
class MemoTable {
 public:
  static constexpr int kVersion = 1;

  std::optional<Value> lookup(const Key& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) {
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second;
  }

  void insert(const Key& key, const Value& value) {
    std::unique_lock lock(mutex_);
    map_.try_emplace(key, value);
  }

  bool contains(const Key& key) const {
    std::shared_lock lock(mutex_);
    return map_.count(key) != 0;
  }

  void erase(const Key& key) {
    std::unique_lock lock(mutex_);
    map_.erase(key);
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
    hits_ = 0;
    misses_ = 0;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  /// Sorted copy of the contents.
  std::map<Key, Value> snapshot() const {
    std::shared_lock lock(mutex_);
    return map_;
  }

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }
  int version() const { return kVersion; }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value> map_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

}  // namespace qcurve
