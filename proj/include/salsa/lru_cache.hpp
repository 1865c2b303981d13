#ifndef SALSA_LRU_CACHE_HPP_
#define SALSA_LRU_CACHE_HPP_

#include <cstdint>
#include <list>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace salsa {

// Fixed-capacity LRU key store. Keys are opaque 64-bit ids; values never
// matter to the simulation.
class LruCache {
 public:
  explicit LruCache(size_t capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("LruCache: capacity must be >= 1");
  }

  size_t capacity() const { return capacity_; }
  size_t size() const { return index_.size(); }
  uint64_t insertionCount() const { return insertionCount_; }

  bool contains(uint64_t key) const { return index_.count(key) != 0; }

  // hit iff present; a hit refreshes recency.
  bool lookup(uint64_t key) {
    auto it = index_.find(key);
    if (it == index_.end()) return false;
    recency_.splice(recency_.begin(), recency_, it->second);
    return true;
  }

  // Caller inserts only on miss. Returns the evicted key, if any.
  std::optional<uint64_t> insert(uint64_t key) {
    if (index_.count(key)) throw std::logic_error("LruCache::insert: key already present");
    std::optional<uint64_t> evicted;
    if (index_.size() == capacity_) {
      uint64_t victim = recency_.back();
      recency_.pop_back();
      index_.erase(victim);
      evicted = victim;
    }
    recency_.push_front(key);
    index_[key] = recency_.begin();
    ++insertionCount_;
    return evicted;
  }

  std::vector<uint64_t> items() const {
    return std::vector<uint64_t>(recency_.begin(), recency_.end());
  }

 private:
  size_t capacity_;
  std::list<uint64_t> recency_;  // front = most recently used
  std::unordered_map<uint64_t, std::list<uint64_t>::iterator> index_;
  uint64_t insertionCount_ = 0;
};

}  // namespace salsa

#endif  // SALSA_LRU_CACHE_HPP_
