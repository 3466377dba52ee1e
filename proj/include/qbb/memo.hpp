#pragma once

#include <map>
#include <memory>
#include <mutex>

namespace qbb {

// Map from keys to immutable shared values. The builder runs outside the lock, so
// builders may recurse into other keys; the first published value wins.
template <class K, class V>
class KeyedCache {
 public:
  template <class F>
  std::shared_ptr<const V> get(const K& k, F&& make) const {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = table_.find(k);
      if (it != table_.end()) return it->second;
    }
    auto v = std::make_shared<const V>(make());
    std::lock_guard<std::mutex> g(mu_);
    return table_.emplace(k, std::move(v)).first->second;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> g(mu_);
    return table_.size();
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<K, std::shared_ptr<const V>> table_;
};

}  // namespace qbb
