/* Copyright 2026 The equitensor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace equitensor {

/// Memo table with concurrent readers. Values are built outside the lock and
/// published once; if two threads race on the same key the first insert wins
/// and both observe that value. Entries are never evicted, so references stay valid.
template <class Key, class Value>
class ConcurrentCache {
 public:
  template <class Compute>
  const Value& get_or_compute(const Key& key, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return *it->second;
    }
    auto fresh = std::make_shared<const Value>(compute());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(fresh));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> map_;
};

}  // namespace equitensor
