#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chh/mg_summary.hpp"

namespace chh {

// Misra-Gries summary with a shared decrement offset.
//
// Each entry stores raw = count + offset. Decrement-all bumps the offset and
// evicts only the entries whose raw value reached it, found through a
// (raw, key) index, so an overflow costs O(evicted * log capacity) instead of
// a walk over the whole table. Observable state matches MgSummary exactly.
class OffsetMgSummary {
 public:
  explicit OffsetMgSummary(std::size_t capacity);

  OffsetMgSummary(const OffsetMgSummary& other);
  OffsetMgSummary& operator=(const OffsetMgSummary& other);
  OffsetMgSummary(OffsetMgSummary&&) noexcept = default;
  OffsetMgSummary& operator=(OffsetMgSummary&&) noexcept = default;

  std::size_t update(std::string_view key);
  std::uint64_t estimate(std::string_view key) const;
  bool decrement_smallest();
  std::vector<MgEntry> entries() const;

  template <typename F>
  void for_each(F&& fn) const {
    for (const auto& [key, raw] : table_) fn(std::string_view(key), raw - offset_);
  }

  std::uint64_t total_count() const;
  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::uint64_t items_seen() const noexcept { return items_seen_; }

  static OffsetMgSummary restore(std::size_t capacity, std::uint64_t items_seen, std::vector<MgEntry> entries);

 private:
  using Table = std::map<std::string, std::uint64_t, std::less<>>;
  // Views point into the keys owned by table_, which are node-stable.
  using Index = std::set<std::pair<std::uint64_t, std::string_view>>;

  void rebuild_index();

  std::size_t capacity_;
  std::uint64_t items_seen_ = 0;
  std::uint64_t offset_ = 0;
  Table table_;
  Index by_raw_;
};

}  // namespace chh
