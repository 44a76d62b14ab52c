#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chh {

struct MgEntry {
  std::string key;
  std::uint64_t count = 0;

  friend bool operator==(const MgEntry&, const MgEntry&) = default;
};

// One-dimensional Misra-Gries summary holding at most `capacity` counters.
//
// An update increments (or inserts) the key; if that pushes the table past
// capacity every counter is decremented once and zero counters are evicted.
// Estimates never exceed the true frequency and undercount by at most
// items_seen / (capacity + 1).
//
// This is the reference implementation: the decrement step walks every entry.
// OffsetMgSummary is the optimized variant and must stay bit-identical.
class MgSummary {
 public:
  explicit MgSummary(std::size_t capacity);

  // Applies one occurrence of `key`. Returns the number of entries touched.
  std::size_t update(std::string_view key);

  std::uint64_t estimate(std::string_view key) const;

  // Decrements the byte-wise smallest key, evicting it at zero. Returns false
  // when the summary is empty.
  bool decrement_smallest();

  // Sorted by key.
  std::vector<MgEntry> entries() const;

  template <typename F>
  void for_each(F&& fn) const {
    for (const auto& [key, count] : table_) fn(std::string_view(key), count);
  }

  std::uint64_t total_count() const;
  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::uint64_t items_seen() const noexcept { return items_seen_; }

  // Rebuilds a summary from serialized state. Throws InvalidParameter if the
  // entries are unsorted, duplicated, zero, or exceed capacity.
  static MgSummary restore(std::size_t capacity, std::uint64_t items_seen, std::vector<MgEntry> entries);

 private:
  std::size_t capacity_;
  std::uint64_t items_seen_ = 0;
  std::map<std::string, std::uint64_t, std::less<>> table_;
};

// Interface shared by the reference and optimized summaries; the CHH sketch is
// parameterized over it for its inner tables.
template <typename T>
concept FrequencySummary = requires(T t, const T ct, std::string_view key, std::size_t cap, std::uint64_t n,
                                    std::vector<MgEntry> entries) {
  { T(cap) };
  { t.update(key) } -> std::same_as<std::size_t>;
  { ct.estimate(key) } -> std::same_as<std::uint64_t>;
  { t.decrement_smallest() } -> std::same_as<bool>;
  { ct.entries() } -> std::same_as<std::vector<MgEntry>>;
  { ct.total_count() } -> std::same_as<std::uint64_t>;
  { ct.size() } -> std::same_as<std::size_t>;
  { ct.items_seen() } -> std::same_as<std::uint64_t>;
  { T::restore(cap, n, entries) } -> std::same_as<T>;
};

}  // namespace chh
