#include "chh/offset_mg_summary.hpp"

#include "chh/error.hpp"

namespace chh {

OffsetMgSummary::OffsetMgSummary(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidParameter("summary capacity must be >= 1");
}

OffsetMgSummary::OffsetMgSummary(const OffsetMgSummary& other)
    : capacity_(other.capacity_), items_seen_(other.items_seen_), offset_(other.offset_), table_(other.table_) {
  rebuild_index();
}

OffsetMgSummary& OffsetMgSummary::operator=(const OffsetMgSummary& other) {
  if (this != &other) {
    capacity_ = other.capacity_;
    items_seen_ = other.items_seen_;
    offset_ = other.offset_;
    table_ = other.table_;
    rebuild_index();
  }
  return *this;
}

void OffsetMgSummary::rebuild_index() {
  by_raw_.clear();
  for (const auto& [key, raw] : table_) by_raw_.emplace(raw, std::string_view(key));
}

std::size_t OffsetMgSummary::update(std::string_view key) {
  ++items_seen_;
  if (auto it = table_.find(key); it != table_.end()) {
    by_raw_.erase({it->second, std::string_view(it->first)});
    ++it->second;
    by_raw_.emplace(it->second, std::string_view(it->first));
    return 1;
  }

  auto [it, inserted] = table_.emplace(std::string(key), offset_ + 1);
  by_raw_.emplace(it->second, std::string_view(it->first));
  if (table_.size() <= capacity_) return 1;

  ++offset_;
  std::size_t touched = 1;
  while (!by_raw_.empty() && by_raw_.begin()->first <= offset_) {
    auto victim = by_raw_.begin();
    auto node = table_.find(victim->second);
    by_raw_.erase(victim);
    table_.erase(node);
    ++touched;
  }
  return touched;
}

std::uint64_t OffsetMgSummary::estimate(std::string_view key) const {
  auto it = table_.find(key);
  return it == table_.end() ? 0 : it->second - offset_;
}

bool OffsetMgSummary::decrement_smallest() {
  if (table_.empty()) return false;
  auto it = table_.begin();
  by_raw_.erase({it->second, std::string_view(it->first)});
  if (--it->second == offset_) {
    table_.erase(it);
  } else {
    by_raw_.emplace(it->second, std::string_view(it->first));
  }
  return true;
}

std::vector<MgEntry> OffsetMgSummary::entries() const {
  std::vector<MgEntry> out;
  out.reserve(table_.size());
  for (const auto& [key, raw] : table_) out.push_back({key, raw - offset_});
  return out;
}

std::uint64_t OffsetMgSummary::total_count() const {
  std::uint64_t sum = 0;
  for (const auto& [key, raw] : table_) sum += raw - offset_;
  return sum;
}

OffsetMgSummary OffsetMgSummary::restore(std::size_t capacity, std::uint64_t items_seen,
                                         std::vector<MgEntry> entries) {
  // Offset restarts at zero; only differences from it are observable.
  auto reference = MgSummary::restore(capacity, items_seen, entries);
  OffsetMgSummary out(capacity);
  out.items_seen_ = reference.items_seen();
  for (auto& e : entries) out.table_.emplace_hint(out.table_.end(), std::move(e.key), e.count);
  out.rebuild_index();
  return out;
}

}  // namespace chh
