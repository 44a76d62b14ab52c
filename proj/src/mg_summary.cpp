#include "chh/mg_summary.hpp"

#include "chh/error.hpp"

namespace chh {

MgSummary::MgSummary(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidParameter("summary capacity must be >= 1");
}

std::size_t MgSummary::update(std::string_view key) {
  ++items_seen_;
  if (auto it = table_.find(key); it != table_.end()) {
    ++it->second;
    return 1;
  }
  table_.emplace(std::string(key), 1);
  if (table_.size() <= capacity_) return 1;

  std::size_t touched = 0;
  for (auto it = table_.begin(); it != table_.end();) {
    ++touched;
    if (--it->second == 0) {
      it = table_.erase(it);
    } else {
      ++it;
    }
  }
  return touched + 1;
}

std::uint64_t MgSummary::estimate(std::string_view key) const {
  auto it = table_.find(key);
  return it == table_.end() ? 0 : it->second;
}

bool MgSummary::decrement_smallest() {
  if (table_.empty()) return false;
  auto it = table_.begin();
  if (--it->second == 0) table_.erase(it);
  return true;
}

std::vector<MgEntry> MgSummary::entries() const {
  std::vector<MgEntry> out;
  out.reserve(table_.size());
  for (const auto& [key, count] : table_) out.push_back({key, count});
  return out;
}

std::uint64_t MgSummary::total_count() const {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : table_) sum += count;
  return sum;
}

MgSummary MgSummary::restore(std::size_t capacity, std::uint64_t items_seen, std::vector<MgEntry> entries) {
  MgSummary out(capacity);
  if (entries.size() > capacity) throw InvalidParameter("more entries than capacity");
  out.items_seen_ = items_seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].count == 0) throw InvalidParameter("zero count entry");
    if (i > 0 && !(entries[i - 1].key < entries[i].key)) throw InvalidParameter("entries not strictly sorted");
  }
  for (auto& e : entries) out.table_.emplace_hint(out.table_.end(), std::move(e.key), e.count);
  return out;
}

}  // namespace chh
