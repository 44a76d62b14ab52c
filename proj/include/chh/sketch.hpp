#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chh/error.hpp"
#include "chh/mg_summary.hpp"
#include "chh/offset_mg_summary.hpp"
#include "chh/params.hpp"
#include "chh/report.hpp"

namespace chh {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

// Representation-neutral contents of a sketch, sorted by key at both levels.
// This is what snapshots serialize.
struct SketchState {
  struct Primary {
    std::string key;
    std::uint64_t est_count = 0;
    std::uint64_t inner_items_seen = 0;
    std::vector<MgEntry> inner;

    friend bool operator==(const Primary&, const Primary&) = default;
  };

  ChhParams params;
  std::uint64_t n = 0;
  std::vector<Primary> primaries;

  friend bool operator==(const SketchState&, const SketchState&) = default;
};

// Single-pass correlated heavy-hitter sketch.
//
// The outer table maps each tracked primary value d to an estimated count and
// an inner Misra-Gries summary of the secondary values seen with d. The outer
// table holds at most s1 entries and each inner table at most s2. When a new
// primary overflows the outer table every primary count drops by one and, to
// keep the inner total at or below it, the smallest inner key with a positive
// count drops by one as well. Primaries reaching zero are evicted together
// with their inner table.
template <FrequencySummary Inner>
class BasicChhSketch {
 public:
  struct PrimaryEntry {
    std::uint64_t est_count = 0;
    Inner inner;
  };

  explicit BasicChhSketch(ChhParams params) : params_(std::move(params)) {
    validate(params_);
    table_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(params_.s1 + 1, 1u << 20)));
  }

  void update(std::string_view x, std::string_view y) {
    ++n_;
    if (auto it = table_.find(x); it != table_.end()) {
      ++it->second.est_count;
      const std::size_t touched = it->second.inner.update(y);
      if (touched > 1) ++inner_overflows_;
      last_update_work_ = 1 + touched;
      return;
    }

    auto [it, inserted] = table_.emplace(std::string(x), PrimaryEntry{1, Inner(params_.s2)});
    it->second.inner.update(y);
    last_update_work_ = 2;
    if (table_.size() <= params_.s1) return;

    ++primary_overflows_;
    for (auto cur = table_.begin(); cur != table_.end();) {
      auto& entry = cur->second;
      --entry.est_count;
      entry.inner.decrement_smallest();
      last_update_work_ += 2;
      if (entry.est_count == 0) {
        cur = table_.erase(cur);
      } else {
        ++cur;
      }
    }
  }

  std::uint64_t estimate_primary(std::string_view d) const {
    auto it = table_.find(d);
    return it == table_.end() ? 0 : it->second.est_count;
  }

  std::uint64_t estimate_pair(std::string_view d, std::string_view s) const {
    auto it = table_.find(d);
    return it == table_.end() ? 0 : it->second.inner.estimate(s);
  }

  const PrimaryEntry* find(std::string_view d) const {
    auto it = table_.find(d);
    return it == table_.end() ? nullptr : &it->second;
  }

  // Unordered traversal of (d, entry).
  template <typename F>
  void for_each_primary(F&& fn) const {
    for (const auto& [key, entry] : table_) fn(std::string_view(key), entry);
  }

  ChhReport report() const {
    const ReportRule rule(params_, n_);
    std::vector<const typename Table::value_type*> hits;
    for (const auto& kv : table_) {
      if (rule.primary_passes(kv.second.est_count)) hits.push_back(&kv);
    }
    std::sort(hits.begin(), hits.end(), [](auto* a, auto* b) { return a->first < b->first; });

    ChhReport out;
    out.n = n_;
    out.primaries.reserve(hits.size());
    for (const auto* kv : hits) {
      ReportedPrimary row{kv->first, kv->second.est_count, {}};
      const std::uint64_t pair_min = rule.pair_min(kv->second.est_count);
      kv->second.inner.for_each([&](std::string_view s, std::uint64_t count) {
        if (count >= pair_min) row.pairs.push_back({std::string(s), count});
      });
      out.primaries.push_back(std::move(row));
    }
    return out;
  }

  SketchState state() const {
    SketchState out{params_, n_, {}};
    out.primaries.reserve(table_.size());
    for (const auto& [key, entry] : table_) {
      out.primaries.push_back({key, entry.est_count, entry.inner.items_seen(), entry.inner.entries()});
    }
    std::sort(out.primaries.begin(), out.primaries.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
  }

  // Throws SnapshotError if the state violates a sketch invariant.
  static BasicChhSketch from_state(SketchState state) {
    try {
      validate(state.params);
    } catch (const InvalidParameter& e) {
      throw SnapshotError(std::string("bad parameters: ") + e.what());
    }
    BasicChhSketch out(state.params);
    if (state.primaries.size() > state.params.s1) throw SnapshotError("more primaries than s1");
    for (std::size_t i = 1; i < state.primaries.size(); ++i) {
      if (!(state.primaries[i - 1].key < state.primaries[i].key)) throw SnapshotError("primaries not strictly sorted");
    }
    std::uint64_t total = 0;
    for (auto& p : state.primaries) {
      if (p.est_count == 0) throw SnapshotError("primary with zero count");
      std::uint64_t inner_sum = 0;
      for (const auto& e : p.inner) inner_sum += e.count;
      if (inner_sum > p.est_count) throw SnapshotError("inner counts exceed primary count");
      total += p.est_count;
      try {
        out.table_.emplace(std::move(p.key), PrimaryEntry{p.est_count, Inner::restore(state.params.s2,
                                                                                      p.inner_items_seen,
                                                                                      std::move(p.inner))});
      } catch (const InvalidParameter& e) {
        throw SnapshotError(std::string("bad inner table: ") + e.what());
      }
    }
    if (total > state.n) throw SnapshotError("primary counts exceed stream length");
    out.n_ = state.n;
    return out;
  }

  const ChhParams& params() const noexcept { return params_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }

  // Number of updates whose new primary overflowed the outer table.
  std::uint64_t primary_overflows() const noexcept { return primary_overflows_; }
  // Number of updates that overflowed an inner table.
  std::uint64_t inner_overflows() const noexcept { return inner_overflows_; }
  // Entry operations performed by the most recent update.
  std::size_t last_update_work() const noexcept { return last_update_work_; }

 private:
  using Table = std::unordered_map<std::string, PrimaryEntry, StringHash, std::equal_to<>>;

  ChhParams params_;
  std::uint64_t n_ = 0;
  Table table_;
  std::uint64_t primary_overflows_ = 0;
  std::uint64_t inner_overflows_ = 0;
  std::size_t last_update_work_ = 0;
};

// Reference sketch: inner tables decrement eagerly.
using ChhSketch = BasicChhSketch<MgSummary>;
// Inner tables use the shared-offset summary.
using OffsetChhSketch = BasicChhSketch<OffsetMgSummary>;

}  // namespace chh
