#include "chh/exact.hpp"

#include <algorithm>

#include "chh/error.hpp"
#include "chh/mg_summary.hpp"

namespace chh {

namespace {

void require_threshold(const Fraction& phi, const char* name) {
  if (!(Fraction(0, 1) < phi && phi < Fraction(1, 1))) {
    throw InvalidParameter(std::string(name) + " must satisfy 0 < " + name + " < 1, got " + phi.to_string());
  }
}

std::size_t mg_capacity_for(const Fraction& phi) {
  const auto num = static_cast<std::uint64_t>(phi.num());
  const auto den = static_cast<std::uint64_t>(phi.den());
  return static_cast<std::size_t>((den + num - 1) / num);
}

template <typename Map>
std::vector<typename Map::const_pointer> sorted_by_key(const Map& m) {
  std::vector<typename Map::const_pointer> out;
  out.reserve(m.size());
  for (const auto& kv : m) out.push_back(&kv);
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a->first < b->first; });
  return out;
}

void rewind_or_throw(TupleSource& source) {
  if (!source.replayable()) throw UnsupportedSource("multi-pass oracle needs a replayable source");
  source.rewind();
}

}  // namespace

std::uint64_t ExactCounts::primary_count(std::string_view d) const {
  auto it = primary.find(d);
  return it == primary.end() ? 0 : it->second;
}

std::uint64_t ExactCounts::pair_count(std::string_view d, std::string_view s) const {
  auto it = pairs.find(d);
  if (it == pairs.end()) return 0;
  auto jt = it->second.find(s);
  return jt == it->second.end() ? 0 : jt->second;
}

std::size_t ExactChhSet::pair_count() const {
  std::size_t total = 0;
  for (const auto& p : primaries) total += p.pairs.size();
  return total;
}

ExactResult exact_chh_multipass(TupleSource& source, const Fraction& phi1, const Fraction& phi2) {
  require_threshold(phi1, "phi1");
  require_threshold(phi2, "phi2");

  ExactResult result;
  auto& counts = result.counts;
  TupleRecord t;

  // Pass 1: primary candidates.
  rewind_or_throw(source);
  MgSummary primary_mg(mg_capacity_for(phi1));
  while (source.next(t)) primary_mg.update(t.x);
  for (const auto& e : primary_mg.entries()) counts.primary.emplace(e.key, 0);

  // Pass 2: exact candidate counts.
  rewind_or_throw(source);
  while (source.next(t)) {
    ++counts.n;
    if (auto it = counts.primary.find(t.x); it != counts.primary.end()) ++it->second;
  }

  std::unordered_map<std::string, MgSummary, StringHash, std::equal_to<>> secondary_mg;
  for (const auto& [d, f] : counts.primary) {
    if (exceeds_fraction_of(f, phi1, counts.n)) secondary_mg.emplace(d, MgSummary(mg_capacity_for(phi2)));
  }

  // Pass 3: secondary candidates of every heavy primary, one summary each.
  rewind_or_throw(source);
  while (source.next(t)) {
    if (auto it = secondary_mg.find(t.x); it != secondary_mg.end()) it->second.update(t.y);
  }
  for (const auto& [d, mg] : secondary_mg) {
    auto& row = counts.pairs[d];
    for (const auto& e : mg.entries()) row.emplace(e.key, 0);
  }

  // Pass 4: exact candidate pair counts.
  rewind_or_throw(source);
  while (source.next(t)) {
    auto it = counts.pairs.find(t.x);
    if (it == counts.pairs.end()) continue;
    if (auto jt = it->second.find(t.y); jt != it->second.end()) ++jt->second;
  }

  result.chh.n = counts.n;
  for (const auto* kv : sorted_by_key(counts.pairs)) {
    const std::uint64_t f_d = counts.primary_count(kv->first);
    ExactPrimary row{kv->first, f_d, {}};
    for (const auto* pair : sorted_by_key(kv->second)) {
      if (exceeds_fraction_of(pair->second, phi2, f_d)) row.pairs.push_back({pair->first, pair->second});
    }
    result.chh.primaries.push_back(std::move(row));
  }
  return result;
}

ExactCounts exact_counts_naive(TupleSource& source, std::uint64_t tuple_cap) {
  ExactCounts counts;
  TupleRecord t;
  while (source.next(t)) {
    if (counts.n == tuple_cap) {
      throw ResourceLimit("naive exact counting exceeded the cap of " + std::to_string(tuple_cap) + " tuples");
    }
    ++counts.n;
    auto [pit, pnew] = counts.primary.try_emplace(t.x, 0);
    ++pit->second;
    auto [rit, rnew] = counts.pairs.try_emplace(t.x);
    auto [sit, snew] = rit->second.try_emplace(t.y, 0);
    ++sit->second;
  }
  return counts;
}

ExactChhSet exact_chh_from_counts(const ExactCounts& counts, const Fraction& phi1, const Fraction& phi2) {
  require_threshold(phi1, "phi1");
  require_threshold(phi2, "phi2");

  ExactChhSet out;
  out.n = counts.n;
  for (const auto* kv : sorted_by_key(counts.primary)) {
    if (!exceeds_fraction_of(kv->second, phi1, counts.n)) continue;
    ExactPrimary row{kv->first, kv->second, {}};
    if (auto it = counts.pairs.find(kv->first); it != counts.pairs.end()) {
      for (const auto* pair : sorted_by_key(it->second)) {
        if (exceeds_fraction_of(pair->second, phi2, kv->second)) row.pairs.push_back({pair->first, pair->second});
      }
    }
    out.primaries.push_back(std::move(row));
  }
  return out;
}

}  // namespace chh
