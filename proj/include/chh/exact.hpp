#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chh/fraction.hpp"
#include "chh/sketch.hpp"
#include "chh/tuple_source.hpp"

namespace chh {

using CountMap = std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

// Ground-truth frequencies. The naive method fills every primary and pair;
// the multi-pass method only keeps candidates.
struct ExactCounts {
  std::uint64_t n = 0;
  CountMap primary;                                                             // d -> f_d
  std::unordered_map<std::string, CountMap, StringHash, std::equal_to<>> pairs;  // d -> s -> f_{d,s}

  std::uint64_t primary_count(std::string_view d) const;
  std::uint64_t pair_count(std::string_view d, std::string_view s) const;
};

struct ExactPair {
  std::string secondary;
  std::uint64_t count = 0;

  friend bool operator==(const ExactPair&, const ExactPair&) = default;
};

struct ExactPrimary {
  std::string primary;
  std::uint64_t count = 0;
  std::vector<ExactPair> pairs;  // sorted by secondary

  friend bool operator==(const ExactPrimary&, const ExactPrimary&) = default;
};

// Exact answer: every d with f_d > phi1 N and, under it, every s with
// f_{d,s} > phi2 f_d. Sorted by key at both levels.
struct ExactChhSet {
  std::uint64_t n = 0;
  std::vector<ExactPrimary> primaries;

  std::size_t pair_count() const;

  friend bool operator==(const ExactChhSet&, const ExactChhSet&) = default;
};

struct ExactResult {
  ExactChhSet chh;
  ExactCounts counts;
};

inline constexpr std::uint64_t kDefaultTupleCap = 100'000'000;

// Four passes over a replayable source, never buffering it:
//   1. Misra-Gries with capacity ceil(1/phi1) over primaries -> candidates
//   2. exact candidate counts and N -> heavy primaries
//   3. per heavy primary, Misra-Gries with capacity ceil(1/phi2) -> candidates
//   4. exact candidate pair counts -> correlated heavy hitters
// Throws UnsupportedSource for non-replayable sources.
ExactResult exact_chh_multipass(TupleSource& source, const Fraction& phi1, const Fraction& phi2);

// Counts every primary and every pair in memory. Throws ResourceLimit once
// more than `tuple_cap` tuples have been read.
ExactCounts exact_counts_naive(TupleSource& source, std::uint64_t tuple_cap = kDefaultTupleCap);

// Applies the exact definitions to complete counts.
ExactChhSet exact_chh_from_counts(const ExactCounts& counts, const Fraction& phi1, const Fraction& phi2);

}  // namespace chh
