#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chh/params.hpp"

namespace chh {

struct ReportedPair {
  std::string secondary;
  std::uint64_t est_count = 0;

  friend bool operator==(const ReportedPair&, const ReportedPair&) = default;
};

struct ReportedPrimary {
  std::string primary;
  std::uint64_t est_count = 0;
  std::vector<ReportedPair> pairs;  // sorted by secondary key

  friend bool operator==(const ReportedPrimary&, const ReportedPrimary&) = default;
};

struct ChhReport {
  std::uint64_t n = 0;
  std::vector<ReportedPrimary> primaries;  // sorted by primary key

  std::size_t pair_count() const;

  friend bool operator==(const ChhReport&, const ChhReport&) = default;
};

// Reporting thresholds for a stream of length n, precomputed exactly.
//
// A primary d is reported when est_d >= (phi1 - 1/s1) n, and a secondary s
// stored under d when est_ds >= (phi2 - 1/s2) est_d - n/s1. Estimates are
// integers, so each rational threshold is replaced by its ceiling (floored at
// zero) and compared as an integer.
class ReportRule {
 public:
  ReportRule(const ChhParams& params, std::uint64_t n);

  std::uint64_t primary_min() const noexcept { return primary_min_; }
  std::uint64_t pair_min(std::uint64_t primary_est) const;

  bool primary_passes(std::uint64_t est) const noexcept { return est >= primary_min_; }

 private:
  Rational pair_slope_;   // phi2 - 1/s2
  Rational pair_offset_;  // n / s1
  std::uint64_t primary_min_ = 0;
};

}  // namespace chh
