#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chh/error.hpp"
#include "chh/exact.hpp"
#include "chh/params.hpp"
#include "chh/sketch.hpp"

namespace chh {

struct ItemError {
  std::string primary;
  std::string secondary;  // empty for primary items
  double error = 0.0;
};

struct ErrorStats {
  std::vector<ItemError> items;
  double max_error = 0.0;
  double avg_error = 0.0;
  double theoretical_max = 0.0;
  bool empty = true;
};

// Denominator of the secondary theoretical maximum 1/s2 + 1/(phi s1).
enum class TheoryDenominator { kPhi1, kPhi1MinusEps1 };

double primary_theoretical_max(const ChhParams& params);
double secondary_theoretical_max(const ChhParams& params, TheoryDenominator denom = TheoryDenominator::kPhi1MinusEps1);

// Fills max/avg/empty from `items`.
void summarize(ErrorStats& stats);

// Error (f_d - est_d) / N over exactly the primaries with f_d > phi1 N.
template <typename Sketch>
ErrorStats primary_error_stats(const ExactCounts& exact, const Sketch& sketch, const Fraction& phi1) {
  if (exact.n != sketch.n()) throw InconsistentInput("exact counts and sketch cover different stream lengths");
  ErrorStats stats;
  stats.theoretical_max = primary_theoretical_max(sketch.params());
  for (const auto& [d, f_d] : exact.primary) {
    if (!exceeds_fraction_of(f_d, phi1, exact.n)) continue;
    const double diff = static_cast<double>(f_d) - static_cast<double>(sketch.estimate_primary(d));
    stats.items.push_back({d, {}, diff / static_cast<double>(exact.n)});
  }
  summarize(stats);
  return stats;
}

// Error (f_ds - est_ds) / f_d over exactly the pairs with f_d > phi1 N and
// f_ds > phi2 f_d.
template <typename Sketch>
ErrorStats secondary_error_stats(const ExactCounts& exact, const Sketch& sketch, const Fraction& phi1,
                                 const Fraction& phi2,
                                 TheoryDenominator denom = TheoryDenominator::kPhi1MinusEps1) {
  if (exact.n != sketch.n()) throw InconsistentInput("exact counts and sketch cover different stream lengths");
  ErrorStats stats;
  stats.theoretical_max = secondary_theoretical_max(sketch.params(), denom);
  for (const auto& [d, f_d] : exact.primary) {
    if (!exceeds_fraction_of(f_d, phi1, exact.n)) continue;
    auto row = exact.pairs.find(d);
    if (row == exact.pairs.end()) continue;
    for (const auto& [s, f_ds] : row->second) {
      if (!exceeds_fraction_of(f_ds, phi2, f_d)) continue;
      const double diff = static_cast<double>(f_ds) - static_cast<double>(sketch.estimate_pair(d, s));
      stats.items.push_back({d, s, diff / static_cast<double>(f_d)});
    }
  }
  summarize(stats);
  return stats;
}

struct SweepConfig {
  Fraction phi1;
  Fraction phi2;
  std::optional<Fraction> eps1;
  std::optional<Fraction> eps2;
  std::vector<std::uint64_t> s1_list;
  std::vector<std::uint64_t> s2_list;
  TheoryDenominator denominator = TheoryDenominator::kPhi1MinusEps1;
};

struct SweepRow {
  ChhParams params;
  std::uint64_t n = 0;
  ErrorStats primary;
  ErrorStats secondary;
  std::size_t reported_primaries = 0;
  std::size_t reported_pairs = 0;
  bool constraints_ok = false;
};

// One row per (s1, s2) in s1_list x s2_list, in list order. The multi-pass
// oracle runs once; all sketches are then fed in a single further pass.
std::vector<SweepRow> sweep(TupleSource& source, const SweepConfig& config);

inline constexpr const char* kSweepCsvHeader =
    "s1,s2,n,primary_max,primary_avg,primary_theory,secondary_max,secondary_avg,secondary_theory,"
    "reported_primaries,reported_pairs";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Scaled-down space/time comparison of naive exact counting against the sketch.
struct TimingResult {
  std::uint64_t n = 0;
  double naive_seconds = 0.0;
  double sketch_seconds = 0.0;
  std::uint64_t naive_pairs_stored = 0;   // distinct (d, s) pairs
  std::uint64_t sketch_pairs_stored = 0;  // sum over d of |H_d|
};

TimingResult compare_naive_and_sketch(TupleSource& source, const ChhParams& params,
                                      std::uint64_t tuple_cap = kDefaultTupleCap);

}  // namespace chh
