#pragma once

// Shared helpers for the unit and acceptance suites: random streams and the
// bound checks, all computed from full counts rather than the sketch's own
// bookkeeping.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "chh/exact.hpp"
#include "chh/fraction.hpp"
#include "chh/params.hpp"
#include "chh/report.hpp"
#include "chh/tuple_source.hpp"

namespace chh::testing {

// Small-alphabet stream so collisions and overflows are frequent.
inline std::vector<TupleRecord> random_stream(std::mt19937_64& rng, std::size_t length, int primaries,
                                              int secondaries) {
  std::vector<TupleRecord> out;
  out.reserve(length);
  std::uniform_int_distribution<int> px(0, primaries - 1), sy(0, secondaries - 1);
  std::geometric_distribution<int> skew(0.3);
  for (std::size_t i = 0; i < length; ++i) {
    const int x = (i % 3 == 0) ? px(rng) : std::min(skew(rng), primaries - 1);
    const int y = (i % 2 == 0) ? sy(rng) : std::min(skew(rng), secondaries - 1);
    out.push_back({"x" + std::to_string(x), "y" + std::to_string(y)});
  }
  return out;
}

inline ExactCounts full_counts(const std::vector<TupleRecord>& stream) {
  VectorTupleSource src(stream);
  return exact_counts_naive(src);
}

// Rational helpers for readable bound checks.
inline Rational q(std::uint64_t v) { return Rational(v); }

struct Violations {
  std::vector<std::string> messages;

  void add(std::string m) {
    if (messages.size() < 20) messages.push_back(std::move(m));
    ++count;
  }
  std::size_t count = 0;
};

// est_d <= f_d and est_d >= f_d - N/s1 for every primary; est_ds <= f_ds and
// est_ds >= f_ds - f_d/s2 - N/s1 for every pair. Cross-multiplied in 128 bits.
template <typename Sketch>
void check_estimate_bounds(const Sketch& sketch, const ExactCounts& exact, Violations& v) {
  using I128 = __int128;
  const I128 s1 = static_cast<I128>(sketch.params().s1);
  const I128 s2 = static_cast<I128>(sketch.params().s2);
  const I128 n = static_cast<I128>(exact.n);
  for (const auto& [d, f_d] : exact.primary) {
    const std::uint64_t est = sketch.estimate_primary(d);
    if (est > f_d) v.add("primary overestimate " + d);
    // est - f_d + N/s1 >= 0
    if ((static_cast<I128>(est) - static_cast<I128>(f_d)) * s1 + n < 0) v.add("primary lower bound " + d);
    for (const auto& [s, f_ds] : exact.pairs.at(d)) {
      const std::uint64_t est_ds = sketch.estimate_pair(d, s);
      if (est_ds > f_ds) v.add("pair overestimate " + d + "," + s);
      // est_ds - f_ds + f_d/s2 + N/s1 >= 0
      const I128 lhs = (static_cast<I128>(est_ds) - static_cast<I128>(f_ds)) * s1 * s2 +
                       static_cast<I128>(f_d) * s1 + n * s2;
      if (lhs < 0) v.add("pair lower bound " + d + "," + s);
    }
  }
}

// The four approximate-identification requirements, checked with exact
// frequencies against the sketch's report.
inline void check_requirements(const ChhReport& report, const ExactCounts& exact, const Fraction& phi1,
                               const Fraction& phi2, const Fraction& eps1, const Fraction& eps2, Violations& v) {
  const Rational n = q(exact.n);
  const Rational lo1 = phi1.to_rational() - eps1.to_rational();
  const Rational lo2 = phi2.to_rational() - eps2.to_rational();

  std::map<std::string, const ReportedPrimary*> reported;
  for (const auto& p : report.primaries) reported[p.primary] = &p;

  // 1. every f_d > phi1 N is reported
  for (const auto& [d, f_d] : exact.primary) {
    if (exceeds_fraction_of(f_d, phi1, exact.n) && !reported.count(d)) v.add("missed primary " + d);
  }
  for (const auto& [d, row] : reported) {
    const std::uint64_t f_d = exact.primary_count(d);
    // 2. nothing with f_d < (phi1 - eps1) N
    if (q(f_d) < lo1 * n) v.add("false primary " + d);
    std::map<std::string, bool> pairs;
    for (const auto& s : row->pairs) {
      pairs[s.secondary] = true;
      // 4. nothing with f_ds < (phi2 - eps2) f_d
      if (q(exact.pair_count(d, s.secondary)) < lo2 * q(f_d)) v.add("false pair " + d + "," + s.secondary);
    }
    // 3. every f_ds > phi2 f_d under a reported d
    if (auto it = exact.pairs.find(d); it != exact.pairs.end()) {
      for (const auto& [s, f_ds] : it->second) {
        if (exceeds_fraction_of(f_ds, phi2, f_d) && !pairs.count(s)) v.add("missed pair " + d + "," + s);
      }
    }
  }
}

}  // namespace chh::testing
