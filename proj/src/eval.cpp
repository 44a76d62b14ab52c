#include "chh/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace chh {

double primary_theoretical_max(const ChhParams& params) { return 1.0 / static_cast<double>(params.s1); }

double secondary_theoretical_max(const ChhParams& params, TheoryDenominator denom) {
  Rational phi = params.phi1.to_rational();
  if (denom == TheoryDenominator::kPhi1MinusEps1) phi -= effective_eps1(params);
  if (phi <= 0) return 1.0;
  const Rational bound = Rational(1, params.s2) + 1 / (phi * params.s1);
  return bound.convert_to<double>();
}

void summarize(ErrorStats& stats) {
  stats.empty = stats.items.empty();
  stats.max_error = 0.0;
  stats.avg_error = 0.0;
  if (stats.empty) return;
  double sum = 0.0;
  for (const auto& item : stats.items) {
    stats.max_error = std::max(stats.max_error, item.error);
    sum += item.error;
  }
  stats.avg_error = sum / static_cast<double>(stats.items.size());
  std::sort(stats.items.begin(), stats.items.end(), [](const ItemError& a, const ItemError& b) {
    return a.primary != b.primary ? a.primary < b.primary : a.secondary < b.secondary;
  });
}

std::vector<SweepRow> sweep(TupleSource& source, const SweepConfig& config) {
  if (config.s1_list.empty() || config.s2_list.empty()) throw InvalidParameter("sweep needs at least one s1 and s2");

  std::vector<ChhSketch> sketches;
  for (auto s1 : config.s1_list) {
    for (auto s2 : config.s2_list) {
      sketches.emplace_back(raw_params(config.phi1, config.phi2, s1, s2, config.eps1, config.eps2));
    }
  }

  const ExactResult exact = exact_chh_multipass(source, config.phi1, config.phi2);

  source.rewind();
  TupleRecord t;
  while (source.next(t)) {
    for (auto& sketch : sketches) sketch.update(t.x, t.y);
  }

  std::vector<SweepRow> rows;
  rows.reserve(sketches.size());
  for (const auto& sketch : sketches) {
    SweepRow row;
    row.params = sketch.params();
    row.n = sketch.n();
    row.primary = primary_error_stats(exact.counts, sketch, config.phi1);
    row.secondary = secondary_error_stats(exact.counts, sketch, config.phi1, config.phi2, config.denominator);
    const ChhReport report = sketch.report();
    row.reported_primaries = report.primaries.size();
    row.reported_pairs = report.pair_count();
    row.constraints_ok = check_constraints(sketch.params()).satisfied();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.params.s1 << ',' << r.params.s2 << ',' << r.n << ',' << format_double(r.primary.max_error) << ','
        << format_double(r.primary.avg_error) << ',' << format_double(r.primary.theoretical_max) << ','
        << format_double(r.secondary.max_error) << ',' << format_double(r.secondary.avg_error) << ','
        << format_double(r.secondary.theoretical_max) << ',' << r.reported_primaries << ',' << r.reported_pairs
        << '\n';
  }
}

TimingResult compare_naive_and_sketch(TupleSource& source, const ChhParams& params, std::uint64_t tuple_cap) {
  using Clock = std::chrono::steady_clock;
  TimingResult out;

  source.rewind();
  auto start = Clock::now();
  const ExactCounts counts = exact_counts_naive(source, tuple_cap);
  out.naive_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.n = counts.n;
  for (const auto& [d, row] : counts.pairs) out.naive_pairs_stored += row.size();

  source.rewind();
  ChhSketch sketch(params);
  TupleRecord t;
  start = Clock::now();
  while (source.next(t)) sketch.update(t.x, t.y);
  out.sketch_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  sketch.for_each_primary([&](std::string_view, const auto& entry) { out.sketch_pairs_stored += entry.inner.size(); });
  return out;
}

}  // namespace chh
