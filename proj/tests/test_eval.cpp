#include <doctest.h>

#include <set>
#include <sstream>

#include "chh/error.hpp"
#include "chh/eval.hpp"
#include "chh/zipf.hpp"
#include "test_support.hpp"

using chh::ChhSketch;
using chh::Fraction;
using chh::TupleRecord;

namespace {

std::vector<TupleRecord> drain(chh::TupleSource& src) {
  std::vector<TupleRecord> out;
  TupleRecord t;
  while (src.next(t)) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("primary error statistic") {
  // f_d = 100, est = 98, N = 1000 -> 0.002
  chh::ExactCounts exact;
  exact.n = 1000;
  exact.primary["a"] = 100;
  exact.primary["b"] = 900;
  ChhSketch sk(chh::raw_params(Fraction(1, 20), Fraction(1, 2), 100, 10));
  // 98 a's and 900 b's plus 2 filler tuples with the same n.
  for (int i = 0; i < 98; ++i) sk.update("a", "x");
  for (int i = 0; i < 900; ++i) sk.update("b", "y");
  sk.update("c", "z");
  sk.update("c", "z");
  const auto stats = chh::primary_error_stats(exact, sk, Fraction(1, 20));
  REQUIRE(stats.items.size() == 2);
  CHECK(stats.items[0].primary == "a");
  CHECK(stats.items[0].error == doctest::Approx(0.002));
  CHECK(stats.items[1].error == doctest::Approx(0.0));
  CHECK(stats.max_error == doctest::Approx(0.002));
  CHECK(stats.avg_error == doctest::Approx(0.001));
  CHECK(stats.theoretical_max == doctest::Approx(0.01));
  CHECK_FALSE(stats.empty);
}

TEST_CASE("secondary error statistic") {
  // f_ds = 50, est = 49, f_d = 100 -> 0.01
  chh::ExactCounts exact;
  exact.n = 100;
  exact.primary["a"] = 100;
  exact.pairs["a"]["s"] = 50;
  exact.pairs["a"]["t"] = 50;
  ChhSketch sk(chh::raw_params(Fraction(1, 2), Fraction(1, 4), 10, 10));
  for (int i = 0; i < 49; ++i) sk.update("a", "s");
  for (int i = 0; i < 50; ++i) sk.update("a", "t");
  sk.update("a", "u");
  const auto stats = chh::secondary_error_stats(exact, sk, Fraction(1, 2), Fraction(1, 4));
  REQUIRE(stats.items.size() == 2);
  CHECK(stats.items[0].secondary == "s");
  CHECK(stats.items[0].error == doctest::Approx(0.01));
  // 1/10 + 1/((0.5 - 0.1) * 10)
  CHECK(stats.theoretical_max == doctest::Approx(0.35));
  CHECK(chh::secondary_theoretical_max(sk.params(), chh::TheoryDenominator::kPhi1) == doctest::Approx(0.3));
}

TEST_CASE("no decrements means zero error") {
  std::mt19937_64 rng(1);
  const auto stream = chh::testing::random_stream(rng, 2000, 8, 5);
  ChhSketch sk(chh::raw_params(Fraction(1, 20), Fraction(1, 20), 8, 5));
  for (const auto& t : stream) sk.update(t.x, t.y);
  const auto exact = chh::testing::full_counts(stream);
  CHECK(chh::primary_error_stats(exact, sk, Fraction(1, 20)).max_error == 0.0);
  CHECK(chh::secondary_error_stats(exact, sk, Fraction(1, 20), Fraction(1, 20)).max_error == 0.0);
}

TEST_CASE("empty item sets and mismatched inputs") {
  chh::ExactCounts exact;
  ChhSketch sk(chh::raw_params(Fraction(1, 2), Fraction(1, 2), 4, 4));
  const auto stats = chh::primary_error_stats(exact, sk, Fraction(1, 2));
  CHECK(stats.empty);
  CHECK(stats.max_error == 0.0);
  CHECK(stats.avg_error == 0.0);
  sk.update("a", "b");
  CHECK_THROWS_AS(chh::primary_error_stats(exact, sk, Fraction(1, 2)), chh::InconsistentInput);
  CHECK_THROWS_AS(chh::secondary_error_stats(exact, sk, Fraction(1, 2), Fraction(1, 2)), chh::InconsistentInput);
}

TEST_CASE("Zipf source is deterministic and replayable") {
  const chh::ZipfWorkloadSpec spec{5000, 300, 50, 1.1, 1.0, 42};
  auto a = chh::generate_zipf(spec);
  auto b = chh::generate_zipf(spec);
  const auto first = drain(a);
  CHECK(first.size() == 5000);
  CHECK(first == drain(b));
  a.rewind();
  CHECK(first == drain(a));

  auto other = chh::generate_zipf({5000, 300, 50, 1.1, 1.0, 43});
  CHECK(first != drain(other));

  CHECK_THROWS_AS(chh::generate_zipf({10, 0, 5, 1.0, 1.0, 1}), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::generate_zipf({10, 5, 0, 1.0, 1.0, 1}), chh::InvalidParameter);
  CHECK(drain(*std::make_unique<chh::ZipfTupleSource>(chh::ZipfWorkloadSpec{0, 5, 5, 1.0, 1.0, 1})).empty());
}

TEST_CASE("Zipf with skew zero is uniform") {
  auto src = chh::generate_zipf({100'000, 10, 4, 0.0, 0.0, 9});
  const auto counts = chh::exact_counts_naive(src);
  CHECK(counts.primary.size() == 10);
  for (const auto& [d, f] : counts.primary) {
    CHECK(static_cast<double>(f) == doctest::Approx(10'000.0).epsilon(0.05));
  }
}

TEST_CASE("Zipf head frequency matches the analytic normalization") {
  // 1 / sum_{r=1}^{10^4} r^-1.2, summed independently.
  const double head = 0.20837050275643446;
  auto src = chh::generate_zipf({100'000, 10'000, 1000, 1.2, 1.0, 2});
  CHECK(src.primary_sampler().head_probability() == doctest::Approx(head).epsilon(1e-9));
  const auto counts = chh::exact_counts_naive(src);
  std::uint64_t top = 0;
  for (const auto& [d, f] : counts.primary) top = std::max(top, f);
  const double observed = static_cast<double>(top) / 100'000.0;
  CHECK(observed >= 0.8 * head);
  CHECK(observed <= 1.2 * head);
  CHECK(counts.primary_count("d1") == top);
}

TEST_CASE("different primaries favour different secondaries") {
  auto src = chh::generate_zipf({50'000, 5, 200, 0.5, 1.5, 3});
  const auto counts = chh::exact_counts_naive(src);
  std::set<std::string> tops;
  for (const auto& [d, row] : counts.pairs) {
    auto best = std::max_element(row.begin(), row.end(), [](auto& a, auto& b) { return a.second < b.second; });
    tops.insert(best->first);
  }
  CHECK(tops.size() >= 4);
}

TEST_CASE("sweep rows respect their bounds") {
  chh::ZipfTupleSource src({60'000, 2'000, 300, 1.1, 1.0, 21});
  chh::SweepConfig config;
  config.phi1 = Fraction(1, 20);
  config.phi2 = Fraction(1, 5);
  config.s1_list = {50, 100, 200};
  config.s2_list = {20, 40};
  const auto rows = chh::sweep(src, config);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].params.s1 == 50);
  CHECK(rows[0].params.s2 == 20);
  CHECK(rows[1].params.s2 == 40);
  for (const auto& row : rows) {
    CHECK(row.n == 60'000);
    CHECK_FALSE(row.primary.empty);
    CHECK(row.primary.max_error <= row.primary.theoretical_max);
    CHECK(row.secondary.max_error <= row.secondary.theoretical_max);
    CHECK(row.primary.avg_error <= row.primary.max_error);
    for (const auto& item : row.primary.items) CHECK(item.error >= 0.0);
    for (const auto& item : row.secondary.items) CHECK(item.error >= 0.0);
    CHECK(row.reported_primaries >= row.primary.items.size());
  }
  // Larger s2 at fixed s1 lowers the secondary bound.
  CHECK(rows[1].secondary.theoretical_max < rows[0].secondary.theoretical_max);

  std::ostringstream csv;
  chh::write_sweep_csv(csv, rows);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == chh::kSweepCsvHeader);
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 6);
}

TEST_CASE("single sweep row") {
  chh::ZipfTupleSource src({5'000, 200, 50, 1.1, 1.0, 4});
  const auto rows = chh::sweep(src, {Fraction(1, 10), Fraction(1, 5), std::nullopt, std::nullopt, {30}, {10},
                                     chh::TheoryDenominator::kPhi1MinusEps1});
  CHECK(rows.size() == 1);
}

TEST_CASE("timing comparison reports space") {
  chh::ZipfTupleSource src({20'000, 2'000, 300, 1.1, 1.0, 8});
  const auto t = chh::compare_naive_and_sketch(src, chh::raw_params(Fraction(1, 20), Fraction(1, 5), 100, 20));
  CHECK(t.n == 20'000);
  CHECK(t.sketch_pairs_stored <= 100 * 20);
  CHECK(t.naive_pairs_stored > t.sketch_pairs_stored);
}
