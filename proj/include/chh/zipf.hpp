#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "chh/tuple_source.hpp"

namespace chh {

struct ZipfWorkloadSpec {
  std::uint64_t tuple_count = 0;
  std::uint64_t primary_domain = 1;
  std::uint64_t secondary_domain = 1;
  double primary_skew = 1.1;
  double secondary_skew = 1.0;
  std::uint64_t seed = 0;
};

// Draws ranks 1..domain with probability proportional to rank^-skew.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t domain, double skew);

  // `unit` in [0, 1).
  std::uint64_t rank_for(double unit) const;

  // P(rank = 1).
  double head_probability() const { return cdf_.front() / cdf_.back(); }

 private:
  std::vector<double> cdf_;
};

// Deterministic synthetic tuple stream. Primaries are "d<rank>" with a Zipf
// rank; secondaries are "s<id>" where a Zipf rank is mapped through a
// permutation of the secondary domain chosen per primary, so different
// primaries favour different secondaries. Replaying re-seeds the generator.
class ZipfTupleSource : public TupleSource {
 public:
  explicit ZipfTupleSource(ZipfWorkloadSpec spec);

  bool next(TupleRecord& out) override;
  bool replayable() const override { return true; }
  void rewind() override;

  const ZipfWorkloadSpec& spec() const noexcept { return spec_; }
  const ZipfSampler& primary_sampler() const noexcept { return primary_; }

 private:
  double next_unit();

  ZipfWorkloadSpec spec_;
  ZipfSampler primary_;
  ZipfSampler secondary_;
  std::mt19937_64 rng_;
  std::uint64_t emitted_ = 0;
};

ZipfTupleSource generate_zipf(const ZipfWorkloadSpec& spec);

// Writes every remaining tuple as "x\ty\n". Returns the number written.
std::uint64_t write_tuples(TupleSource& source, std::ostream& out);

}  // namespace chh
