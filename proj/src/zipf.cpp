#include "chh/zipf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chh/error.hpp"

namespace chh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ZipfSampler::ZipfSampler(std::uint64_t domain, double skew) {
  if (domain == 0) throw InvalidParameter("Zipf domain must be >= 1");
  if (!(skew >= 0.0) || !std::isfinite(skew)) throw InvalidParameter("Zipf skew must be finite and >= 0");
  cdf_.resize(domain);
  double total = 0.0;
  for (std::uint64_t r = 1; r <= domain; ++r) {
    total += std::pow(static_cast<double>(r), -skew);
    cdf_[r - 1] = total;
  }
}

std::uint64_t ZipfSampler::rank_for(double unit) const {
  const double target = unit * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  if (it == cdf_.end()) --it;
  return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
}

ZipfTupleSource::ZipfTupleSource(ZipfWorkloadSpec spec)
    : spec_(spec),
      primary_(spec.primary_domain, spec.primary_skew),
      secondary_(spec.secondary_domain, spec.secondary_skew),
      rng_(spec.seed) {}

double ZipfTupleSource::next_unit() {
  // 53 high bits; avoids the implementation-defined uniform_real_distribution.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

bool ZipfTupleSource::next(TupleRecord& out) {
  if (emitted_ == spec_.tuple_count) return false;
  ++emitted_;

  const std::uint64_t primary_rank = primary_.rank_for(next_unit());
  const std::uint64_t secondary_rank = secondary_.rank_for(next_unit());

  // Affine permutation of [0, domain) keyed by the primary rank.
  const std::uint64_t domain = spec_.secondary_domain;
  const std::uint64_t h = splitmix64(spec_.seed ^ splitmix64(primary_rank));
  std::uint64_t stride = domain == 1 ? 1 : 1 + (h % (domain - 1));
  while (std::gcd(stride, domain) != 1) ++stride;
  const std::uint64_t shift = splitmix64(h) % domain;
  const auto id = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(stride) * (secondary_rank - 1) + shift) % domain);

  out.x = "d" + std::to_string(primary_rank);
  out.y = "s" + std::to_string(id);
  return true;
}

void ZipfTupleSource::rewind() {
  rng_.seed(spec_.seed);
  emitted_ = 0;
}

ZipfTupleSource generate_zipf(const ZipfWorkloadSpec& spec) { return ZipfTupleSource(spec); }

std::uint64_t write_tuples(TupleSource& source, std::ostream& out) {
  std::uint64_t written = 0;
  TupleRecord t;
  while (source.next(t)) {
    out << t.x << '\t' << t.y << '\n';
    ++written;
  }
  return written;
}

}  // namespace chh
