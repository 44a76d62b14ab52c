#include "chh/report.hpp"

namespace chh {

namespace {

std::uint64_t clamp_threshold(const Rational& threshold) {
  const BigInt c = ceil_rational(threshold);
  if (c <= 0) return 0;
  if (c > BigInt(UINT64_MAX)) return UINT64_MAX;
  return c.convert_to<std::uint64_t>();
}

}  // namespace

std::size_t ChhReport::pair_count() const {
  std::size_t total = 0;
  for (const auto& p : primaries) total += p.pairs.size();
  return total;
}

ReportRule::ReportRule(const ChhParams& params, std::uint64_t n)
    : pair_slope_(params.phi2.to_rational() - Rational(1, params.s2)),
      pair_offset_(Rational(n, params.s1)) {
  const Rational primary = (params.phi1.to_rational() - Rational(1, params.s1)) * n;
  primary_min_ = clamp_threshold(primary);
}

std::uint64_t ReportRule::pair_min(std::uint64_t primary_est) const {
  return clamp_threshold(pair_slope_ * primary_est - pair_offset_);
}

}  // namespace chh
