#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace chh {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact non-negative rational used for every user-supplied threshold and
// tolerance. Always stored reduced with a positive denominator.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den);

  // Accepts "0.05", ".5", "1", "3/40". At most 9 fractional digits.
  static Fraction parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  Rational to_rational() const { return Rational(num_, den_); }
  // Decimal when the denominator divides a power of ten, "p/q" otherwise.
  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Smallest integer >= value.
BigInt ceil_rational(const Rational& value);

}  // namespace chh

namespace chh {

// count > phi * total, exactly.
inline bool exceeds_fraction_of(std::uint64_t count, const Fraction& phi, std::uint64_t total) {
  using U128 = unsigned __int128;
  return static_cast<U128>(count) * static_cast<std::uint64_t>(phi.den()) >
         static_cast<U128>(total) * static_cast<std::uint64_t>(phi.num());
}

// count < phi * total, exactly.
inline bool below_fraction_of(std::uint64_t count, const Fraction& phi, std::uint64_t total) {
  using U128 = unsigned __int128;
  return static_cast<U128>(count) * static_cast<std::uint64_t>(phi.den()) <
         static_cast<U128>(total) * static_cast<std::uint64_t>(phi.num());
}

}  // namespace chh
