#include "chh/fraction.hpp"

#include <charconv>
#include <numeric>

#include "chh/error.hpp"

namespace chh {

namespace {

constexpr int kMaxFractionDigits = 9;

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw InvalidParameter("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidParameter("fraction with zero denominator");
  if (num < 0 || den < 0) throw InvalidParameter("negative fraction");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Fraction Fraction::parse(std::string_view text) {
  if (text.empty()) throw InvalidParameter("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (p.empty() || q.empty() || !all_digits(p) || !all_digits(q)) {
      throw InvalidParameter("not a fraction: '" + std::string(text) + "'");
    }
    return Fraction(parse_integer(p, text), parse_integer(q, text));
  }

  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) {
    throw InvalidParameter("not a decimal: '" + std::string(text) + "'");
  }
  if (frac.size() > kMaxFractionDigits) {
    throw InvalidParameter("more than 9 fractional digits: '" + std::string(text) + "'");
  }

  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : parse_integer(whole, text);
  const std::int64_t f = frac.empty() ? 0 : parse_integer(frac, text);
  if (w > (INT64_MAX - f) / den) throw InvalidParameter("number too large: '" + std::string(text) + "'");
  return Fraction(w * den + f, den);
}

std::string Fraction::to_string() const {
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1 || std::max(twos, fives) > 18) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  const int digits = std::max(twos, fives);
  __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
  const auto whole = static_cast<std::int64_t>(scaled / scale);
  auto rest = static_cast<std::int64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string tail(static_cast<std::size_t>(digits), '0');
    for (int i = digits - 1; i >= 0; --i) {
      tail[static_cast<std::size_t>(i)] = static_cast<char>('0' + rest % 10);
      rest /= 10;
    }
    out += "." + tail;
  }
  return out;
}

BigInt ceil_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return q;
}

}  // namespace chh
