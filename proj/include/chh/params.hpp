#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chh/fraction.hpp"

namespace chh {

enum class SizingCase { I, II };

// Thresholds, tolerances and table sizes for one CHH sketch.
//
// Solver-produced parameters always carry both tolerances and a sizing case.
// Raw parameters (explicit s1/s2) may omit the tolerances; the tightest ones
// the table sizes support are then implied (see implied_eps1/implied_eps2).
struct ChhParams {
  Fraction phi1;
  Fraction phi2;
  std::optional<Fraction> eps1;
  std::optional<Fraction> eps2;
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::optional<SizingCase> sizing_case;

  friend bool operator==(const ChhParams&, const ChhParams&) = default;
};

// (1 + phi2) / (phi1 - eps1).
Rational alpha(const Fraction& phi1, const Fraction& phi2, const Rational& eps1);

// Space-minimal (s1, s2) meeting both sizing constraints. Requires
// 0 < phi1, phi2 < 1, 0 < eps1 <= phi1/2 and 0 < eps2 <= phi2.
ChhParams solve_params(Fraction phi1, Fraction phi2, Fraction eps1, Fraction eps2);

// Explicit table sizes. Thresholds must lie in (0, 1); tolerances, when given,
// must satisfy the same ranges as for solve_params.
ChhParams raw_params(Fraction phi1, Fraction phi2, std::uint64_t s1, std::uint64_t s2,
                     std::optional<Fraction> eps1 = std::nullopt, std::optional<Fraction> eps2 = std::nullopt);

// Throws InvalidParameter naming the violated range.
void validate(const ChhParams& params);

// eps1 if present, else 1/s1 (the smallest value the primary sizing constraint allows).
Rational effective_eps1(const ChhParams& params);
// eps2 if present, else 1/s2 + alpha/s1 evaluated at effective_eps1.
Rational effective_eps2(const ChhParams& params);

struct ConstraintStatus {
  bool primary_ok = false;    // 1/s1 <= eps1
  bool secondary_ok = false;  // 1/s2 + (1+phi2)/(s1 (phi1-eps1)) <= eps2
  // Tolerances used for the check are within 0 < eps1 <= phi1/2, 0 < eps2 <= phi2.
  bool tolerances_in_range = false;

  bool satisfied() const noexcept { return primary_ok && secondary_ok && tolerances_in_range; }
};

// Evaluates both sizing constraints exactly, using the effective tolerances.
ConstraintStatus check_constraints(const ChhParams& params);

std::string to_string(SizingCase c);

}  // namespace chh
