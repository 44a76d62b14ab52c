#include "chh/params.hpp"

#include "chh/error.hpp"

namespace chh {

namespace {

const Fraction kZero(0, 1);
const Fraction kOne(1, 1);

void require_open_unit(const Fraction& v, const char* name) {
  if (!(kZero < v && v < kOne)) {
    throw InvalidParameter(std::string(name) + " must satisfy 0 < " + name + " < 1, got " + v.to_string());
  }
}

void require_tolerances(const Fraction& phi1, const Fraction& phi2, const Fraction& eps1, const Fraction& eps2) {
  if (!(kZero < eps1) || eps1.to_rational() > phi1.to_rational() / 2) {
    throw InvalidParameter("eps1 must satisfy 0 < eps1 <= phi1/2, got eps1=" + eps1.to_string() +
                           " phi1=" + phi1.to_string());
  }
  if (!(kZero < eps2 && eps2 <= phi2)) {
    throw InvalidParameter("eps2 must satisfy 0 < eps2 <= phi2, got eps2=" + eps2.to_string() +
                           " phi2=" + phi2.to_string());
  }
}

std::uint64_t to_size(const BigInt& v) {
  if (v < 1 || v > BigInt(UINT64_MAX)) throw InvalidParameter("table size out of range: " + v.str());
  return v.convert_to<std::uint64_t>();
}

bool secondary_constraint(const Fraction& phi1, const Fraction& phi2, const Rational& eps1, const Rational& eps2,
                          std::uint64_t s1, std::uint64_t s2) {
  const Rational gap = phi1.to_rational() - eps1;
  if (gap <= 0) return false;
  const Rational lhs = Rational(1, s2) + (1 + phi2.to_rational()) / (Rational(s1) * gap);
  return lhs <= eps2;
}

}  // namespace

Rational alpha(const Fraction& phi1, const Fraction& phi2, const Rational& eps1) {
  const Rational gap = phi1.to_rational() - eps1;
  if (gap <= 0) throw InvalidParameter("phi1 - eps1 must be positive");
  return (1 + phi2.to_rational()) / gap;
}

ChhParams solve_params(Fraction phi1, Fraction phi2, Fraction eps1, Fraction eps2) {
  require_open_unit(phi1, "phi1");
  require_open_unit(phi2, "phi2");
  require_tolerances(phi1, phi2, eps1, eps2);

  const Rational e1 = eps1.to_rational();
  const Rational e2 = eps2.to_rational();
  const Rational a = alpha(phi1, phi2, e1);

  ChhParams out{phi1, phi2, eps1, eps2, 0, 0, std::nullopt};
  if (e1 >= e2 / (2 * a)) {
    out.sizing_case = SizingCase::I;
    out.s1 = to_size(ceil_rational(2 * a / e2));
    out.s2 = to_size(ceil_rational(2 / e2));
  } else {
    out.sizing_case = SizingCase::II;
    out.s1 = to_size(ceil_rational(1 / e1));
    out.s2 = to_size(ceil_rational(1 / (e2 - a * e1)));
  }

  // Ceilings keep both constraints; the loop only guards the arithmetic.
  while (!secondary_constraint(phi1, phi2, e1, e2, out.s1, out.s2)) ++out.s2;
  return out;
}

ChhParams raw_params(Fraction phi1, Fraction phi2, std::uint64_t s1, std::uint64_t s2, std::optional<Fraction> eps1,
                     std::optional<Fraction> eps2) {
  ChhParams out{phi1, phi2, eps1, eps2, s1, s2, std::nullopt};
  validate(out);
  return out;
}

void validate(const ChhParams& p) {
  require_open_unit(p.phi1, "phi1");
  require_open_unit(p.phi2, "phi2");
  if (p.s1 == 0) throw InvalidParameter("s1 must be >= 1");
  if (p.s2 == 0) throw InvalidParameter("s2 must be >= 1");
  if (p.eps1.has_value() != p.eps2.has_value()) throw InvalidParameter("eps1 and eps2 must be given together");
  if (p.eps1) require_tolerances(p.phi1, p.phi2, *p.eps1, *p.eps2);
}

Rational effective_eps1(const ChhParams& p) {
  return p.eps1 ? p.eps1->to_rational() : Rational(1, p.s1);
}

Rational effective_eps2(const ChhParams& p) {
  if (p.eps2) return p.eps2->to_rational();
  const Rational gap = p.phi1.to_rational() - effective_eps1(p);
  if (gap <= 0) return Rational(1);
  return Rational(1, p.s2) + (1 + p.phi2.to_rational()) / (Rational(p.s1) * gap);
}

ConstraintStatus check_constraints(const ChhParams& p) {
  const Rational e1 = effective_eps1(p);
  const Rational e2 = effective_eps2(p);
  const Rational phi1 = p.phi1.to_rational();
  const Rational phi2 = p.phi2.to_rational();

  ConstraintStatus status;
  status.primary_ok = Rational(1, p.s1) <= e1;
  status.secondary_ok = secondary_constraint(p.phi1, p.phi2, e1, e2, p.s1, p.s2);
  status.tolerances_in_range = e1 > 0 && e1 <= phi1 / 2 && e2 > 0 && e2 <= phi2;
  return status;
}

std::string to_string(SizingCase c) { return c == SizingCase::I ? "I" : "II"; }

}  // namespace chh
