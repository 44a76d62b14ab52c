#include <doctest.h>

#include <cmath>
#include <vector>

#include "chh/error.hpp"
#include "chh/params.hpp"

using chh::Fraction;
using chh::Rational;
using chh::SizingCase;

namespace {

Fraction f(const char* s) { return Fraction::parse(s); }

bool constraint2(const chh::ChhParams& p) {
  const Rational e1 = p.eps1->to_rational();
  return Rational(1, p.s2) + (1 + p.phi2.to_rational()) / (Rational(p.s1) * (p.phi1.to_rational() - e1)) <=
         p.eps2->to_rational();
}

}  // namespace

TEST_CASE("case I example") {
  const auto p = chh::solve_params(f("0.1"), f("0.1"), f("0.05"), f("0.1"));
  CHECK(chh::alpha(p.phi1, p.phi2, p.eps1->to_rational()) == Rational(22));
  CHECK(p.sizing_case == SizingCase::I);
  CHECK(p.s1 == 440);
  CHECK(p.s2 == 20);
  // 1/20 + 1.1/(440 * 0.05) == 0.1 exactly: the constraint is tight.
  CHECK(Rational(1, 20) + Rational(11, 10) / (Rational(440) * Rational(1, 20)) == Rational(1, 10));
  CHECK(chh::check_constraints(p).satisfied());
}

TEST_CASE("case II example") {
  const auto p = chh::solve_params(f("0.5"), f("0.5"), f("0.01"), f("0.25"));
  CHECK(chh::alpha(p.phi1, p.phi2, p.eps1->to_rational()) == Rational(150, 49));
  CHECK(p.sizing_case == SizingCase::II);
  CHECK(p.s1 == 100);
  CHECK(p.s2 == 5);
  CHECK(chh::check_constraints(p).satisfied());
}

TEST_CASE("third acceptance parameter set") {
  const auto p = chh::solve_params(f("0.01"), f("0.05"), f("0.005"), f("0.04"));
  CHECK(p.sizing_case == SizingCase::I);
  CHECK(p.s1 == 10500);
  CHECK(p.s2 == 50);
}

TEST_CASE("precondition violations") {
  CHECK_THROWS_AS(chh::solve_params(f("0.1"), f("0.1"), f("0.06"), f("0.05")), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::solve_params(f("0"), f("0.1"), f("0.01"), f("0.05")), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::solve_params(f("1"), f("0.1"), f("0.01"), f("0.05")), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::solve_params(f("0.1"), f("0.1"), f("0.01"), f("0.2")), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::solve_params(f("0.1"), f("0.1"), f("0"), f("0.05")), chh::InvalidParameter);
  try {
    chh::solve_params(f("0.1"), f("0.1"), f("0.06"), f("0.05"));
  } catch (const chh::InvalidParameter& e) {
    CHECK(std::string(e.what()).find("eps1") != std::string::npos);
  }
  // eps1 == phi1/2 is allowed.
  CHECK_NOTHROW(chh::solve_params(f("0.1"), f("0.1"), f("0.05"), f("0.05")));
}

TEST_CASE("raw parameters and the constraint flag") {
  const auto tiny = chh::raw_params(f("0.5"), f("0.5"), 2, 2);
  CHECK_FALSE(tiny.eps1.has_value());
  const auto status = chh::check_constraints(tiny);
  // 1/s1 = 0.5 > phi1/2, so no valid tolerance supports these sizes.
  CHECK(status.primary_ok);
  CHECK_FALSE(status.tolerances_in_range);
  CHECK_FALSE(status.satisfied());

  const auto roomy = chh::raw_params(f("0.05"), f("0.2"), 1000, 100);
  CHECK(chh::check_constraints(roomy).satisfied());
  CHECK(chh::effective_eps1(roomy) == Rational(1, 1000));

  const auto explicit_eps = chh::raw_params(f("0.1"), f("0.1"), 440, 19, f("0.05"), f("0.1"));
  CHECK_FALSE(chh::check_constraints(explicit_eps).secondary_ok);

  CHECK_THROWS_AS(chh::raw_params(f("0.5"), f("0.5"), 0, 2), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::raw_params(f("0.5"), f("0.5"), 2, 0), chh::InvalidParameter);
  CHECK_THROWS_AS(chh::raw_params(f("0.5"), f("0.5"), 2, 2, f("0.1"), std::nullopt), chh::InvalidParameter);
}

TEST_CASE("solver output is feasible, case-consistent and near optimal on a grid") {
  const std::vector<const char*> phis = {"0.02", "0.1", "0.3", "0.6"};
  int checked = 0;
  for (const char* p1s : phis) {
    for (const char* p2s : phis) {
      const Fraction phi1 = f(p1s), phi2 = f(p2s);
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          const Fraction eps1(static_cast<std::int64_t>(phi1.num() * i), phi1.den() * 6);  // <= phi1/2
          const Fraction eps2(static_cast<std::int64_t>(phi2.num() * j), phi2.den() * 4);  // < phi2
          const auto p = chh::solve_params(phi1, phi2, eps1, eps2);
          ++checked;
          CHECK(Rational(1, p.s1) <= eps1.to_rational());
          CHECK(constraint2(p));
          const Rational a = chh::alpha(phi1, phi2, eps1.to_rational());
          CHECK((p.sizing_case == SizingCase::I) == (eps1.to_rational() >= eps2.to_rational() / (2 * a)));

          // Brute force: smallest feasible s2 for each s1 up to 2 s1.
          const Rational product_floor = Rational(p.s1 * p.s2, 2);
          for (std::uint64_t s1 = 1; s1 <= 2 * p.s1; ++s1) {
            if (Rational(1, s1) > eps1.to_rational()) continue;
            const Rational room = eps2.to_rational() - a / s1;
            if (room <= 0) continue;
            const auto s2 = chh::ceil_rational(1 / room).convert_to<std::uint64_t>();
            REQUIRE(Rational(s1 * s2) >= product_floor);
          }
        }
      }
    }
  }
  CHECK(checked == 144);
}
