#include <catch2/catch_amalgamated.hpp>

#include "bargmann/multi_index.hpp"
#include "bargmann/rational.hpp"

using namespace bargmann;

TEST_CASE("decimal text converts to exact rationals") {
  CHECK(rational_from_decimal("0.1") == Rational(1, 10));
  CHECK(rational_from_decimal("-2.50") == Rational(-5, 2));
  CHECK(rational_from_decimal("3/4") == Rational(3, 4));
  CHECK(rational_from_decimal("1e-3") == Rational(1, 1000));
  CHECK(rational_from_decimal("+7") == Rational(7));
  CHECK_THROWS_AS(rational_from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_decimal("1e999"), std::invalid_argument);
}

TEST_CASE("doubles convert through their shortest decimal form") {
  CHECK(rational_from_double(0.1) == Rational(1, 10));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(0.0) == Rational(0));
  CHECK_THROWS_AS(rational_from_double(std::numeric_limits<double>::infinity()), std::invalid_argument);
  for (double x : {1.0 / 3.0, 2.718281828459045, -1e-17, 6.02214076e23})
    CHECK(to_double(rational_from_double(x)) == x);
}

TEST_CASE("rationals print as decimals when the denominator allows") {
  CHECK(to_string(Rational(1, 4)) == "0.25");
  CHECK(to_string(Rational(-3, 2)) == "-1.5");
  CHECK(to_string(Rational(1, 3)) == "1/3");
  CHECK(to_string(Rational(12)) == "12");
  CHECK(to_string(Coefficient(Rational(1, 2), Rational(-1))) == "(0.5,-1)");
}

TEST_CASE("complex rational arithmetic") {
  const Coefficient i = Coefficient::i();
  CHECK(i * i == Coefficient(-1));
  CHECK((Coefficient(1, 2) * Coefficient(3, -1)) == Coefficient(5, 5));
  CHECK(Coefficient(2, 3).conj() == Coefficient(2, -3));
  CHECK((Coefficient(1) - Coefficient(1)).is_zero());
}

TEST_CASE("multi-indices never store zero exponents") {
  MultiIndex m{{z_var(0), 2}, {w_var(1), 1}};
  CHECK(m.total_degree() == 3);
  m.set(z_var(0), 0);
  CHECK(m.entries().size() == 1);
  CHECK(m == MultiIndex{{w_var(1), 1}});
  CHECK(to_string(MultiIndex{}) == "1");
  CHECK(to_string(MultiIndex{{z_var(0), 2}, {w_var(0), 1}}) == "z[0]^2 * w[0]");
  CHECK(MultiIndex{{z_var(0), 1}} + MultiIndex{{z_var(0), 2}} == MultiIndex{{z_var(0), 3}});
}
