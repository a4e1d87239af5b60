#include <catch2/catch_amalgamated.hpp>

#include "bargmann/oscillator.hpp"

#include <cmath>

using namespace bargmann;

TEST_CASE("number states are eigenstates with energy hbar*omega*(n + 1/2)") {
  for (const auto& spec : {OscillatorSpec(Rational(1)), OscillatorSpec(Rational(3, 2), Rational(2, 5))}) {
    const auto h = hamiltonian(spec);
    const double quantum = to_double(spec.hbar * spec.omega);
    for (std::uint32_t n = 0; n <= 20; ++n) {
      const MultiIndex m{{z_var(0), n}};
      const auto image = apply(h, PolynomialState::basis(m));
      REQUIRE(image.size() == 1);
      CHECK(std::abs(image.amplitude(m) - quantum * (n + 0.5)) <= 1e-12);
      CHECK(diagonal_element_exact(h, m) == Coefficient(spec.hbar * spec.omega * (Rational(n) + Rational(1, 2))));
    }
  }
}

TEST_CASE("an overall sign does not change the eigenvalue") {
  const auto h = hamiltonian(OscillatorSpec(Rational(1)));
  const MultiIndex z{{z_var(0), 1}};
  const auto xi = PolynomialState::basis(z, -1.0);
  const auto image = apply(h, xi);
  CHECK(std::abs(image.amplitude(z) - 1.5 * -1.0) <= 1e-12);
  const auto vacuum = apply(h, PolynomialState::basis({}));
  CHECK(std::abs(vacuum.amplitude({}) - 0.5) <= 1e-15);
}

TEST_CASE("invalid oscillator parameters are rejected") {
  CHECK_THROWS_AS(OscillatorSpec(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(OscillatorSpec(Rational(1), Rational(-1)), std::invalid_argument);
}

TEST_CASE("truncated series states") {
  const auto exp0 = truncated_series_state(SeriesKind::Exp, 0);
  CHECK(exp0.size() == 1);
  CHECK(exp0.amplitude({}) == Amplitude(1.0));

  const auto sinh3 = truncated_series_state(SeriesKind::Sinh, 3);
  CHECK(sinh3.size() == 2);
  CHECK(std::abs(sinh3.amplitude({{z_var(0), 1}}) - 1.0) < 1e-15);
  CHECK(std::abs(sinh3.amplitude({{z_var(0), 3}}) - 1.0 / std::sqrt(6.0)) < 1e-15);

  const auto cosh4 = truncated_series_state(SeriesKind::Cosh, 4);
  CHECK(cosh4.size() == 3);
  for (std::uint32_t n : {0u, 2u, 4u})
    CHECK(std::abs(cosh4.amplitude({{z_var(0), n}}) - 1.0 / std::sqrt(std::tgamma(n + 1.0))) < 1e-15);

  const auto sin7 = truncated_series_state(SeriesKind::Sin, 7);
  CHECK(sin7.amplitude({{z_var(0), 3}}).real() < 0);
  CHECK(sin7.amplitude({{z_var(0), 5}}).real() > 0);
  const auto cos4 = truncated_series_state(SeriesKind::Cos, 4);
  CHECK(cos4.amplitude({{z_var(0), 2}}).real() < 0);
}

TEST_CASE("per-term eigenvalue sums are exact rationals") {
  const OscillatorSpec unit(Rational(1));
  CHECK(per_term_eigenvalue_sum(SeriesKind::Exp, 2, unit) == Rational(9, 2));
  CHECK(per_term_eigenvalue_sum(SeriesKind::Sinh, 3, unit) == Rational(5));
  CHECK(per_term_eigenvalue_sum(SeriesKind::Cosh, 0, unit) == Rational(1, 2));

  // Every included exponent n contributes n + 1/2, whatever the sign of its coefficient.
  for (auto kind : {SeriesKind::Exp, SeriesKind::Sinh, SeriesKind::Cosh, SeriesKind::Sin, SeriesKind::Cos})
    for (std::uint32_t n_max = 0; n_max <= 15; ++n_max) {
      Rational expected = 0;
      for (std::uint32_t n = 0; n <= n_max; ++n) {
        const bool odd = n % 2 == 1;
        const bool included = kind == SeriesKind::Exp ||
                              ((kind == SeriesKind::Sinh || kind == SeriesKind::Sin) ? odd : !odd);
        if (included) expected += Rational(2 * n + 1, 2);
      }
      CHECK(per_term_eigenvalue_sum(kind, n_max, unit) == expected);
    }
  CHECK(per_term_eigenvalue_sum(SeriesKind::Sin, 9, unit) == per_term_eigenvalue_sum(SeriesKind::Sinh, 9, unit));
  CHECK(per_term_eigenvalue_sum(SeriesKind::Cos, 8, unit) == per_term_eigenvalue_sum(SeriesKind::Cosh, 8, unit));

  const OscillatorSpec scaled(Rational(3), Rational(1, 2));
  CHECK(per_term_eigenvalue_sum(SeriesKind::Exp, 2, scaled) == Rational(27, 4));
}
