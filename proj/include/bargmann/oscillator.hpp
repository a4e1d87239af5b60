#pragma once

/// \file oscillator.hpp
/// Single-mode harmonic oscillator H = hbar*omega*(z d/dz + 1/2) on the variable z[0].

#include "bargmann/state.hpp"

#include <stdexcept>

namespace bargmann {

struct OscillatorSpec {
  Rational omega{1};
  Rational hbar{1};

  OscillatorSpec() = default;
  OscillatorSpec(Rational omega_, Rational hbar_ = 1) : omega(std::move(omega_)), hbar(std::move(hbar_)) {
    if (omega <= 0) throw std::invalid_argument("oscillator: omega must be positive");
    if (hbar <= 0) throw std::invalid_argument("oscillator: hbar must be positive");
  }
};

inline OperatorPolynomial hamiltonian(const OscillatorSpec& spec) {
  const Rational quantum = spec.hbar * spec.omega;
  OperatorPolynomial h;
  h.add(OperatorTerm{Coefficient(quantum), MultiIndex{{z_var(0), 1}}, MultiIndex{{z_var(0), 1}}});
  h.add(OperatorTerm{Coefficient(quantum / 2), {}, {}});
  return h;
}

/// Taylor series whose partial sums serve as trial states. Sin and Cos carry
/// the alternating signs of their expansions.
enum class SeriesKind { Exp, Sinh, Cosh, Sin, Cos };

namespace detail {

inline bool series_includes(SeriesKind kind, std::uint32_t n) {
  switch (kind) {
    case SeriesKind::Exp:
      return true;
    case SeriesKind::Sinh:
    case SeriesKind::Sin:
      return n % 2 == 1;
    case SeriesKind::Cosh:
    case SeriesKind::Cos:
      return n % 2 == 0;
  }
  return false;
}

/// Coefficient of the unnormalized z^n in the series: +-1/n!.
inline Rational series_coefficient(SeriesKind kind, std::uint32_t n) {
  Rational c(1, detail::falling_factorial(n, n));
  bool negative = (kind == SeriesKind::Sin && n % 4 == 3) || (kind == SeriesKind::Cos && n % 4 == 2);
  return negative ? Rational(-c) : c;
}

}  // namespace detail

/// Partial sum of the series up to and including exponent n_max, expanded in
/// normalized monomials (z^n/n! has amplitude 1/sqrt(n!)).
inline PolynomialState truncated_series_state(SeriesKind kind, std::uint32_t n_max) {
  PolynomialState s;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (!detail::series_includes(kind, n)) continue;
    // c_n z^n = c_n sqrt(n!) * (z^n/sqrt(n!))
    double amp = to_double(detail::series_coefficient(kind, n)) *
                 std::sqrt(detail::falling_factorial(n, n).convert_to<double>());
    s.add(MultiIndex{{z_var(0), n}}, amp);
  }
  return s;
}

/// Sum over the series terms n <= n_max of n! * <c_n z^n | H | c_n z^n>, each
/// term renormalized by the factorial of its own exponent. Every summand
/// reduces to hbar*omega*(n + 1/2); the result is exact.
inline Rational per_term_eigenvalue_sum(SeriesKind kind, std::uint32_t n_max, const OscillatorSpec& spec) {
  const OperatorPolynomial h = hamiltonian(spec);
  Rational total = 0;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (!detail::series_includes(kind, n)) continue;
    const MultiIndex m{{z_var(0), n}};
    const Rational c = detail::series_coefficient(kind, n);
    const Rational norm_sq(monomial_norm_sq(m));
    // <c z^n|H|c z^n> = |c|^2 * ||z^n||^2 * <n|H|n>
    const Coefficient diag = diagonal_element_exact(h, m);
    total += norm_sq * (c * c * norm_sq * diag.re);
  }
  return total;
}

}  // namespace bargmann
