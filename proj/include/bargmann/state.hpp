#pragma once

/// \file state.hpp
/// Finite states in Bargmann space and the action of operators on them.
///
/// States are expanded in the orthonormal monomials prod_v v^{n_v} / sqrt(n_v!).
/// With the pi^{-d} prefactor absorbed into the Gaussian measure these have
/// unit norm, so inner products reduce to coefficient sums.

#include "bargmann/operator.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <utility>

namespace bargmann {

using Amplitude = std::complex<double>;

class PolynomialState {
 public:
  using Map = std::map<MultiIndex, Amplitude>;

  PolynomialState() = default;
  static PolynomialState basis(const MultiIndex& m, Amplitude amp = 1.0) {
    PolynomialState s;
    s.add(m, amp);
    return s;
  }

  /// Accumulates `amp` onto monomial `m`. Exact zeros are never stored.
  void add(const MultiIndex& m, Amplitude amp) {
    if (amp == Amplitude(0.0)) return;
    auto [it, inserted] = amps_.try_emplace(m, amp);
    if (!inserted) {
      it->second += amp;
      if (it->second == Amplitude(0.0)) amps_.erase(it);
    }
  }

  Amplitude amplitude(const MultiIndex& m) const {
    auto it = amps_.find(m);
    return it == amps_.end() ? Amplitude(0.0) : it->second;
  }

  const Map& amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  double norm_sq() const {
    double n = 0;
    for (const auto& [m, a] : amps_) n += std::norm(a);
    return n;
  }

  PolynomialState& operator*=(Amplitude s) {
    if (s == Amplitude(0.0)) {
      amps_.clear();
      return *this;
    }
    for (auto& [m, a] : amps_) a *= s;
    return *this;
  }
  PolynomialState& operator+=(const PolynomialState& o) {
    for (const auto& [m, a] : o.amps_) add(m, a);
    return *this;
  }
  friend PolynomialState operator*(Amplitude s, PolynomialState st) { return st *= s; }
  friend PolynomialState operator+(PolynomialState a, const PolynomialState& b) { return a += b; }

 private:
  Map amps_;
};

/// Squared Bargmann norm of the unnormalized monomial: prod_v n_v!.
inline BigInt monomial_norm_sq(const MultiIndex& m) {
  BigInt r = 1;
  for (const auto& [v, n] : m.entries()) r *= detail::falling_factorial(n, n);
  return r;
}

/// Conjugate-linear in `a`.
inline Amplitude inner_product(const PolynomialState& a, const PolynomialState& b) {
  Amplitude sum = 0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [m, x] : small.amplitudes()) {
    auto it = large.amplitudes().find(m);
    if (it == large.amplitudes().end()) continue;
    sum += &small == &a ? std::conj(x) * it->second : std::conj(it->second) * x;
  }
  return sum;
}

namespace detail {

inline std::optional<std::pair<MultiIndex, Amplitude>> apply_term_parts(const Coefficient& coeff,
                                                                        const MultiIndex& mult,
                                                                        const MultiIndex& deriv,
                                                                        const MultiIndex& m) {
  for (const auto& [v, r] : deriv.entries())
    if (m.get(v) < r) return std::nullopt;

  MultiIndex out = m;
  double factor = 1.0;
  auto touch = [&](VariableId v) {
    std::uint32_t n = m.get(v);
    std::uint32_t r = deriv.get(v);
    std::uint32_t p = mult.get(v);
    std::uint32_t kept = n - r;
    std::uint32_t n_new = kept + p;
    out.set(v, n_new);
    // sqrt(n! n'!)/kept! = sqrt( n!/kept! * n'!/kept! )
    BigInt ratio = detail::falling_factorial(n, r) * detail::falling_factorial(n_new, p);
    factor *= std::sqrt(ratio.convert_to<double>());
  };
  for (const auto& [v, r] : deriv.entries()) touch(v);
  for (const auto& [v, p] : mult.entries())
    if (deriv.get(v) == 0) touch(v);
  return std::make_pair(std::move(out), coeff.to_complex() * factor);
}

}  // namespace detail

/// Image of a single term on a normalized monomial, or nullopt if the term
/// annihilates it. The amplitude is coeff * prod_v sqrt(n_v! n'_v!) / (n_v - r_v)!.
inline std::optional<std::pair<MultiIndex, Amplitude>> apply_term(const OperatorTerm& t,
                                                                  const MultiIndex& m) {
  return detail::apply_term_parts(t.coeff, t.mult, t.deriv, m);
}

/// Linear extension of apply_term. Amplitudes with magnitude <= drop_tol are removed.
inline PolynomialState apply(const OperatorPolynomial& op, const PolynomialState& s,
                             double drop_tol = 0.0) {
  PolynomialState out;
  for (const auto& [key, c] : op.terms()) {
    for (const auto& [m, a] : s.amplitudes()) {
      if (auto image = detail::apply_term_parts(c, key.first, key.second, m))
        out.add(image->first, a * image->second);
    }
  }
  if (drop_tol <= 0.0) return out;
  PolynomialState pruned;
  for (const auto& [m, a] : out.amplitudes())
    if (std::abs(a) > drop_tol) pruned.add(m, a);
  return pruned;
}

/// <bra| op |ket> between normalized monomials.
inline Amplitude matrix_element(const MultiIndex& bra, const OperatorPolynomial& op,
                                const MultiIndex& ket) {
  Amplitude sum = 0;
  for (const auto& [key, c] : op.terms()) {
    auto image = detail::apply_term_parts(c, key.first, key.second, ket);
    if (image && image->first == bra) sum += image->second;
  }
  return sum;
}

/// Exact <m| op |m> for a normalized monomial. Only terms with equal
/// multiplication and derivative exponents contribute, each with the integer
/// weight prod_v n_v!/(n_v - r_v)!.
inline Coefficient diagonal_element_exact(const OperatorPolynomial& op, const MultiIndex& m) {
  Coefficient sum;
  for (const auto& [key, c] : op.terms()) {
    if (key.first != key.second) continue;
    BigInt weight = 1;
    bool annihilated = false;
    for (const auto& [v, r] : key.second.entries()) {
      std::uint32_t n = m.get(v);
      if (n < r) {
        annihilated = true;
        break;
      }
      weight *= detail::falling_factorial(n, r);
    }
    if (!annihilated) sum += c * Coefficient(Rational(weight));
  }
  return sum;
}

}  // namespace bargmann
