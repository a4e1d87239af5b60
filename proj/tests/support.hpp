#pragma once

// Helpers shared by the test executables. ExactPolynomial and act() apply an
// operator by literal differentiation and multiplication of unnormalized
// monomials; they deliberately avoid compose() and apply().

#include "bargmann/operator.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <random>

namespace testing_support {

using bargmann::Coefficient;
using bargmann::MultiIndex;
using bargmann::OperatorPolynomial;
using bargmann::OperatorTerm;
using bargmann::Rational;
using bargmann::VariableId;

using ExactPolynomial = std::map<MultiIndex, Coefficient>;

inline void accumulate(ExactPolynomial& p, const MultiIndex& m, const Coefficient& c) {
  if (c.is_zero()) return;
  auto& slot = p[m];
  slot += c;
  if (slot.is_zero()) p.erase(m);
}

/// One factor d/dv applied to every monomial.
inline ExactPolynomial differentiate(const ExactPolynomial& p, VariableId v) {
  ExactPolynomial out;
  for (const auto& [m, c] : p) {
    const std::uint32_t n = m.get(v);
    if (n == 0) continue;
    MultiIndex lowered = m;
    lowered.set(v, n - 1);
    accumulate(out, lowered, c * Coefficient(Rational(n)));
  }
  return out;
}

inline ExactPolynomial multiply(const ExactPolynomial& p, VariableId v) {
  ExactPolynomial out;
  for (const auto& [m, c] : p) {
    MultiIndex raised = m;
    raised.set(v, m.get(v) + 1);
    accumulate(out, raised, c);
  }
  return out;
}

/// Each term c * prod v^p * prod d^r acts by differentiating first, one
/// derivative at a time, then multiplying one variable at a time.
inline ExactPolynomial act(const OperatorPolynomial& op, const ExactPolynomial& p) {
  ExactPolynomial out;
  for (const auto& t : op.term_list()) {
    ExactPolynomial cur = p;
    for (const auto& [v, r] : t.deriv.entries())
      for (std::uint32_t k = 0; k < r; ++k) cur = differentiate(cur, v);
    for (const auto& [v, e] : t.mult.entries())
      for (std::uint32_t k = 0; k < e; ++k) cur = multiply(cur, v);
    for (const auto& [m, c] : cur) accumulate(out, m, t.coeff * c);
  }
  return out;
}

inline ExactPolynomial monomial(const MultiIndex& m) { return {{m, Coefficient(1)}}; }

/// All monomials in `vars` of total degree <= max_degree.
inline std::vector<MultiIndex> monomials_up_to(const std::vector<VariableId>& vars, std::uint32_t max_degree) {
  std::vector<MultiIndex> out{MultiIndex{}};
  for (auto v : vars) {
    std::vector<MultiIndex> next;
    for (const auto& m : out)
      for (std::uint32_t e = 0; m.total_degree() + e <= max_degree; ++e) {
        MultiIndex x = m;
        x.set(v, e);
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

inline Coefficient random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  Coefficient c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return c.is_zero() ? Coefficient(1) : c;
}

/// Random operator over the variables of sites 0..n_sites-1.
inline OperatorPolynomial random_operator(std::mt19937_64& rng, std::uint32_t n_sites, int max_terms,
                                          std::uint32_t max_exponent) {
  std::uniform_int_distribution<int> n_terms(1, max_terms);
  std::uniform_int_distribution<std::uint32_t> exponent(1, max_exponent);
  std::bernoulli_distribution present(0.35);
  OperatorPolynomial op;
  const int terms = n_terms(rng);
  for (int k = 0; k < terms; ++k) {
    OperatorTerm t;
    t.coeff = random_coefficient(rng);
    for (std::uint32_t s = 0; s < n_sites; ++s)
      for (auto v : {bargmann::z_var(s), bargmann::w_var(s)}) {
        if (present(rng)) t.mult.set(v, exponent(rng));
        if (present(rng)) t.deriv.set(v, exponent(rng));
      }
    op.add(t);
  }
  return op;
}

inline bool near(std::complex<double> a, std::complex<double> b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testing_support
