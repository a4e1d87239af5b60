#pragma once

/// \file operator.hpp
/// Normal-ordered polynomial differential operators with exact coefficients.
///
/// Every operator is stored as a sum of terms c * prod_v v^{p_v} * prod_v d_v^{r_v},
/// with all multiplications to the left of all derivatives. The only
/// non-commuting pairs are (d_v, v), with [d_v, v] = 1, so products are brought
/// back to this form with the generalized Leibniz rule
///
///   d^r v^p = sum_k C(r,k) p!/(p-k)! v^{p-k} d^{r-k}.

#include "bargmann/multi_index.hpp"
#include "bargmann/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace bargmann {

struct OperatorTerm {
  Coefficient coeff{1};
  MultiIndex mult;   ///< multiplication exponents p_v
  MultiIndex deriv;  ///< derivative exponents r_v
};

class OperatorPolynomial {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;  // (mult, deriv)
  using Map = std::map<Key, Coefficient>;

  OperatorPolynomial() = default;
  explicit OperatorPolynomial(const OperatorTerm& t) { add(t); }

  static OperatorPolynomial identity() { return scalar(Coefficient(1)); }
  static OperatorPolynomial scalar(const Coefficient& c) {
    OperatorPolynomial p;
    p.add(OperatorTerm{c, {}, {}});
    return p;
  }
  /// Multiplication by the variable `v`.
  static OperatorPolynomial variable(VariableId v, std::uint32_t power = 1) {
    OperatorPolynomial p;
    p.add(OperatorTerm{Coefficient(1), MultiIndex{{v, power}}, {}});
    return p;
  }
  /// Partial derivative with respect to `v`.
  static OperatorPolynomial derivative(VariableId v, std::uint32_t order = 1) {
    OperatorPolynomial p;
    p.add(OperatorTerm{Coefficient(1), {}, MultiIndex{{v, order}}});
    return p;
  }

  void add(const OperatorTerm& t) { add(Key{t.mult, t.deriv}, t.coeff); }
  void add(const Key& key, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::vector<OperatorTerm> term_list() const {
    std::vector<OperatorTerm> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.push_back({c, key.first, key.second});
    return out;
  }

  OperatorPolynomial& operator+=(const OperatorPolynomial& o) {
    for (const auto& [key, c] : o.terms_) add(key, c);
    return *this;
  }
  OperatorPolynomial& operator-=(const OperatorPolynomial& o) {
    for (const auto& [key, c] : o.terms_) add(key, -c);
    return *this;
  }
  OperatorPolynomial& operator*=(const Coefficient& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }

  friend OperatorPolynomial operator+(OperatorPolynomial a, const OperatorPolynomial& b) { return a += b; }
  friend OperatorPolynomial operator-(OperatorPolynomial a, const OperatorPolynomial& b) { return a -= b; }
  friend OperatorPolynomial operator*(OperatorPolynomial a, const Coefficient& s) { return a *= s; }
  friend OperatorPolynomial operator*(const Coefficient& s, OperatorPolynomial a) { return a *= s; }
  friend bool operator==(const OperatorPolynomial&, const OperatorPolynomial&) = default;

 private:
  Map terms_;
};

namespace detail {

inline BigInt binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// n!/(n-k)!
inline BigInt falling_factorial(std::uint32_t n, std::uint32_t k) {
  BigInt r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace detail

/// a*b rewritten in normal order.
inline OperatorPolynomial normal_order_product(const OperatorTerm& a, const OperatorTerm& b) {
  // Variables where a's derivatives meet b's multiplications.
  struct Crossing {
    VariableId var;
    std::uint32_t r;  // derivative order from a
    std::uint32_t p;  // multiplication power from b
  };
  std::vector<Crossing> crossings;
  for (const auto& [v, r] : a.deriv.entries()) {
    std::uint32_t p = b.mult.get(v);
    if (p > 0) crossings.push_back({v, r, p});
  }

  OperatorPolynomial out;
  const Coefficient base = a.coeff * b.coeff;
  const MultiIndex mult_sum = a.mult + b.mult;
  const MultiIndex deriv_sum = a.deriv + b.deriv;
  std::vector<std::uint32_t> k(crossings.size(), 0);

  // Odometer over all contraction orders k_v in [0, min(r_v, p_v)].
  while (true) {
    MultiIndex mult = mult_sum;
    MultiIndex deriv = deriv_sum;
    BigInt weight = 1;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      const auto& c = crossings[i];
      if (k[i] == 0) continue;
      mult.set(c.var, mult.get(c.var) - k[i]);
      deriv.set(c.var, deriv.get(c.var) - k[i]);
      weight *= detail::binomial(c.r, k[i]) * detail::falling_factorial(c.p, k[i]);
    }
    out.add({std::move(mult), std::move(deriv)}, base * Coefficient(Rational(weight)));

    std::size_t i = 0;
    for (; i < crossings.size(); ++i) {
      if (k[i] < std::min(crossings[i].r, crossings[i].p)) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
    if (i == crossings.size()) break;
  }
  return out;
}

/// A*B in canonical normal-ordered form.
inline OperatorPolynomial compose(const OperatorPolynomial& a, const OperatorPolynomial& b) {
  OperatorPolynomial out;
  const auto at = a.term_list();
  const auto bt = b.term_list();
  for (const auto& x : at)
    for (const auto& y : bt) out += normal_order_product(x, y);
  return out;
}

inline OperatorPolynomial commutator(const OperatorPolynomial& a, const OperatorPolynomial& b) {
  return compose(a, b) - compose(b, a);
}

/// Hermitian adjoint with respect to the Bargmann inner product, where v and
/// d_v are mutually adjoint: (c v^p d^r)^dagger = conj(c) v^r d^p, which is
/// already normal-ordered.
inline OperatorPolynomial adjoint(const OperatorPolynomial& a) {
  OperatorPolynomial out;
  for (const auto& [key, c] : a.terms()) out.add({key.second, key.first}, c.conj());
  return out;
}

/// Operator power by repeated composition; power 0 is the identity.
inline OperatorPolynomial power(const OperatorPolynomial& a, std::uint32_t n) {
  OperatorPolynomial out = OperatorPolynomial::identity();
  for (std::uint32_t i = 0; i < n; ++i) out = compose(out, a);
  return out;
}

/// One key where two operators disagree.
struct TermDifference {
  OperatorPolynomial::Key key;
  Coefficient lhs;  ///< zero if absent from lhs
  Coefficient rhs;  ///< zero if absent from rhs
};

inline std::vector<TermDifference> term_differences(const OperatorPolynomial& lhs,
                                                    const OperatorPolynomial& rhs) {
  std::vector<TermDifference> out;
  auto li = lhs.terms().begin();
  auto ri = rhs.terms().begin();
  while (li != lhs.terms().end() || ri != rhs.terms().end()) {
    if (ri == rhs.terms().end() || (li != lhs.terms().end() && li->first < ri->first)) {
      out.push_back({li->first, li->second, Coefficient()});
      ++li;
    } else if (li == lhs.terms().end() || ri->first < li->first) {
      out.push_back({ri->first, Coefficient(), ri->second});
      ++ri;
    } else {
      if (!(li->second == ri->second)) out.push_back({li->first, li->second, ri->second});
      ++li;
      ++ri;
    }
  }
  return out;
}

}  // namespace bargmann
