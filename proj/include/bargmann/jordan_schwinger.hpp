#pragma once

/// \file jordan_schwinger.hpp
/// Angular momentum from two holomorphic modes (z_i, w_i) per site:
///
///   J1 = (hbar/2)(z dw + w dz),   J2 = (hbar/2i)(z dw - w dz),
///   J3 = (hbar/2)(z dz - w dw),   J+ = hbar z dw,   J- = hbar w dz.

#include "bargmann/operator.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bargmann {

enum class AngularKind { X, Y, Z, Plus, Minus, Squared };

/// (j, m) stored as the integers 2j and 2m.
struct JmLabel {
  int twice_j = 0;
  int twice_m = 0;

  double j() const { return twice_j / 2.0; }
  double m() const { return twice_m / 2.0; }
  friend bool operator==(const JmLabel&, const JmLabel&) = default;
};

namespace detail {

inline OperatorPolynomial bilinear(VariableId mult, VariableId deriv) {
  return OperatorPolynomial(OperatorTerm{Coefficient(1), MultiIndex{{mult, 1}}, MultiIndex{{deriv, 1}}});
}

}  // namespace detail

/// Schwinger boson number z dz + w dw on one site.
inline OperatorPolynomial number_operator(std::uint32_t site) {
  return detail::bilinear(z_var(site), z_var(site)) + detail::bilinear(w_var(site), w_var(site));
}

inline OperatorPolynomial j_operator(std::uint32_t site, AngularKind kind, const Rational& hbar = 1) {
  const VariableId z = z_var(site);
  const VariableId w = w_var(site);
  const Rational half_hbar = hbar / 2;
  switch (kind) {
    case AngularKind::X:
      return (detail::bilinear(z, w) + detail::bilinear(w, z)) * Coefficient(half_hbar);
    case AngularKind::Y:
      // 1/(2i) = -i/2
      return (detail::bilinear(z, w) - detail::bilinear(w, z)) * Coefficient(0, -half_hbar);
    case AngularKind::Z:
      return (detail::bilinear(z, z) - detail::bilinear(w, w)) * Coefficient(half_hbar);
    case AngularKind::Plus:
      return detail::bilinear(z, w) * Coefficient(hbar);
    case AngularKind::Minus:
      return detail::bilinear(w, z) * Coefficient(hbar);
    case AngularKind::Squared: {
      OperatorPolynomial sq;
      for (auto k : {AngularKind::X, AngularKind::Y, AngularKind::Z}) {
        auto j = j_operator(site, k, hbar);
        sq += compose(j, j);
      }
      return sq;
    }
  }
  throw std::invalid_argument("unknown angular momentum kind");
}

/// Sum of single-site operators over `sites`; for Squared, the square of the
/// summed vector operator (sum_i J_i) . (sum_i J_i) including cross terms.
inline OperatorPolynomial total_operator(AngularKind kind, std::span<const std::uint32_t> sites,
                                         const Rational& hbar = 1) {
  if (sites.empty()) throw std::invalid_argument("total_operator: empty site list");
  for (std::size_t a = 0; a < sites.size(); ++a)
    for (std::size_t b = a + 1; b < sites.size(); ++b)
      if (sites[a] == sites[b]) throw std::invalid_argument("total_operator: duplicate site");

  if (kind == AngularKind::Squared) {
    OperatorPolynomial sq;
    for (auto k : {AngularKind::X, AngularKind::Y, AngularKind::Z}) {
      auto total = total_operator(k, sites, hbar);
      sq += compose(total, total);
    }
    return sq;
  }
  OperatorPolynomial sum;
  for (auto s : sites) sum += j_operator(s, kind, hbar);
  return sum;
}

inline OperatorPolynomial total_operator(AngularKind kind, std::initializer_list<std::uint32_t> sites,
                                         const Rational& hbar = 1) {
  return total_operator(kind, std::span<const std::uint32_t>(sites.begin(), sites.size()), hbar);
}

/// j = (alpha+beta)/2, m = (alpha-beta)/2.
inline JmLabel jm_label(int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw std::invalid_argument("jm_label: negative exponent");
  return {alpha + beta, alpha - beta};
}

/// The 2j+1 monomials z^{j+m} w^{j-m} on `site`, m descending from j to -j.
inline std::vector<MultiIndex> multiplet_states(int twice_j, std::uint32_t site = 0) {
  if (twice_j < 0) throw std::invalid_argument("multiplet_states: negative j");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(twice_j) + 1);
  for (int alpha = twice_j; alpha >= 0; --alpha)
    out.push_back(site_monomial(site, static_cast<std::uint32_t>(alpha),
                                static_cast<std::uint32_t>(twice_j - alpha)));
  return out;
}

}  // namespace bargmann
