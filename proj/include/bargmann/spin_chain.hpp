#pragma once

/// \file spin_chain.hpp
/// XYZ chain Hamiltonians as holomorphic differential operators, and their
/// matrices on the fixed-spin sector alpha_i + beta_i = 2s.

#include "bargmann/chain_spec.hpp"
#include "bargmann/jordan_schwinger.hpp"
#include "bargmann/state.hpp"

#include <Eigen/Sparse>

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bargmann {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

/// Ordered monomial basis of the spin-s sector. State k has per-site
/// magnetizations m_i running from -s to +s, site 0 varying slowest.
struct SectorBasis {
  std::vector<MultiIndex> states;
  int twice_spin = 1;
  std::uint32_t n_sites = 1;

  std::size_t size() const { return states.size(); }
};

inline SectorBasis sector_basis(std::uint32_t n_sites, int twice_spin) {
  if (twice_spin < 0) throw std::invalid_argument("sector_basis: negative spin");
  SectorBasis basis;
  basis.twice_spin = twice_spin;
  basis.n_sites = n_sites;
  const auto two_s = static_cast<std::uint32_t>(twice_spin);
  // alpha_i = s + m_i counts up from 0 (m = -s) to 2s (m = +s).
  std::vector<std::uint32_t> alpha(n_sites, 0);
  while (true) {
    MultiIndex m;
    for (std::uint32_t i = 0; i < n_sites; ++i) {
      m.set(z_var(i), alpha[i]);
      m.set(w_var(i), two_s - alpha[i]);
    }
    basis.states.push_back(std::move(m));
    std::int64_t i = static_cast<std::int64_t>(n_sites) - 1;
    for (; i >= 0; --i) {
      if (alpha[static_cast<std::size_t>(i)] < two_s) {
        ++alpha[static_cast<std::size_t>(i)];
        break;
      }
      alpha[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return basis;
}

inline SectorBasis sector_basis(const ChainSpec& spec) { return sector_basis(spec.n_sites, spec.twice_spin); }

/// Nearest-neighbour bonds (i, i+1), plus (N-1, 0) when periodic.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> chain_bonds(const ChainSpec& spec) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;
  for (std::uint32_t i = 0; i + 1 < spec.n_sites; ++i) bonds.emplace_back(i, i + 1);
  // For N = 2 the wrap-around bond (1, 0) doubles (0, 1).
  if (spec.boundary == Boundary::Periodic) bonds.emplace_back(spec.n_sites - 1, 0);
  return bonds;
}

/// sum_bonds sum_a J_a S^a_i S^a_j, each product formed by composition.
inline OperatorPolynomial compositional_hamiltonian(const ChainSpec& spec) {
  const std::pair<AngularKind, Rational> parts[] = {{AngularKind::X, rational_from_double(spec.jx)},
                                                    {AngularKind::Y, rational_from_double(spec.jy)},
                                                    {AngularKind::Z, rational_from_double(spec.jz)}};
  OperatorPolynomial h;
  for (const auto& [i, j] : chain_bonds(spec)) {
    for (const auto& [kind, coupling] : parts) {
      if (coupling == 0) continue;
      h += compose(j_operator(i, kind, spec.hbar), j_operator(j, kind, spec.hbar)) * Coefficient(coupling);
    }
  }
  return h;
}

namespace detail {

/// c * prod(mult) * prod(deriv) for one bond term.
inline OperatorTerm bond_term(Rational c, std::initializer_list<VariableId> mult,
                              std::initializer_list<VariableId> deriv) {
  OperatorTerm t;
  t.coeff = Coefficient(std::move(c));
  for (auto v : mult) t.mult.set(v, t.mult.get(v) + 1);
  for (auto v : deriv) t.deriv.set(v, t.deriv.get(v) + 1);
  return t;
}

}  // namespace detail

/// The holomorphic XYZ expansion transcribed term by term from its published
/// form, including the single merged J_z cross term -2 w_i z_j dw_i dz_j.
inline OperatorPolynomial paper_literal_hamiltonian(const ChainSpec& spec) {
  const Rational quarter = spec.hbar * spec.hbar / 4;
  const Rational cx = quarter * rational_from_double(spec.jx);
  const Rational cy = quarter * rational_from_double(spec.jy);
  const Rational cz = quarter * rational_from_double(spec.jz);
  OperatorPolynomial h;
  for (const auto& [i, j] : chain_bonds(spec)) {
    const VariableId zi = z_var(i), wi = w_var(i), zj = z_var(j), wj = w_var(j);
    // J_x line
    h.add(detail::bond_term(cx, {zi, zj}, {wi, wj}));
    h.add(detail::bond_term(cx, {wi, zj}, {zi, wj}));
    h.add(detail::bond_term(cx, {wj, zi}, {zj, wi}));
    h.add(detail::bond_term(cx, {wi, wj}, {zi, zj}));
    // -J_y line
    h.add(detail::bond_term(-cy, {zi, zj}, {wi, wj}));
    h.add(detail::bond_term(cy, {wi, zj}, {zi, wj}));
    h.add(detail::bond_term(cy, {zi, wj}, {wi, zj}));
    h.add(detail::bond_term(-cy, {wi, wj}, {zi, zj}));
    // J_z line
    h.add(detail::bond_term(cz, {zi, zj}, {zi, zj}));
    h.add(detail::bond_term(-2 * cz, {wi, zj}, {wi, zj}));
    h.add(detail::bond_term(cz, {wi, wj}, {wi, wj}));
  }
  return h;
}

/// The published isotropic reduction with coupling J = jx, per bond:
/// (hbar^2 J/4)(z_i z_j dz_i dz_j + 2 z_i w_j dw_i dz_j + w_i w_j dw_i dw_j).
inline OperatorPolynomial paper_literal_xxx_hamiltonian(const ChainSpec& spec) {
  const Rational c = spec.hbar * spec.hbar / 4 * rational_from_double(spec.jx);
  OperatorPolynomial h;
  for (const auto& [i, j] : chain_bonds(spec)) {
    const VariableId zi = z_var(i), wi = w_var(i), zj = z_var(j), wj = w_var(j);
    h.add(detail::bond_term(c, {zi, zj}, {zi, zj}));
    h.add(detail::bond_term(2 * c, {zi, wj}, {wi, zj}));
    h.add(detail::bond_term(c, {wi, wj}, {wi, wj}));
  }
  return h;
}

inline OperatorPolynomial build_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  return spec.mode == HamiltonianMode::Compositional ? compositional_hamiltonian(spec)
                                                     : paper_literal_hamiltonian(spec);
}

/// Throws SectorViolation unless every term changes alpha_i + beta_i by zero on
/// every site and touches only sites below `n_sites`.
inline void check_sector_preserving(const OperatorPolynomial& op, std::uint32_t n_sites) {
  for (const auto& [key, c] : op.terms()) {
    std::map<std::uint32_t, std::int64_t> balance;
    for (const auto& [v, p] : key.first.entries()) balance[v.site] += p;
    for (const auto& [v, r] : key.second.entries()) balance[v.site] -= r;
    for (const auto& [site, b] : balance) {
      if (site >= n_sites)
        throw SectorViolation("term acts on site " + std::to_string(site) + " outside a " +
                              std::to_string(n_sites) + "-site chain");
      if (b != 0)
        throw SectorViolation("term changes the boson number on site " + std::to_string(site));
    }
  }
}

/// Entry (r, c) = <basis[r]| op |basis[c]>.
inline SparseMatrix assemble_matrix(const OperatorPolynomial& op, const SectorBasis& basis) {
  check_sector_preserving(op, basis.n_sites);
  std::map<MultiIndex, Eigen::Index> row_of;
  for (std::size_t k = 0; k < basis.size(); ++k) row_of.emplace(basis.states[k], static_cast<Eigen::Index>(k));

  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const PolynomialState image = apply(op, PolynomialState::basis(basis.states[col]));
    for (const auto& [m, a] : image.amplitudes()) {
      auto it = row_of.find(m);
      if (it == row_of.end()) throw SectorViolation("operator maps a basis state outside the sector");
      triplets.emplace_back(it->second, static_cast<Eigen::Index>(col), a);
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  SparseMatrix mat(dim, dim);
  mat.setFromTriplets(triplets.begin(), triplets.end());
  return mat;
}

struct MagnetizationBlock {
  int twice_m = 0;  ///< 2 * sum_i m_i
  std::vector<std::size_t> indices;
};

/// Basis indices grouped by total magnetization, blocks in ascending m.
inline std::vector<MagnetizationBlock> magnetization_blocks(const SectorBasis& basis) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int twice_m = 0;
    for (std::uint32_t i = 0; i < basis.n_sites; ++i)
      twice_m += static_cast<int>(basis.states[k].get(z_var(i))) - static_cast<int>(basis.states[k].get(w_var(i)));
    groups[twice_m].push_back(k);
  }
  std::vector<MagnetizationBlock> out;
  for (auto& [twice_m, idx] : groups) out.push_back({twice_m, std::move(idx)});
  return out;
}

}  // namespace bargmann
