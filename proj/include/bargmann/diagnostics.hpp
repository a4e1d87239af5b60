#pragma once

/// \file diagnostics.hpp
/// Mechanical comparisons between the published closed forms and the
/// operators the library builds by composition.

#include "bargmann/spectra.hpp"
#include "bargmann/spin_chain.hpp"

#include <numeric>
#include <vector>

namespace bargmann {

/// Term-level comparison of the transcribed published chain operators against
/// the compositional Hamiltonian for the same spec.
struct PaperLiteralReport {
  std::vector<TermDifference> xyz_differences;  ///< lhs = transcribed XYZ, rhs = compositional
  bool isotropic = false;                       ///< jx == jy == jz, so the XXX form applies
  std::vector<TermDifference> xxx_differences;  ///< lhs = transcribed XXX, rhs = compositional
  bool xxx_hermitian = true;
};

inline PaperLiteralReport paper_literal_report(const ChainSpec& spec) {
  PaperLiteralReport r;
  const OperatorPolynomial reference = compositional_hamiltonian(spec);
  r.xyz_differences = term_differences(paper_literal_hamiltonian(spec), reference);
  r.isotropic = spec.jx == spec.jy && spec.jy == spec.jz;
  if (r.isotropic) {
    const OperatorPolynomial xxx = paper_literal_xxx_hamiltonian(spec);
    r.xxx_differences = term_differences(xxx, reference);
    r.xxx_hermitian = adjoint(xxx) == xxx;
  }
  return r;
}

/// Total J^2 on a uniform spin-s chain, computed two ways: the square of the
/// summed vector operator, and the sum of single-site Casimirs.
struct CasimirAdditivity {
  OperatorPolynomial difference;            ///< compositional - additive (the cross terms)
  std::vector<double> compositional_eigenvalues;
  std::vector<double> additive_eigenvalues;
  double additive_closed_form = 0;          ///< hbar^2 J(J+1) with J = N s, the additive claim
};

inline CasimirAdditivity casimir_additivity(std::uint32_t n_sites, int twice_spin, const Rational& hbar = 1) {
  std::vector<std::uint32_t> sites(n_sites);
  std::iota(sites.begin(), sites.end(), 0u);
  const OperatorPolynomial compositional = total_operator(AngularKind::Squared, sites, hbar);
  OperatorPolynomial additive;
  for (auto s : sites) additive += j_operator(s, AngularKind::Squared, hbar);

  const SectorBasis basis = sector_basis(n_sites, twice_spin);
  CasimirAdditivity out;
  out.difference = compositional - additive;
  out.compositional_eigenvalues = eigensolve(assemble_matrix(compositional, basis)).eigenvalues;
  out.additive_eigenvalues = eigensolve(assemble_matrix(additive, basis)).eigenvalues;
  const double j_total = n_sites * twice_spin / 2.0;
  const double h = to_double(hbar);
  out.additive_closed_form = h * h * j_total * (j_total + 1);
  return out;
}

}  // namespace bargmann
