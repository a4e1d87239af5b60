#pragma once

/// \file oracle.hpp
/// Reference spin-chain Hamiltonians built from standard spin-s matrices and
/// explicit Kronecker products. Nothing here touches the holomorphic operator
/// algebra; only ChainSpec is shared with the Bargmann path.

#include "bargmann/chain_spec.hpp"
#include "bargmann/multi_index.hpp"
#include "bargmann/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bargmann::oracle {

struct SpinMatrices {
  DenseMatrix sx, sy, sz;
  int twice_s = 1;
};

/// Spin matrices in the |s, m> basis ordered m = -s ... +s, Condon-Shortley phases.
inline SpinMatrices spin_matrices(int twice_s, double hbar = 1.0) {
  if (twice_s < 0) throw std::invalid_argument("spin_matrices: negative spin");
  const Eigen::Index d = twice_s + 1;
  const double s = twice_s / 2.0;
  DenseMatrix sz = DenseMatrix::Zero(d, d);
  DenseMatrix raise = DenseMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = -s + static_cast<double>(k);
    sz(k, k) = hbar * m;
    // S+ |m> = hbar sqrt(s(s+1) - m(m+1)) |m+1>
    if (k + 1 < d) raise(k + 1, k) = hbar * std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const DenseMatrix lower = raise.adjoint();
  SpinMatrices out;
  out.twice_s = twice_s;
  out.sx = (raise + lower) * 0.5;
  out.sy = (raise - lower) * std::complex<double>(0.0, -0.5);
  out.sz = sz;
  return out;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// I (x) ... (x) A_i (x) ... (x) B_j (x) ... (x) I, site 0 leftmost.
inline DenseMatrix two_site_operator(const DenseMatrix& a, std::uint32_t i, const DenseMatrix& b, std::uint32_t j,
                                     std::uint32_t n_sites) {
  const Eigen::Index d = a.rows();
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (std::uint32_t site = 0; site < n_sites; ++site) {
    DenseMatrix factor = DenseMatrix::Identity(d, d);
    if (site == i) factor = a;
    if (site == j) factor = (site == i) ? DenseMatrix(a * b) : b;
    out = kron(out, factor);
  }
  return out;
}

/// Dense sum over bonds and axes of J_a S^a_i S^a_j.
inline DenseMatrix oracle_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  check_dimension(spec);
  const auto spins = spin_matrices(spec.twice_spin, to_double(spec.hbar));
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  DenseMatrix h = DenseMatrix::Zero(dim, dim);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;
  for (std::uint32_t i = 0; i + 1 < spec.n_sites; ++i) bonds.emplace_back(i, i + 1);
  if (spec.boundary == Boundary::Periodic) bonds.emplace_back(spec.n_sites - 1, 0);

  for (const auto& [i, j] : bonds) {
    if (spec.jx != 0) h += spec.jx * two_site_operator(spins.sx, i, spins.sx, j, spec.n_sites);
    if (spec.jy != 0) h += spec.jy * two_site_operator(spins.sy, i, spins.sy, j, spec.n_sites);
    if (spec.jz != 0) h += spec.jz * two_site_operator(spins.sz, i, spins.sz, j, spec.n_sites);
  }
  return h;
}

/// Tensor-product row index of the state prod_i z_i^{alpha_i} w_i^{beta_i}:
/// per-site digit alpha_i = s + m_i in base 2s+1, site 0 most significant.
inline std::size_t basis_isomorphism(const MultiIndex& idx, int twice_s, std::uint32_t n_sites) {
  const auto two_s = static_cast<std::uint32_t>(twice_s);
  for (const auto& [v, e] : idx.entries())
    if (v.site >= n_sites) throw SectorViolation("monomial uses a site outside the chain");
  std::size_t index = 0;
  for (std::uint32_t i = 0; i < n_sites; ++i) {
    const std::uint32_t alpha = idx.get(z_var(i));
    const std::uint32_t beta = idx.get(w_var(i));
    if (alpha + beta != two_s) throw SectorViolation("monomial is not in the spin sector");
    index = index * (two_s + 1) + alpha;
  }
  return index;
}

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SpectrumComparison {
  struct Offender {
    std::size_t index;
    double lhs;
    double rhs;
    double diff;
  };
  double max_diff = 0;
  double tolerance = 0;
  bool pass = true;
  std::vector<Offender> worst;  ///< largest deviations first
};

inline SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol,
                                          std::size_t n_worst = 5) {
  if (a.eigenvalues.size() != b.eigenvalues.size())
    throw DimensionMismatch("compare_spectra: " + std::to_string(a.eigenvalues.size()) + " vs " +
                            std::to_string(b.eigenvalues.size()) + " eigenvalues");
  std::vector<double> x = a.eigenvalues, y = b.eigenvalues;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  SpectrumComparison out;
  out.tolerance = tol;
  std::vector<SpectrumComparison::Offender> all;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = std::abs(x[k] - y[k]);
    out.max_diff = std::max(out.max_diff, d);
    all.push_back({k, x[k], y[k], d});
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.diff > r.diff; });
  all.resize(std::min(all.size(), n_worst));
  out.worst = std::move(all);
  out.pass = out.max_diff <= tol;
  return out;
}

}  // namespace bargmann::oracle
