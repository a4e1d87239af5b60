#pragma once

/// \file spectra.hpp
/// Dense Hermitian eigensolves, canonical-ensemble thermodynamics (k_B = 1)
/// and Husimi-Q densities of Bargmann states.

#include "bargmann/state.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bargmann {

using DenseMatrix = Eigen::MatrixXcd;

struct NotHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormalized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Spectrum {
  std::vector<double> eigenvalues;          ///< ascending
  std::optional<DenseMatrix> eigenvectors;  ///< column k pairs with eigenvalues[k]
  double residual_bound = 0.0;              ///< max_k ||H v_k - lambda_k v_k||_2
};

inline double max_abs_entry(const DenseMatrix& h) { return h.size() == 0 ? 0.0 : h.cwiseAbs().maxCoeff(); }

/// Full eigendecomposition of a Hermitian matrix. The residual bound is
/// measured from the computed eigenpairs, whether or not they are kept.
inline Spectrum eigensolve(const DenseMatrix& h, bool keep_vectors = false, double hermitian_tol = 1e-10) {
  if (h.rows() != h.cols()) throw NotHermitian("matrix is not square");
  const Eigen::Index n = h.rows();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = r; c < n; ++c)
      if (std::abs(h(r, c) - std::conj(h(c, r))) > hermitian_tol)
        throw NotHermitian("matrix differs from its adjoint at (" + std::to_string(r) + "," + std::to_string(c) + ")");

  Spectrum out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  out.eigenvalues.assign(values.data(), values.data() + n);
  const DenseMatrix residual = h * vectors - vectors * values.asDiagonal();
  for (Eigen::Index k = 0; k < n; ++k) out.residual_bound = std::max(out.residual_bound, residual.col(k).norm());
  if (keep_vectors) out.eigenvectors = vectors;
  return out;
}

inline Spectrum eigensolve(const Eigen::SparseMatrix<std::complex<double>>& h, bool keep_vectors = false) {
  return eigensolve(DenseMatrix(h), keep_vectors);
}

/// Eigenvalues only, assembled from independent solves of the given diagonal
/// blocks (index sets that partition the rows and decouple the matrix).
inline Spectrum eigensolve_blocks(const DenseMatrix& h, std::span<const std::vector<std::size_t>> blocks) {
  Spectrum out;
  for (const auto& idx : blocks) {
    const auto d = static_cast<Eigen::Index>(idx.size());
    DenseMatrix sub(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c)
        sub(r, c) = h(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                      static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
    Spectrum part = eigensolve(sub);
    out.eigenvalues.insert(out.eigenvalues.end(), part.eigenvalues.begin(), part.eigenvalues.end());
    out.residual_bound = std::max(out.residual_bound, part.residual_bound);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

struct ThermoPoint {
  double temperature = 0;
  double partition = 0;     ///< Z (may overflow to inf; log_partition stays finite)
  double log_partition = 0;
  double free_energy = 0;
  double entropy = 0;
  double mean_energy = 0;
};

/// Z = sum_n exp(-E_n/T), evaluated with the ground energy factored out.
inline ThermoPoint partition_function(const Spectrum& spectrum, double temperature) {
  if (!(temperature > 0) || !std::isfinite(temperature))
    throw std::invalid_argument("temperature must be positive and finite");
  if (spectrum.eigenvalues.empty()) throw std::invalid_argument("empty spectrum");
  const double e0 = *std::min_element(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
  const double beta = 1.0 / temperature;
  double weight_sum = 0;      // sum exp(-beta (E - E0)) >= 1
  double excess_energy = 0;   // sum (E - E0) exp(-beta (E - E0))
  for (double e : spectrum.eigenvalues) {
    const double de = e - e0;
    const double w = std::exp(-beta * de);
    weight_sum += w;
    excess_energy += de * w;
  }
  const double log_sum = std::log(weight_sum);
  const double mean_excess = excess_energy / weight_sum;

  ThermoPoint p;
  p.temperature = temperature;
  p.log_partition = log_sum - beta * e0;
  p.partition = std::exp(p.log_partition);
  p.free_energy = e0 - temperature * log_sum;
  p.mean_energy = e0 + mean_excess;
  // (<E> - F)/T with E0 cancelled analytically.
  p.entropy = beta * mean_excess + log_sum;
  return p;
}

inline std::vector<ThermoPoint> thermo_sweep(const Spectrum& spectrum, std::span<const double> temperatures) {
  std::vector<ThermoPoint> out;
  out.reserve(temperatures.size());
  for (double t : temperatures) out.push_back(partition_function(spectrum, t));
  return out;
}

/// Variables carrying a nonzero exponent somewhere in the state, in canonical order.
inline std::vector<VariableId> active_variables(const PolynomialState& state) {
  std::vector<VariableId> vars;
  for (const auto& [m, a] : state.amplitudes())
    for (const auto& [v, e] : m.entries()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

/// Q(z) = pi^{-d} exp(-|z|^2) |psi(z)|^2 at each point, with point[k] the
/// coordinate of variables[k].
inline std::vector<double> husimi_q(const PolynomialState& state, std::span<const VariableId> variables,
                                    std::span<const std::vector<std::complex<double>>> points) {
  if (std::abs(state.norm_sq() - 1.0) > 1e-10) throw NotNormalized("husimi_q: state norm differs from 1");
  for (const auto& v : active_variables(state))
    if (std::find(variables.begin(), variables.end(), v) == variables.end())
      throw std::invalid_argument("husimi_q: state uses variable " + to_string(v) + " with no coordinate");

  // amplitude / sqrt(prod n!) turns normalized coefficients into polynomial coefficients
  std::vector<std::pair<const MultiIndex*, std::complex<double>>> poly;
  for (const auto& [m, a] : state.amplitudes())
    poly.emplace_back(&m, a / std::sqrt(monomial_norm_sq(m).convert_to<double>()));

  const double d = static_cast<double>(variables.size());
  const double prefactor = std::pow(std::numbers::pi, -d);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& point : points) {
    if (point.size() != variables.size())
      throw std::invalid_argument("husimi_q: point dimension does not match variable count");
    double r2 = 0;
    for (const auto& c : point) r2 += std::norm(c);
    std::complex<double> psi = 0;
    for (const auto& [m, coeff] : poly) {
      std::complex<double> term = coeff;
      for (const auto& [v, e] : m->entries()) {
        auto k = static_cast<std::size_t>(std::find(variables.begin(), variables.end(), v) - variables.begin());
        for (std::uint32_t n = 0; n < e; ++n) term *= point[k];
      }
      psi += term;
    }
    out.push_back(prefactor * std::exp(-r2) * std::norm(psi));
  }
  return out;
}

inline std::vector<double> husimi_q(const PolynomialState& state,
                                    std::span<const std::vector<std::complex<double>>> points) {
  const auto vars = active_variables(state);
  return husimi_q(state, vars, points);
}

}  // namespace bargmann
