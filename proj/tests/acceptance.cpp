// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Tolerances and runtime limits are fixed below.

#include "bargmann/bargmann.hpp"
#include "cli.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace bargmann;

namespace {

constexpr double kMatrixElementTol = 1e-12;
constexpr double kOscillatorTol = 1e-12;
constexpr double kSpectrumTol = 1e-9;
constexpr double kEntryTol = 1e-10;
constexpr double kHighTempRelTol = 1e-6;
constexpr double kShiftTol = 1e-10;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kHusimiOriginTol = 1e-12;
constexpr int kRandomSeeds = 20;
constexpr int kRoundTrips = 1000;
constexpr int kFuzzInputs = 10000;
constexpr int kMonteCarloSamples = 100000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> body;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

ChainSpec chain(std::uint32_t n, int twice_s, double jx, double jy, double jz, Boundary b) {
  ChainSpec s;
  s.n_sites = n;
  s.twice_spin = twice_s;
  s.jx = jx;
  s.jy = jy;
  s.jz = jz;
  s.boundary = b;
  return s;
}

Outcome operator_identities() {
  Outcome o;
  for (const Rational hbar : {Rational(1), Rational(3, 2)}) {
    const Coefficient i_hbar(0, hbar);
    for (std::uint32_t n = 1; n <= 4; ++n) {
      std::vector<std::uint32_t> sites(n);
      std::iota(sites.begin(), sites.end(), 0u);
      const auto x = total_operator(AngularKind::X, sites, hbar);
      const auto y = total_operator(AngularKind::Y, sites, hbar);
      const auto z = total_operator(AngularKind::Z, sites, hbar);
      const auto sq = total_operator(AngularKind::Squared, sites, hbar);
      if (!(commutator(x, y) == z * i_hbar)) o.fail("[Jx,Jy] != i hbar Jz at N=" + std::to_string(n));
      if (!(commutator(y, z) == x * i_hbar)) o.fail("[Jy,Jz] != i hbar Jx at N=" + std::to_string(n));
      if (!(commutator(z, x) == y * i_hbar)) o.fail("[Jz,Jx] != i hbar Jy at N=" + std::to_string(n));
      for (const auto* j : {&x, &y, &z})
        if (!commutator(*j, sq).is_zero()) o.fail("[J_a, J^2] != 0 at N=" + std::to_string(n));
    }
    // single site other than 0
    const auto sq = j_operator(5, AngularKind::Squared, hbar);
    for (auto k : {AngularKind::X, AngularKind::Y, AngularKind::Z})
      if (!commutator(j_operator(5, k, hbar), sq).is_zero()) o.fail("single-site Casimir does not commute");
  }
  if (o.pass) o.detail = "exact for N = 1..4, hbar in {1, 3/2}";
  return o;
}

Outcome matrix_element_forms() {
  Outcome o;
  double worst = 0;
  auto check = [&](std::complex<double> got, std::complex<double> want) { worst = std::max(worst, std::abs(got - want)); };
  for (const Rational hbar : {Rational(1), Rational(2, 3)}) {
    const double h = to_double(hbar);
    const auto j1 = j_operator(0, AngularKind::X, hbar);
    const auto j2 = j_operator(0, AngularKind::Y, hbar);
    const auto j3 = j_operator(0, AngularKind::Z, hbar);
    const auto jp = j_operator(0, AngularKind::Plus, hbar);
    const auto jm = j_operator(0, AngularKind::Minus, hbar);
    const auto sq = j_operator(0, AngularKind::Squared, hbar);
    for (std::uint32_t a = 0; a <= 8; ++a)
      for (std::uint32_t b = 0; b <= 8; ++b) {
        const auto ket = site_monomial(0, a, b);
        const double j = (a + b) / 2.0;
        check(matrix_element(ket, j3, ket), h * (double(a) - double(b)) / 2);
        check(matrix_element(ket, sq, ket), h * h * j * (j + 1));
        const double up = std::sqrt(double((a + 1) * b));
        const double down = std::sqrt(double(a * (b + 1)));
        const auto raised = b > 0 ? site_monomial(0, a + 1, b - 1) : MultiIndex{{z_var(9), 1}};
        const auto lowered = a > 0 ? site_monomial(0, a - 1, b + 1) : MultiIndex{{z_var(9), 1}};
        check(matrix_element(raised, jp, ket), h * up);
        check(matrix_element(lowered, jm, ket), h * down);
        check(matrix_element(raised, j1, ket), h / 2 * up);
        check(matrix_element(lowered, j1, ket), h / 2 * down);
        check(matrix_element(raised, j2, ket), std::complex<double>(0, -h / 2 * up));
        check(matrix_element(lowered, j2, ket), std::complex<double>(0, h / 2 * down));
      }
  }
  if (worst > kMatrixElementTol) o.fail("max deviation " + fmt(worst));
  else o.detail = "max deviation " + fmt(worst) + " over 0 <= alpha, beta <= 8";
  return o;
}

Outcome oscillator_spectrum() {
  Outcome o;
  const OscillatorSpec spec(Rational(1));
  const auto h = hamiltonian(spec);
  double worst = 0;
  for (std::uint32_t n = 0; n <= 20; ++n) {
    const MultiIndex m{{z_var(0), n}};
    const auto image = apply(h, PolynomialState::basis(m));
    if (image.size() != 1) o.fail("z^" + std::to_string(n) + " is not mapped to itself");
    worst = std::max(worst, std::abs(image.amplitude(m) - (n + 0.5)));
  }
  const MultiIndex z{{z_var(0), 1}};
  const auto xi = apply(h, PolynomialState::basis(z, -1.0));
  worst = std::max(worst, std::abs(xi.amplitude(z) - 1.5 * -1.0));
  if (worst > kOscillatorTol) o.fail("eigenvalue deviation " + fmt(worst));

  const std::pair<SeriesKind, std::uint32_t> cases[] = {{SeriesKind::Exp, 2}, {SeriesKind::Sinh, 3}, {SeriesKind::Cosh, 2}};
  const Rational published[] = {Rational(1, 2) + Rational(3, 2) + Rational(5, 2), Rational(3, 2) + Rational(7, 2),
                                Rational(1, 2) + Rational(5, 2)};
  for (std::size_t k = 0; k < 3; ++k) {
    const Rational got = per_term_eigenvalue_sum(cases[k].first, cases[k].second, spec);
    if (got != published[k]) o.fail("series sum " + to_string(got) + " != " + to_string(published[k]));
  }
  if (o.pass) o.detail = "n <= 20 deviation " + fmt(worst) + "; sums 9/2, 5, 3 exact";
  return o;
}

Outcome jm_labeling() {
  Outcome o;
  const auto states = multiplet_states(2);
  const std::vector<MultiIndex> expected{site_monomial(0, 2, 0), site_monomial(0, 1, 1), site_monomial(0, 0, 2)};
  if (states != expected) o.fail("j=1 multiplet is not {z^2, zw, w^2}");
  const int twice_m[] = {2, 0, -2};
  const BigInt norms[] = {2, 1, 2};  // z^2/sqrt(2), zw, w^2/sqrt(2)
  for (std::size_t k = 0; k < states.size() && k < 3; ++k) {
    const auto label = jm_label(int(states[k].get(z_var(0))), int(states[k].get(w_var(0))));
    if (label.twice_j != 2 || label.twice_m != twice_m[k]) o.fail("wrong (j, m) label");
    if (monomial_norm_sq(states[k]) != norms[k]) o.fail("wrong normalization");
    const auto m3 = matrix_element(states[k], j_operator(0, AngularKind::Z), states[k]);
    if (std::abs(m3 - label.m()) > 1e-15) o.fail("J3 eigenvalue differs from label");
  }
  if (o.pass) o.detail = "{z^2/sqrt2, zw, w^2/sqrt2} with m = {1, 0, -1}";
  return o;
}

Spectrum bargmann_spectrum(const ChainSpec& spec) {
  return eigensolve(assemble_matrix(compositional_hamiltonian(spec), sector_basis(spec)));
}

Outcome spectrum_equivalence() {
  Outcome o;
  double worst = 0;
  int cases = 0;
  auto compare = [&](const ChainSpec& spec) {
    const auto cmp = oracle::compare_spectra(bargmann_spectrum(spec), eigensolve(oracle::oracle_hamiltonian(spec)),
                                             kSpectrumTol);
    worst = std::max(worst, cmp.max_diff);
    ++cases;
    if (!cmp.pass)
      o.fail("N=" + std::to_string(spec.n_sites) + " 2s=" + std::to_string(spec.twice_spin) + " max diff " +
             fmt(cmp.max_diff));
  };

  const auto anchor = bargmann_spectrum(chain(2, 1, 1, 1, 1, Boundary::Open));
  const double expected[] = {-0.75, 0.25, 0.25, 0.25};
  for (std::size_t k = 0; k < 4; ++k)
    if (std::abs(anchor.eigenvalues[k] - expected[k]) > kSpectrumTol) o.fail("anchor spectrum wrong");

  for (auto boundary : {Boundary::Open, Boundary::Periodic})
    for (const auto& [twice_s, max_n] : {std::pair{1, 8u}, std::pair{2, 4u}})
      for (std::uint32_t n = 2; n <= max_n; ++n) {
        compare(chain(n, twice_s, 1, 1, 1, boundary));
        for (int seed = 0; seed < kRandomSeeds; ++seed) {
          std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * n + 10 * twice_s + seed));
          std::uniform_real_distribution<double> coupling(-1.0, 1.0);
          const double jx = coupling(rng), jy = coupling(rng), jz = coupling(rng);
          compare(chain(n, twice_s, jx, jy, jz, boundary));
        }
      }
  if (o.pass) o.detail = std::to_string(cases) + " chains, max diff " + fmt(worst);
  return o;
}

Outcome entrywise_agreement() {
  Outcome o;
  double worst = 0;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coupling(-1.0, 1.0);
  for (int twice_s : {1, 2})
    for (auto boundary : {Boundary::Open, Boundary::Periodic})
      for (int trial = 0; trial < 5; ++trial) {
        const auto spec = trial == 0 ? chain(2, twice_s, 1, 1, 1, boundary)
                                     : chain(2, twice_s, coupling(rng), coupling(rng), coupling(rng), boundary);
        const auto basis = sector_basis(spec);
        const DenseMatrix b(assemble_matrix(compositional_hamiltonian(spec), basis));
        const DenseMatrix ref = oracle::oracle_hamiltonian(spec);
        std::vector<Eigen::Index> map;
        for (const auto& m : basis.states)
          map.push_back(static_cast<Eigen::Index>(oracle::basis_isomorphism(m, twice_s, spec.n_sites)));
        for (Eigen::Index r = 0; r < b.rows(); ++r)
          for (Eigen::Index c = 0; c < b.cols(); ++c)
            worst = std::max(worst, std::abs(b(r, c) - ref(map[std::size_t(r)], map[std::size_t(c)])));
      }
  if (worst > kEntryTol) o.fail("max entry deviation " + fmt(worst));
  else o.detail = "max entry deviation " + fmt(worst);
  return o;
}

Outcome thermodynamics() {
  Outcome o;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coupling(-1.0, 1.0);
  const ChainSpec specs[] = {chain(6, 1, 1, 1, 1, Boundary::Periodic),
                             chain(3, 2, coupling(rng), coupling(rng), coupling(rng), Boundary::Open),
                             chain(5, 1, 0.4, -0.9, 0.2, Boundary::Open)};
  double worst_high = 0, worst_shift = 0;
  for (const auto& spec : specs) {
    const DenseMatrix h(assemble_matrix(compositional_hamiltonian(spec), sector_basis(spec)));
    const double scale = max_abs_entry(h);
    const Spectrum s = eigensolve(h);
    const double ln_dim = std::log(double(s.eigenvalues.size()));

    const double s_high = partition_function(s, 1e6 * scale).entropy;
    worst_high = std::max(worst_high, std::abs(s_high - ln_dim) / ln_dim);

    std::vector<double> grid;
    for (int k = 0; k < 50; ++k) grid.push_back(scale * std::pow(10.0, -3.0 + 6.0 * k / 49.0));
    const auto sweep = thermo_sweep(s, grid);
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      if (sweep[k].entropy < 0) o.fail("negative entropy at T=" + fmt(grid[k]));
      if (k > 0 && sweep[k].entropy < sweep[k - 1].entropy - kMonotoneSlack)
        o.fail("entropy decreases at T=" + fmt(grid[k]));
    }

    const double shift = 7.5 * scale + 3.0;
    const Spectrum shifted = eigensolve(DenseMatrix(h + shift * DenseMatrix::Identity(h.rows(), h.cols())));
    for (double t : grid)
      worst_shift = std::max(worst_shift,
                             std::abs(partition_function(shifted, t).entropy - partition_function(s, t).entropy));
  }
  if (worst_high > kHighTempRelTol) o.fail("high-T entropy off by " + fmt(worst_high) + " relative");
  if (worst_shift > kShiftTol) o.fail("shift changes entropy by " + fmt(worst_shift));
  if (o.pass) o.detail = "high-T rel err " + fmt(worst_high) + ", shift err " + fmt(worst_shift);
  return o;
}

Outcome parser_properties() {
  Outcome o;
  std::mt19937_64 rng(31);
  for (int k = 0; k < kRoundTrips; ++k) {
    const auto op = testing_support::random_operator(rng, 4, 6, 5);
    try {
      if (!(dsl::parse(dsl::format(op)) == op)) o.fail("round trip changed " + dsl::format(op));
    } catch (const dsl::ParseError& e) {
      o.fail(std::string("formatted text failed to parse: ") + e.what());
    }
  }
  std::uniform_int_distribution<int> len(0, 256), byte(0, 255);
  int rejected = 0;
  for (int k = 0; k < kFuzzInputs; ++k) {
    std::string s(static_cast<std::size_t>(len(rng)), '\0');
    for (auto& c : s) c = static_cast<char>(byte(rng));
    try {
      dsl::parse(s);
    } catch (const dsl::ParseError& e) {
      ++rejected;
      if (e.span().end > s.size() || e.expected().empty()) o.fail("malformed ParseError");
    } catch (const std::exception& e) {
      o.fail(std::string("non-ParseError exception: ") + e.what());
    }
  }
  if (o.pass)
    o.detail = std::to_string(kRoundTrips) + " round trips, " + std::to_string(kFuzzInputs) + " fuzz inputs (" +
               std::to_string(rejected) + " rejected), no crashes";
  return o;
}

Outcome paper_literal_diagnostic() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "bargmann-acceptance";
  std::filesystem::create_directories(dir);
  const auto spec_path = (dir / "xxx2.json").string();
  std::ofstream(spec_path) << R"({"n_sites": 2, "spin": "1/2", "jx": 1, "jy": 1, "jz": 1, "mode": "paper_literal"})";
  std::ostringstream out, err;
  const int status = cli::run({"verify", "--spec", spec_path}, out, err);
  std::filesystem::remove_all(dir);
  if (status != cli::kOk) {
    o.fail("verify exited " + std::to_string(status) + ": " + err.str());
    return o;
  }
  const auto j = nlohmann::json::parse(out.str(), nullptr, false);
  if (j.is_discarded() || !j.contains("paper_literal")) {
    o.fail("no paper_literal report");
    return o;
  }
  const auto& p = j["paper_literal"];
  if (!p.contains("xyz_differences") || !p["xyz_differences"].is_array() || !p.contains("xxx_differences"))
    o.fail("report lacks term-difference lists");
  if (!j["pass"].get<bool>()) o.fail("compositional path failed in the same run");
  if (o.pass)
    o.detail = "report generated: " + std::to_string(p["xyz_differences"].size()) + " XYZ and " +
               std::to_string(p["xxx_differences"].size()) + " XXX term differences, xxx_hermitian=" +
               (p["xxx_hermitian"].get<bool>() ? "true" : "false") + "; compositional pass";
  return o;
}

Outcome husimi() {
  Outcome o;
  const std::vector<VariableId> z{z_var(0)};
  const std::vector<std::vector<std::complex<double>>> origin{{{0.0, 0.0}}};
  const double q0 = husimi_q(PolynomialState::basis({}), z, origin)[0];
  if (std::abs(q0 - 1 / std::numbers::pi) > kHusimiOriginTol) o.fail("Q(0) for the vacuum is " + fmt(q0));

  // Importance sampling from a complex Gaussian of variance 2, wider than any
  // degree <= 4 density so the weights have finite variance.
  std::mt19937_64 rng(41);
  constexpr double kVar = 2.0;
  std::normal_distribution<double> g(0.0, std::sqrt(kVar / 2));
  std::normal_distribution<double> amp;
  double worst_sigmas = 0;
  for (int trial = 0; trial < 6; ++trial) {
    PolynomialState psi;
    const std::uint32_t degree = static_cast<std::uint32_t>(trial % 5);
    for (std::uint32_t n = 0; n <= degree; ++n) psi.add({{z_var(0), n}}, {amp(rng), amp(rng)});
    psi *= 1.0 / std::sqrt(psi.norm_sq());

    std::vector<std::vector<std::complex<double>>> points(kMonteCarloSamples);
    std::vector<double> density(kMonteCarloSamples);
    for (int k = 0; k < kMonteCarloSamples; ++k) {
      const std::complex<double> x{g(rng), g(rng)};
      points[k] = {x};
      density[k] = std::exp(-std::norm(x) / kVar) / (std::numbers::pi * kVar);
    }
    const auto q = husimi_q(psi, z, points);
    double sum = 0, sum_sq = 0;
    for (int k = 0; k < kMonteCarloSamples; ++k) {
      if (q[k] < 0) o.fail("negative Q");
      const double w = q[k] / density[k];
      sum += w;
      sum_sq += w * w;
    }
    const double mean = sum / kMonteCarloSamples;
    const double sigma = std::sqrt((sum_sq / kMonteCarloSamples - mean * mean) / kMonteCarloSamples);
    const double sigmas = std::abs(mean - 1.0) / sigma;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    if (sigmas > 3.0) o.fail("degree " + std::to_string(degree) + " normalization off by " + fmt(sigmas) + " sigma");
  }
  if (o.pass) o.detail = "Q(0) = 1/pi, Q >= 0, worst MC deviation " + fmt(worst_sigmas) + " sigma";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact commutation relations", 5.0, operator_identities},
      {2, "angular momentum matrix elements", 5.0, matrix_element_forms},
      {3, "oscillator spectrum and series sums", 0.0, oscillator_spectrum},
      {4, "(j, m) labels of the j = 1 multiplet", 0.0, jm_labeling},
      {5, "spectra match the Kronecker-product oracle", 60.0, spectrum_equivalence},
      {6, "matrices match entry by entry", 0.0, entrywise_agreement},
      {7, "thermodynamic limits and shift invariance", 0.0, thermodynamics},
      {8, "parser round trip and fuzzing", 0.0, parser_properties},
      {9, "transcribed chain operator diagnostic", 0.0, paper_literal_diagnostic},
      {10, "Husimi density", 0.0, husimi},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s)
      outcome.fail("took " + fmt(seconds) + " s, limit " + fmt(c.time_limit_s) + " s");
    if (!outcome.pass) ++failures;
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", c.number, outcome.pass ? "PASS" : "FAIL", c.title.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
