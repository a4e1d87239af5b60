#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process through run().

#include "bargmann/bargmann.hpp"
#include "bargmann/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bargmann::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kDimensionTooLarge = 3,
  kSectorViolation = 4,
  kNotHermitian = 5,
  kNotNormalized = 6,
  kIoError = 7,
};

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec_path;
  std::string out_path;
  std::string format;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  std::string mode;
  std::string boundary;
  // thermo
  std::string temps;
  std::string grid;
  // verify
  double inject_fault = 0.0;
  bool random_couplings = false;
  // apply / husimi
  std::string operator_text;
  std::string state_path;
  std::string hbar;
  bool expectation = false;
  std::string points_path;
  std::string vars;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fraction_half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

inline ChainSpec load_spec(const Options& o) {
  if (o.spec_path.empty()) throw io::FormatError("--spec is required");
  ChainSpec spec = io::parse_chain_spec(read_file(o.spec_path));
  if (!o.mode.empty()) spec.mode = io::parse_mode(o.mode);
  if (!o.boundary.empty()) spec.boundary = io::parse_boundary(o.boundary);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw io::FormatError(e.what());
  }
  return spec;
}

inline Rational load_hbar(const Options& o) {
  if (o.hbar.empty()) return 1;
  try {
    Rational h = rational_from_decimal(o.hbar);
    if (h <= 0) throw io::FormatError("--hbar must be positive");
    return h;
  } catch (const std::invalid_argument& e) {
    throw io::FormatError(std::string("--hbar: ") + e.what());
  }
}

inline double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw io::FormatError(std::string("bad ") + what + ": '" + s + "'");
  }
}

/// --temps "0.5,1,2" or --grid "tmin:tmax:n" (log-spaced, inclusive).
inline std::vector<double> temperature_grid(const Options& o) {
  std::vector<double> grid;
  if (!o.temps.empty()) {
    std::stringstream ss(o.temps);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(parse_double(item, "temperature"));
  }
  if (!o.grid.empty()) {
    std::stringstream ss(o.grid);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw io::FormatError("--grid expects tmin:tmax:n");
    const double lo = parse_double(a, "tmin"), hi = parse_double(b, "tmax");
    const double n = parse_double(c, "n");
    if (!(lo > 0) || !(hi > 0)) throw io::FormatError("temperatures must be positive");
    if (n < 1 || n != std::floor(n) || n > 1e6) throw io::FormatError("--grid point count must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < count; ++k) {
      const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
      grid.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
    }
  }
  for (double t : grid)
    if (!(t > 0) || !std::isfinite(t)) throw io::FormatError("temperatures must be positive and finite");
  return grid;
}

inline int cmd_basis(const Options& o, std::ostream& out) {
  const ChainSpec spec = load_spec(o);
  check_dimension(spec);
  const SectorBasis basis = sector_basis(spec);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& m = basis.states[k];
    out << k << '\t' << to_string(m) << '\t';
    for (std::uint32_t i = 0; i < spec.n_sites; ++i) {
      const JmLabel l = jm_label(static_cast<int>(m.get(z_var(i))), static_cast<int>(m.get(w_var(i))));
      out << (i ? " " : "") << "(j=" << fraction_half(l.twice_j) << ",m=" << fraction_half(l.twice_m) << ")";
    }
    out << '\n';
  }
  return kOk;
}

inline Spectrum bargmann_spectrum(const ChainSpec& spec) {
  check_dimension(spec);
  const OperatorPolynomial h = build_hamiltonian(spec);
  return eigensolve(assemble_matrix(h, sector_basis(spec)));
}

inline int cmd_diag(const Options& o, std::ostream& out) {
  const ChainSpec spec = load_spec(o);
  const Spectrum s = bargmann_spectrum(spec);
  if (o.format == "csv") {
    out << "index,eigenvalue\n";
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) out << k << ',' << io::format_number(s.eigenvalues[k], 17) << '\n';
  } else {
    io::write_spectrum(out, s);
  }
  return kOk;
}

inline int cmd_thermo(const Options& o, std::ostream& out) {
  const ChainSpec spec = load_spec(o);
  const std::vector<double> grid = temperature_grid(o);
  const Spectrum s = bargmann_spectrum(spec);
  const auto points = thermo_sweep(s, grid);
  if (o.format == "json") {
    out << "{\"points\": [";
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& p = points[k];
      out << (k ? ", " : "") << "{\"T\": " << io::format_number(p.temperature, 17)
          << ", \"Z\": " << io::format_number(p.partition, 17) << ", \"F\": " << io::format_number(p.free_energy, 17)
          << ", \"S\": " << io::format_number(p.entropy, 17) << ", \"E_mean\": " << io::format_number(p.mean_energy, 17)
          << "}";
    }
    out << "]}\n";
  } else {
    io::write_thermo_csv(out, points);
  }
  return kOk;
}

inline std::string json_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

inline void write_differences(std::ostream& out, const std::vector<TermDifference>& diffs) {
  out << "[";
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    OperatorPolynomial single;
    single.add(diffs[k].key, Coefficient(1));
    out << (k ? ", " : "") << "{\"term\": \"" << json_escape(dsl::format(single)) << "\", \"literal\": \""
        << to_string(diffs[k].lhs) << "\", \"compositional\": \"" << to_string(diffs[k].rhs) << "\"}";
  }
  out << "]";
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  ChainSpec spec = load_spec(o);
  if (o.random_couplings) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    spec.jx = dist(rng);
    spec.jy = dist(rng);
    spec.jz = dist(rng);
  }
  check_dimension(spec);
  const bool literal = spec.mode == HamiltonianMode::PaperLiteral;

  ChainSpec compositional = spec;
  compositional.mode = HamiltonianMode::Compositional;
  const Spectrum bargmann = bargmann_spectrum(compositional);

  ChainSpec oracle_spec = spec;
  oracle_spec.jz += o.inject_fault;
  const Spectrum reference = eigensolve(oracle::oracle_hamiltonian(oracle_spec));
  const auto cmp = oracle::compare_spectra(bargmann, reference, o.tol);

  out << "{\"n_sites\": " << spec.n_sites << ", \"spin\": \"" << fraction_half(spec.twice_spin)
      << "\", \"jx\": " << io::format_number(spec.jx, 17) << ", \"jy\": " << io::format_number(spec.jy, 17)
      << ", \"jz\": " << io::format_number(spec.jz, 17) << ", \"boundary\": \""
      << (spec.boundary == Boundary::Open ? "open" : "periodic") << "\", \"dimension\": " << bargmann.eigenvalues.size()
      << ", \"tolerance\": " << io::format_number(o.tol, 17) << ", \"max_diff\": " << io::format_number(cmp.max_diff, 17)
      << ", \"pass\": " << (cmp.pass ? "true" : "false") << ", \"worst\": [";
  for (std::size_t k = 0; k < cmp.worst.size(); ++k) {
    const auto& w = cmp.worst[k];
    out << (k ? ", " : "") << "{\"index\": " << w.index << ", \"bargmann\": " << io::format_number(w.lhs, 17)
        << ", \"oracle\": " << io::format_number(w.rhs, 17) << ", \"diff\": " << io::format_number(w.diff, 17) << "}";
  }
  out << "]";

  if (literal) {
    const PaperLiteralReport report = paper_literal_report(spec);
    const Spectrum literal_spectrum = eigensolve(assemble_matrix(paper_literal_hamiltonian(spec), sector_basis(spec)));
    const auto literal_cmp = oracle::compare_spectra(literal_spectrum, reference, o.tol);
    out << ", \"paper_literal\": {\"xyz_differences\": ";
    write_differences(out, report.xyz_differences);
    out << ", \"xyz_max_diff_vs_oracle\": " << io::format_number(literal_cmp.max_diff, 17)
        << ", \"isotropic\": " << (report.isotropic ? "true" : "false");
    if (report.isotropic) {
      out << ", \"xxx_differences\": ";
      write_differences(out, report.xxx_differences);
      out << ", \"xxx_hermitian\": " << (report.xxx_hermitian ? "true" : "false");
    }
    out << "}";
  }
  out << "}\n";
  return cmp.pass ? kOk : kVerifyFailed;
}

inline int cmd_apply(const Options& o, std::ostream& out) {
  if (o.state_path.empty()) throw io::FormatError("--state is required");
  const OperatorPolynomial op = dsl::parse(o.operator_text, {load_hbar(o)});
  const PolynomialState state = io::parse_state(read_file(o.state_path));
  const PolynomialState image = apply(op, state);
  if (!o.expectation) {
    io::write_state(out, image);
    out << '\n';
    return kOk;
  }
  if (std::abs(state.norm_sq() - 1.0) > 1e-10) throw NotNormalized("expectation needs a normalized state");
  const Amplitude ev = inner_product(state, image);
  io::write_state(out, image, ev);
  out << '\n';
  return kOk;
}

inline std::vector<VariableId> parse_vars(const std::string& text) {
  std::vector<VariableId> vars;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const OperatorPolynomial op = dsl::parse(item);
    if (op.size() != 1) throw io::FormatError("--vars entries must be single variables");
    const auto& [key, c] = *op.terms().begin();
    if (!key.second.empty() || key.first.entries().size() != 1 || key.first.entries()[0].second != 1)
      throw io::FormatError("--vars entries must be single variables like z[0]");
    vars.push_back(key.first.entries()[0].first);
  }
  return vars;
}

/// Points file: [[[re, im], ...], ...], one [re, im] pair per variable.
inline std::vector<std::vector<std::complex<double>>> parse_points(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io::FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw io::FormatError("points must be a JSON array");
  std::vector<std::vector<std::complex<double>>> points;
  for (const auto& p : j) {
    if (!p.is_array()) throw io::FormatError("each point must be an array of [re, im] pairs");
    std::vector<std::complex<double>> coords;
    for (const auto& c : p) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw io::FormatError("each coordinate must be [re, im]");
      coords.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    points.push_back(std::move(coords));
  }
  return points;
}

inline int cmd_husimi(const Options& o, std::ostream& out) {
  if (o.state_path.empty() || o.points_path.empty()) throw io::FormatError("--state and --points are required");
  const PolynomialState state = io::parse_state(read_file(o.state_path));
  const auto points = parse_points(read_file(o.points_path));
  const std::vector<VariableId> vars = o.vars.empty() ? active_variables(state) : parse_vars(o.vars);
  std::vector<double> q;
  try {
    q = husimi_q(state, vars, points);
  } catch (const std::invalid_argument& e) {
    throw io::FormatError(e.what());
  }
  if (o.format == "csv") {
    out << "point,Q\n";
    for (std::size_t k = 0; k < q.size(); ++k) out << k << ',' << io::format_number(q[k], 12) << '\n';
  } else {
    out << "{\"variables\": [";
    for (std::size_t k = 0; k < vars.size(); ++k) out << (k ? ", " : "") << '"' << to_string(vars[k]) << '"';
    out << "], \"q\": [";
    for (std::size_t k = 0; k < q.size(); ++k) out << (k ? ", " : "") << io::format_number(q[k], 17);
    out << "]}\n";
  }
  return kOk;
}

/// Runs one subcommand. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holomorphic (Bargmann) spin-chain toolkit. Temperatures are in energy units (k_B = 1)."};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", o.tol, "Spectrum comparison tolerance");
    sub->add_option("--seed", o.seed, "Seed for randomized verification (default 20240229)");
    sub->add_option("--mode", o.mode, "Override the spec's Hamiltonian mode")
        ->check(CLI::IsMember({"compositional", "paper_literal"}));
    sub->add_option("--boundary", o.boundary, "Override the spec's boundary")->check(CLI::IsMember({"open", "periodic"}));
  };

  auto* basis = app.add_subcommand("basis", "List the ordered sector basis with per-site (j, m)");
  auto* diag = app.add_subcommand("diag", "Assemble and diagonalize the chain Hamiltonian");
  auto* thermo = app.add_subcommand("thermo", "Partition function, free energy, entropy over a temperature grid");
  auto* verify = app.add_subcommand("verify", "Cross-check the Bargmann spectrum against the tensor-product oracle");
  auto* apply_cmd = app.add_subcommand("apply", "Apply an operator expression to a state");
  auto* husimi = app.add_subcommand("husimi", "Evaluate the Husimi Q density of a state");

  for (auto* sub : {basis, diag, thermo, verify, apply_cmd, husimi}) common(sub);
  for (auto* sub : {basis, diag, thermo, verify}) sub->add_option("--spec", o.spec_path, "Chain spec JSON file");
  thermo->add_option("--temps", o.temps, "Comma-separated temperatures");
  thermo->add_option("--grid", o.grid, "Log-spaced grid tmin:tmax:n");
  verify->add_option("--inject-fault", o.inject_fault, "Add this offset to the oracle's J_z (self-test aid)");
  verify->add_flag("--random-couplings", o.random_couplings, "Draw J_x, J_y, J_z uniformly from [-1, 1] using --seed");
  apply_cmd->add_option("--operator", o.operator_text, "Operator expression")->required();
  apply_cmd->add_option("--hbar", o.hbar, "Value substituted for 'hbar' (default 1)");
  apply_cmd->add_flag("--expectation", o.expectation, "Also print <s|A|s>");
  for (auto* sub : {apply_cmd, husimi}) sub->add_option("--state", o.state_path, "State JSON file");
  husimi->add_option("--points", o.points_path, "Points JSON file");
  husimi->add_option("--vars", o.vars, "Comma-separated variables, e.g. z[0],w[0]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (*basis) code = cmd_basis(o, buffer);
    else if (*diag) code = cmd_diag(o, buffer);
    else if (*thermo) code = cmd_thermo(o, buffer);
    else if (*verify) code = cmd_verify(o, buffer);
    else if (*apply_cmd) code = cmd_apply(o, buffer);
    else if (*husimi) code = cmd_husimi(o, buffer);
  } catch (const dsl::ParseError& e) {
    err << "parse error: " << e.what() << " at bytes " << e.span().start << ".." << e.span().end << '\n';
    if (!o.operator_text.empty() && e.span().start <= o.operator_text.size()) {
      err << "  " << o.operator_text << "\n  " << std::string(e.span().start, ' ')
          << std::string(std::max<std::size_t>(1, e.span().end - e.span().start), '^') << '\n';
    }
    err << "  expected one of:";
    for (const auto& x : e.expected()) err << ' ' << x;
    err << '\n';
    return kBadInput;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DimensionTooLarge& e) {
    err << "error: " << e.what() << " (set BARGMANN_MAX_DIM to raise it)\n";
    return kDimensionTooLarge;
  } catch (const SectorViolation& e) {
    err << "error: sector violation: " << e.what() << '\n';
    return kSectorViolation;
  } catch (const NotHermitian& e) {
    err << "error: " << e.what() << '\n';
    return kNotHermitian;
  } catch (const NotNormalized& e) {
    err << "error: " << e.what() << '\n';
    return kNotNormalized;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << "error: cannot write " << o.out_path << '\n';
      return kIoError;
    }
  }
  return code;
}

}  // namespace bargmann::cli
