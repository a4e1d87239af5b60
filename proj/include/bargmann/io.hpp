#pragma once

/// \file io.hpp
/// File formats: chain specs and states (JSON in), spectra and states (JSON
/// out, 17 significant digits), thermodynamic sweeps (CSV, 12 significant digits).

#include "bargmann/chain_spec.hpp"
#include "bargmann/dsl.hpp"
#include "bargmann/spectra.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace bargmann::io {

/// Malformed input file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_number(double x, int significant) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, x);
  return buf;
}

/// "1/2", "1", "3/2", or a JSON number such as 0.5.
inline int parse_twice_spin(const nlohmann::json& j) {
  Rational s;
  try {
    if (j.is_string()) s = rational_from_decimal(j.get<std::string>());
    else if (j.is_number()) s = rational_from_double(j.get<double>());
    else throw FormatError("spin must be a string like \"1/2\" or a number");
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad spin: ") + e.what());
  }
  const Rational twice = 2 * s;
  if (boost::multiprecision::denominator(twice) != 1 || twice < 0 || twice > 64)
    throw FormatError("spin must be a non-negative half-integer no larger than 32");
  return static_cast<int>(boost::multiprecision::numerator(twice));
}

inline Rational parse_positive_rational(const nlohmann::json& j, const char* name) {
  Rational r;
  try {
    if (j.is_string()) r = rational_from_decimal(j.get<std::string>());
    else if (j.is_number()) r = rational_from_double(j.get<double>());
    else throw FormatError(std::string(name) + " must be a number");
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad ") + name + ": " + e.what());
  }
  if (r <= 0) throw FormatError(std::string(name) + " must be positive");
  return r;
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw FormatError("boundary must be \"open\" or \"periodic\"");
}

inline HamiltonianMode parse_mode(const std::string& s) {
  if (s == "compositional") return HamiltonianMode::Compositional;
  if (s == "paper_literal") return HamiltonianMode::PaperLiteral;
  throw FormatError("mode must be \"compositional\" or \"paper_literal\"");
}

/// {"n_sites": int, "spin": "1/2", "jx": f, "jy": f, "jz": f,
///  "boundary": "open"|"periodic", "hbar": f, "mode": "compositional"|"paper_literal"}
/// boundary, hbar and mode are optional.
inline ChainSpec parse_chain_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("chain spec must be a JSON object");
  static const std::set<std::string> known{"n_sites", "spin", "jx", "jy", "jz", "boundary", "hbar", "mode"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw FormatError("unknown chain spec key \"" + key + "\"");
  for (const char* required : {"n_sites", "spin", "jx", "jy", "jz"})
    if (!j.contains(required)) throw FormatError(std::string("missing chain spec key \"") + required + "\"");

  ChainSpec spec;
  if (!j["n_sites"].is_number_integer() || j["n_sites"].get<long long>() < 1 || j["n_sites"].get<long long>() > 64)
    throw FormatError("n_sites must be an integer in [1, 64]");
  spec.n_sites = static_cast<std::uint32_t>(j["n_sites"].get<long long>());
  spec.twice_spin = parse_twice_spin(j["spin"]);
  auto coupling = [&](const char* key) {
    if (!j[key].is_number()) throw FormatError(std::string(key) + " must be a number");
    return j[key].get<double>();
  };
  spec.jx = coupling("jx");
  spec.jy = coupling("jy");
  spec.jz = coupling("jz");
  try {
    if (j.contains("boundary")) spec.boundary = parse_boundary(j["boundary"].get<std::string>());
    if (j.contains("mode")) spec.mode = parse_mode(j["mode"].get<std::string>());
  } catch (const nlohmann::json::exception&) {
    throw FormatError("boundary and mode must be strings");
  }
  if (j.contains("hbar")) spec.hbar = parse_positive_rational(j["hbar"], "hbar");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return spec;
}

/// {"amplitudes": [{"monomial": "z[0]^2 * w[0]", "re": f, "im": f}, ...]}
/// Monomials use the operator syntax restricted to multiplications; "1" is the vacuum.
inline PolynomialState parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw FormatError("state must be an object with an \"amplitudes\" array");
  PolynomialState state;
  for (const auto& entry : j["amplitudes"]) {
    if (!entry.is_object() || !entry.contains("monomial") || !entry["monomial"].is_string())
      throw FormatError("each amplitude needs a \"monomial\" string");
    const auto op = dsl::parse(entry["monomial"].get<std::string>());
    if (op.size() != 1) throw FormatError("monomial must be a single product of variables");
    const auto& [key, coeff] = *op.terms().begin();
    if (!key.second.empty() || !(coeff == Coefficient(1)))
      throw FormatError("monomial may contain only z[i] and w[i] factors");
    double re = 0, im = 0;
    if (entry.contains("re")) {
      if (!entry["re"].is_number()) throw FormatError("\"re\" must be a number");
      re = entry["re"].get<double>();
    }
    if (entry.contains("im")) {
      if (!entry["im"].is_number()) throw FormatError("\"im\" must be a number");
      im = entry["im"].get<double>();
    }
    state.add(key.first, {re, im});
  }
  return state;
}

inline void write_state(std::ostream& os, const PolynomialState& state,
                        std::optional<Amplitude> expectation = std::nullopt) {
  os << "{\"amplitudes\": [";
  bool first = true;
  for (const auto& [m, a] : state.amplitudes()) {
    os << (first ? "" : ", ") << "{\"monomial\": \"" << to_string(m) << "\", \"re\": " << format_number(a.real(), 17)
       << ", \"im\": " << format_number(a.imag(), 17) << "}";
    first = false;
  }
  os << "]";
  if (expectation)
    os << ", \"expectation\": {\"re\": " << format_number(expectation->real(), 17)
       << ", \"im\": " << format_number(expectation->imag(), 17) << "}";
  os << "}";
}

inline void write_spectrum(std::ostream& os, const Spectrum& spectrum) {
  os << "{\"eigenvalues\": [";
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
    os << (k ? ", " : "") << format_number(spectrum.eigenvalues[k], 17);
  os << "], \"residual_bound\": " << format_number(spectrum.residual_bound, 17) << "}\n";
}

inline void write_thermo_csv(std::ostream& os, std::span<const ThermoPoint> points) {
  os << "T,Z,F,S,E_mean\n";
  for (const auto& p : points)
    os << format_number(p.temperature, 12) << ',' << format_number(p.partition, 12) << ','
       << format_number(p.free_energy, 12) << ',' << format_number(p.entropy, 12) << ','
       << format_number(p.mean_energy, 12) << '\n';
}

}  // namespace bargmann::io
