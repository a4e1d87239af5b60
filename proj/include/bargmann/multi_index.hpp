#pragma once

/// \file multi_index.hpp
/// Variables z_i, w_i of multi-site Bargmann space and sparse exponent maps over them.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace bargmann {

enum class Flavor : std::uint8_t { Z = 0, W = 1 };

/// One holomorphic coordinate: z_site or w_site. Ordered by (site, flavor), Z before W.
struct VariableId {
  std::uint32_t site = 0;
  Flavor flavor = Flavor::Z;

  friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

inline VariableId z_var(std::uint32_t site) { return {site, Flavor::Z}; }
inline VariableId w_var(std::uint32_t site) { return {site, Flavor::W}; }

inline std::string to_string(const VariableId& v) {
  return std::string(v.flavor == Flavor::Z ? "z" : "w") + "[" + std::to_string(v.site) + "]";
}

/// Sparse map VariableId -> exponent. Zero exponents are never stored, so two
/// indices are equal iff their entry vectors are equal.
class MultiIndex {
 public:
  using Entry = std::pair<VariableId, std::uint32_t>;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<Entry> entries) {
    for (const auto& [v, e] : entries) set(v, get(v) + e);
  }

  std::uint32_t get(VariableId v) const {
    auto it = find(v);
    return it != entries_.end() && it->first == v ? it->second : 0;
  }

  void set(VariableId v, std::uint32_t exponent) {
    auto it = find(v);
    bool present = it != entries_.end() && it->first == v;
    if (exponent == 0) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->second = exponent;
    } else {
      entries_.insert(it, {v, exponent});
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& e : entries_) d += e.second;
    return d;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (const auto& [v, e] : b.entries_) r.set(v, r.get(v) + e);
    return r;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Entry>::iterator find(VariableId v) {
    return std::lower_bound(entries_.begin(), entries_.end(), v,
                            [](const Entry& e, const VariableId& key) { return e.first < key; });
  }
  std::vector<Entry>::const_iterator find(VariableId v) const {
    return std::lower_bound(entries_.begin(), entries_.end(), v,
                            [](const Entry& e, const VariableId& key) { return e.first < key; });
  }

  std::vector<Entry> entries_;
};

/// Monomial z^alpha w^beta on one site.
inline MultiIndex site_monomial(std::uint32_t site, std::uint32_t alpha, std::uint32_t beta) {
  MultiIndex m;
  m.set(z_var(site), alpha);
  m.set(w_var(site), beta);
  return m;
}

inline std::string to_string(const MultiIndex& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : m.entries()) {
    if (!out.empty()) out += " * ";
    out += to_string(v);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace bargmann
