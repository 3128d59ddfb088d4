#pragma once

#include <string>
#include <vector>

#include "order.hpp"

namespace iosa::builtin {

inline FinLattice chain(std::size_t n) {
  if (n < 1) throw InputError("chain needs at least one element");
  std::vector<std::string> labels;
  if (n == 1) {
    labels = {"0"};
  } else if (n == 3) {
    labels = {"0", "m", "1"};
  } else {
    labels.push_back("0");
    for (std::size_t i = 1; i + 1 < n; ++i) labels.push_back("m" + std::to_string(i));
    labels.push_back("1");
  }
  Matrix m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) m[a][b] = true;
  return to_lattice(validate_poset(m, labels));
}

// Powerset of k atoms; element index = subset bitmask.
inline FinLattice boolean_algebra(std::size_t atoms) {
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::string> labels(n);
  if (atoms == 2) {
    labels = {"0", "a", "a'", "1"};
  } else {
    static const char* names = "xyzwuv";
    for (std::size_t s = 0; s < n; ++s) {
      if (s == 0) {
        labels[s] = "0";
      } else if (s == n - 1) {
        labels[s] = "1";
      } else {
        std::string l;
        for (std::size_t i = 0; i < atoms; ++i)
          if ((s >> i) & 1U) l += (l.empty() ? "" : "|") + std::string(1, names[i]);
        labels[s] = l;
      }
    }
  }
  Matrix m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = (a & ~b) == 0;
  return to_lattice(validate_poset(m, labels));
}

inline FinLattice b4() { return boolean_algebra(2); }
inline FinLattice b8() { return boolean_algebra(3); }

// Bounded free distributive lattice on generators x, y.
inline FinLattice free_distributive_lattice2() {
  return to_lattice(poset_from_hasse(6, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}},
                                     {"0", "x&y", "x", "y", "x|y", "1"}));
}

// B4 with a new top adjoined above a|a'.
inline FinLattice b4_plus_top() {
  return to_lattice(
      poset_from_hasse(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}, {"0", "a", "a'", "a|a'", "1"}));
}

inline FinLattice pentagon() {
  return to_lattice(poset_from_hasse(5, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}}, {"0", "p", "q", "r", "1"}));
}

inline FinLattice diamond_m3() {
  return to_lattice(
      poset_from_hasse(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, {"0", "p", "q", "r", "1"}));
}

inline FinPoset antichain(std::size_t n) {
  Matrix m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) m[a][a] = true;
  std::vector<std::string> labels;
  if (n == 2) labels = {"x", "y"};
  return validate_poset(m, labels);
}

// z below x and y.
inline FinPoset vee() { return poset_from_hasse(3, {{0, 1}, {0, 2}}, {"z", "x", "y"}); }

// x and y below t.
inline FinPoset wedge() { return poset_from_hasse(3, {{0, 2}, {1, 2}}, {"x", "y", "t"}); }

inline std::vector<std::string> names() {
  return {"chain2", "chain3", "chain4", "B4", "B8", "FDL2", "B4+top", "N5", "M3", "antichain2", "V", "Lambda"};
}

inline Carrier carrier(const std::string& name) {
  if (name == "chain2") return make_carrier(chain(2), name);
  if (name == "chain3") return make_carrier(chain(3), name);
  if (name == "chain4") return make_carrier(chain(4), name);
  if (name == "B2") return make_carrier(boolean_algebra(1), name);
  if (name == "B4") return make_carrier(b4(), name);
  if (name == "B8") return make_carrier(b8(), name);
  if (name == "FDL2") return make_carrier(free_distributive_lattice2(), name);
  if (name == "B4+top") return make_carrier(b4_plus_top(), name);
  if (name == "N5") return make_carrier(pentagon(), name);
  if (name == "M3") return make_carrier(diamond_m3(), name);
  if (name == "antichain2") return make_carrier(antichain(2), name);
  if (name == "V") return make_carrier(vee(), name);
  if (name == "Lambda") return make_carrier(wedge(), name);
  throw InputError("unknown built-in carrier: " + name);
}

}  // namespace iosa::builtin
