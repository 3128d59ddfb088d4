#pragma once

// Brute-force reference implementations used to derive expected values.
// They only read the order relation, never the library's derived structure.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <iosa/order.hpp>

namespace oracle {

using iosa::Elem;
using iosa::FinPoset;

using Set = std::vector<bool>;

inline std::vector<Set> all_subsets(std::size_t n) {
  std::vector<Set> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Set s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (m >> i) & 1U;
    out.push_back(s);
  }
  return out;
}

inline std::optional<Elem> lub(const FinPoset& p, const Set& s) {
  std::optional<Elem> best;
  for (Elem u = 0; u < p.size(); ++u) {
    bool upper = true;
    for (Elem a = 0; a < p.size(); ++a)
      if (s[a] && !p.leq(a, u)) upper = false;
    if (!upper) continue;
    if (!best || p.leq(u, *best)) best = u;
  }
  if (!best) return std::nullopt;
  for (Elem u = 0; u < p.size(); ++u) {
    bool upper = true;
    for (Elem a = 0; a < p.size(); ++a)
      if (s[a] && !p.leq(a, u)) upper = false;
    if (upper && !p.leq(*best, u)) return std::nullopt;
  }
  return best;
}

inline std::optional<Elem> glb(const FinPoset& p, const Set& s) {
  std::optional<Elem> best;
  for (Elem u = 0; u < p.size(); ++u) {
    bool lower = true;
    for (Elem a = 0; a < p.size(); ++a)
      if (s[a] && !p.leq(u, a)) lower = false;
    if (!lower) continue;
    if (!best || p.leq(*best, u)) best = u;
  }
  if (!best) return std::nullopt;
  for (Elem u = 0; u < p.size(); ++u) {
    bool lower = true;
    for (Elem a = 0; a < p.size(); ++a)
      if (s[a] && !p.leq(u, a)) lower = false;
    if (lower && !p.leq(u, *best)) return std::nullopt;
  }
  return best;
}

inline Elem join(const FinPoset& p, Elem a, Elem b) {
  Set s(p.size());
  s[a] = s[b] = true;
  return *lub(p, s);
}

inline Elem meet(const FinPoset& p, Elem a, Elem b) {
  Set s(p.size());
  s[a] = s[b] = true;
  return *glb(p, s);
}

// j is join-irreducible iff it is not the least element and is not the
// join of any two elements strictly below it.
inline std::set<Elem> join_irreducibles(const FinPoset& p) {
  std::set<Elem> out;
  Set empty(p.size());
  Elem bot = *lub(p, empty);
  for (Elem j = 0; j < p.size(); ++j) {
    if (j == bot) continue;
    bool irr = true;
    for (Elem a = 0; a < p.size(); ++a)
      for (Elem b = 0; b < p.size(); ++b)
        if (p.lt(a, j) && p.lt(b, j) && join(p, a, b) == j) irr = false;
    if (irr) out.insert(j);
  }
  return out;
}

inline std::set<Set> prime_filters(const FinPoset& p) {
  std::set<Set> out;
  const std::size_t n = p.size();
  for (const Set& s : all_subsets(n)) {
    bool nonempty = false, proper = false, ok = true;
    for (Elem a = 0; a < n; ++a) {
      nonempty = nonempty || s[a];
      proper = proper || !s[a];
    }
    if (!nonempty || !proper) continue;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b) {
        if (s[a] && p.leq(a, b) && !s[b]) ok = false;
        if (s[a] && s[b] && !s[meet(p, a, b)]) ok = false;
        if (s[join(p, a, b)] && !s[a] && !s[b]) ok = false;
      }
    if (ok) out.insert(s);
  }
  return out;
}

// Dedekind-MacNeille cuts: down-sets L with L equal to the lower bounds of its upper bounds.
inline std::vector<Set> dm_cuts(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<Set> out;
  for (const Set& s : all_subsets(n)) {
    Set up(n, true), low(n, true);
    for (Elem u = 0; u < n; ++u)
      for (Elem a = 0; a < n; ++a)
        if (s[a] && !p.leq(a, u)) up[u] = false;
    for (Elem l = 0; l < n; ++l)
      for (Elem u = 0; u < n; ++u)
        if (up[u] && !p.leq(l, u)) low[l] = false;
    if (low == s) out.push_back(s);
  }
  return out;
}

inline bool subset(const Set& a, const Set& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

// Relations on the points of a poset that are up-closed in the first
// coordinate and down-closed in the second.
inline std::size_t count_monotone_relations(const FinPoset& j) {
  const std::size_t n = j.size();
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
    auto r = [&](Elem x, Elem y) { return (bits >> (x * n + y)) & 1U; };
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y) {
        if (!r(x, y)) continue;
        for (Elem x2 = 0; x2 < n && ok; ++x2)
          if (j.leq(x, x2) && !r(x2, y)) ok = false;
        for (Elem y2 = 0; y2 < n && ok; ++y2)
          if (j.leq(y2, y) && !r(x, y2)) ok = false;
      }
    count += ok;
  }
  return count;
}

// ---- semantic output operators over k atoms ----
// Propositions are sets of valuations, stored as bitmasks over 2^k rows.

struct NormSem {
  std::uint32_t body, head;
};

struct SemanticOutput {
  std::size_t k;
  std::vector<NormSem> norms;

  std::uint32_t full() const { return (std::uint32_t{1} << (std::size_t{1} << k)) - 1; }

  // meet of heads triggered by the up-set generated by b
  std::uint32_t heads_above(std::uint32_t b) const {
    std::uint32_t m = full();
    for (const auto& n : norms)
      if ((b & ~n.body) == 0) m &= n.head;
    return m;
  }
  std::uint32_t heads_at_row(std::size_t row) const {
    std::uint32_t m = full();
    for (const auto& n : norms)
      if ((n.body >> row) & 1U) m &= n.head;
    return m;
  }
  bool row_closed(std::size_t row) const {
    for (const auto& n : norms)
      if (((n.body >> row) & 1U) && !((n.head >> row) & 1U)) return false;
    return true;
  }

  // Least element generating out_i(alpha) as an up-set.
  std::uint32_t generator(int i, std::uint32_t alpha) const {
    const std::size_t rows = std::size_t{1} << k;
    switch (i) {
      case 1:
        return heads_above(alpha);
      case 2: {
        std::uint32_t g = heads_above(0);
        for (std::size_t r = 0; r < rows; ++r)
          if ((alpha >> r) & 1U) g |= heads_at_row(r);
        return g;
      }
      case 3: {
        std::uint32_t b = alpha;
        while (true) {
          std::uint32_t nb = b & heads_above(b);
          if (nb == b) break;
          b = nb;
        }
        return heads_above(b);
      }
      case 4: {
        std::uint32_t g = heads_above(0);
        for (std::size_t r = 0; r < rows; ++r)
          if (((alpha >> r) & 1U) && row_closed(r)) g |= heads_at_row(r);
        return g;
      }
    }
    return 0;
  }

  bool out(int i, std::uint32_t alpha, std::uint32_t psi) const { return (generator(i, alpha) & ~psi) == 0; }
};

}  // namespace oracle
