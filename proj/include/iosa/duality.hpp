#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slanted.hpp"
#include "subordination.hpp"

namespace iosa {

struct SubordinationSpace {
  std::vector<std::string> labels;
  Matrix order;  // order[i][j]: point i ≤ point j
  Relation R;

  std::size_t size() const { return labels.size(); }
  bool leq(std::size_t i, std::size_t j) const { return order[i][j]; }
};

namespace detail {
inline void require_subordination_lattice(const ProtoSubAlg& s) {
  const FinLattice* L = s.lattice();
  if (!L) throw NotSubordinationLattice("carrier is not a lattice");
  if (!L->is_distributive()) throw NotSubordinationLattice("carrier is not distributive");
  if (!is_subordination_algebra(s)) throw NotSubordinationLattice("relation is not a subordination");
}
}  // namespace detail

// Points are the join-irreducibles of the completion, in index order;
// (j, i) ∈ R iff i ≤ ◇j.
inline SubordinationSpace build_space_jirr(const SlantedAlg& sa) {
  detail::require_subordination_lattice(sa.source);
  const FinLattice& d = sa.delta();
  std::vector<Elem> pts = join_irreducibles(d).to_vector();
  SubordinationSpace sp;
  sp.R = Relation(pts.size());
  sp.order.assign(pts.size(), std::vector<bool>(pts.size()));
  for (std::size_t x = 0; x < pts.size(); ++x) {
    sp.labels.push_back(d.label(pts[x]));
    Elem dj = apply_diamond(sa, pts[x]);
    for (std::size_t y = 0; y < pts.size(); ++y) {
      sp.order[x][y] = d.leq(pts[x], pts[y]);
      if (d.leq(pts[y], dj)) sp.R.insert(x, y);
    }
  }
  return sp;
}

inline SubordinationSpace build_space_jirr(const ProtoSubAlg& s) {
  detail::require_subordination_lattice(s);
  return build_space_jirr(build_slanted(s));
}

// Prime filters ordered by reverse inclusion, so that j ↦ ↑j is an order
// isomorphism from the join-irreducibles; (P, Q) ∈ R iff ≺[P] ⊆ Q.
inline SubordinationSpace build_space_primefilters(const ProtoSubAlg& s) {
  detail::require_subordination_lattice(s);
  const FinLattice& L = *s.lattice();
  auto pf = prime_filters(L);
  SubordinationSpace sp;
  sp.R = Relation(pf.size());
  sp.order.assign(pf.size(), std::vector<bool>(pf.size()));
  for (std::size_t x = 0; x < pf.size(); ++x) {
    sp.labels.push_back("up(" + L.label(L.meet_all(pf[x])) + ")");
    ElementSet img = s.prec.image(pf[x]);
    for (std::size_t y = 0; y < pf.size(); ++y) {
      sp.order[x][y] = pf[y].subset_of(pf[x]);
      if (img.subset_of(pf[y])) sp.R.insert(x, y);
    }
  }
  return sp;
}

// Bijection preserving and reflecting both the order and R.
inline std::optional<std::vector<std::size_t>> spaces_isomorphic(const SubordinationSpace& a,
                                                                 const SubordinationSpace& b) {
  const std::size_t n = a.size();
  if (b.size() != n || a.R.count() != b.R.count()) return std::nullopt;
  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || a.R.contains(i, i) != b.R.contains(c, c)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        std::size_t m = map[j];
        ok = a.leq(i, j) == b.leq(c, m) && a.leq(j, i) == b.leq(m, c) && a.R.contains(i, j) == b.R.contains(c, m) &&
             a.R.contains(j, i) == b.R.contains(m, c);
      }
      if (!ok) continue;
      map[i] = c;
      used[c] = true;
      if (self(self, i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

inline SubordinationSpace transpose(const SubordinationSpace& s) {
  SubordinationSpace t = s;
  t.R = s.R.transpose();
  return t;
}

enum class RelCondition {
  Reflexive, Transitive, Dense, CT, S9Fwd, S9Bwd, SL1, SL2, Proper,
  // Point conditions with "≤" read in the order of the join-irreducibles.
  S9FwdVerbatim, S9BwdVerbatim, SL1Verbatim
};

inline std::string_view to_string(RelCondition c) {
  switch (c) {
    case RelCondition::Reflexive: return "REFLEXIVE";
    case RelCondition::Transitive: return "TRANSITIVE";
    case RelCondition::Dense: return "DENSE";
    case RelCondition::CT: return "CT_REL";
    case RelCondition::S9Fwd: return "S9_FWD_REL";
    case RelCondition::S9Bwd: return "S9_BWD_REL";
    case RelCondition::SL1: return "SL1_REL";
    case RelCondition::SL2: return "SL2_REL";
    case RelCondition::Proper: return "PROPER_REL";
    case RelCondition::S9FwdVerbatim: return "S9_FWD_REL_VERBATIM";
    case RelCondition::S9BwdVerbatim: return "S9_BWD_REL_VERBATIM";
    case RelCondition::SL1Verbatim: return "SL1_REL_VERBATIM";
  }
  return "?";
}

inline std::optional<RelCondition> parse_rel_condition(std::string_view s) {
  std::string up;
  for (char ch : s) up += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (int i = 0; i <= static_cast<int>(RelCondition::SL1Verbatim); ++i) {
    auto c = static_cast<RelCondition>(i);
    std::string_view name = to_string(c);
    if (up == name || (name.size() > 4 && name.substr(name.size() - 4) == "_REL" && up == name.substr(0, name.size() - 4)))
      return c;
  }
  return std::nullopt;
}

struct RelResult {
  bool holds = true;
  std::vector<std::size_t> witness;
  explicit operator bool() const { return holds; }
};

// Witness orders: REFLEXIVE (j); TRANSITIVE (j,k,i); DENSE, CT (j,i);
// S9 forms (i1,i2,i3); SL1, SL2 (i1,i2,i3,i4); PROPER the down-set members.
//   SL2:  i1Ri4 & i2Ri4 & i4Ri3 ⇒ ∃j(j ≤ i1, j ≤ i2, jRi3)
//   SL1:  i3Ri4 & i4Ri1 & i4Ri2 ⇒ ∃j(i1 ≤ j, i2 ≤ j, i3Rj)
//   S9:   i3Ri1 & i3Ri2 ⇔ ∃j(i1 ≤ j, i3Rj, jRi2)
// The verbatim forms replace "i ≤ j" by "j ≤ i" in SL1 and S9.
inline RelResult check_relational(const SubordinationSpace& sp, RelCondition c) {
  const std::size_t n = sp.size();
  const Relation& R = sp.R;
  auto fail = [](std::vector<std::size_t> w) { return RelResult{false, std::move(w)}; };
  auto s9 = [&](bool fwd, bool verbatim) -> RelResult {
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          bool lhs = R.contains(i3, i1) && R.contains(i3, i2);
          bool rhs = false;
          for (std::size_t j = 0; j < n && !rhs; ++j)
            rhs = (verbatim ? sp.leq(j, i1) : sp.leq(i1, j)) && R.contains(i3, j) && R.contains(j, i2);
          if (fwd ? (lhs && !rhs) : (rhs && !lhs)) return fail({i1, i2, i3});
        }
    return {};
  };
  switch (c) {
    case RelCondition::Reflexive:
      for (std::size_t j = 0; j < n; ++j)
        if (!R.contains(j, j)) return fail({j});
      return {};
    case RelCondition::Transitive:
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k : R.image(j))
          for (std::size_t i : R.image(k))
            if (!R.contains(j, i)) return fail({j, k, i});
      return {};
    case RelCondition::Dense:
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i : R.image(j))
          if (!R.image(j).intersects(R.preimage(i))) return fail({j, i});
      return {};
    case RelCondition::CT:
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i : R.image(j)) {
          bool ok = false;
          for (std::size_t k : R.image(j)) ok = ok || (sp.leq(k, j) && R.contains(k, i));
          if (!ok) return fail({j, i});
        }
      return {};
    case RelCondition::S9Fwd: return s9(true, false);
    case RelCondition::S9Bwd: return s9(false, false);
    case RelCondition::S9FwdVerbatim: return s9(true, true);
    case RelCondition::S9BwdVerbatim: return s9(false, true);
    case RelCondition::SL1:
    case RelCondition::SL1Verbatim: {
      const bool verbatim = c == RelCondition::SL1Verbatim;
      for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
          for (std::size_t i3 = 0; i3 < n; ++i3)
            for (std::size_t i4 = 0; i4 < n; ++i4) {
              if (!(R.contains(i3, i4) && R.contains(i4, i1) && R.contains(i4, i2))) continue;
              bool ok = false;
              for (std::size_t j = 0; j < n && !ok; ++j) {
                bool bound = verbatim ? sp.leq(j, i1) && sp.leq(j, i2) : sp.leq(i1, j) && sp.leq(i2, j);
                ok = bound && R.contains(i3, j);
              }
              if (!ok) return fail({i1, i2, i3, i4});
            }
      return {};
    }
    case RelCondition::SL2:
      for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t i2 = 0; i2 < n; ++i2)
          for (std::size_t i3 = 0; i3 < n; ++i3)
            for (std::size_t i4 = 0; i4 < n; ++i4) {
              if (!(R.contains(i1, i4) && R.contains(i2, i4) && R.contains(i4, i3))) continue;
              bool ok = false;
              for (std::size_t j = 0; j < n && !ok; ++j) ok = sp.leq(j, i1) && sp.leq(j, i2) && R.contains(j, i3);
              if (!ok) return fail({i1, i2, i3, i4});
            }
      return {};
    case RelCondition::Proper: {
      // Every nonempty down-set Z contains R[j] for some point j.
      if (n > 20) throw TooLarge("down-set enumeration over more than 20 points");
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        ElementSet z = ElementSet::from_mask(mask);
        bool down = true;
        for (std::size_t i : z)
          for (std::size_t k = 0; k < n && down; ++k)
            if (sp.leq(k, i) && !z.test(k)) down = false;
        if (!down) continue;
        bool ok = false;
        for (std::size_t j = 0; j < n && !ok; ++j) ok = R.image(j).subset_of(z);
        if (!ok) return fail(z.to_vector());
      }
      return {};
    }
  }
  return {};
}

// κ(j) = the largest element not above j, for each join-irreducible j.
// κ is an order isomorphism from J onto the meet-irreducibles.
struct LambdaMap {
  std::vector<std::pair<Elem, Elem>> pairs;  // (j, κ(j)) in index order of j

  std::optional<Elem> kappa(Elem j) const {
    for (auto [a, b] : pairs)
      if (a == j) return b;
    return std::nullopt;
  }
  std::optional<Elem> kappa_inverse(Elem m) const {
    for (auto [a, b] : pairs)
      if (b == m) return a;
    return std::nullopt;
  }
};

inline LambdaMap lambda_map(const FinLattice& L) {
  if (!L.is_distributive()) throw NotDistributive();
  LambdaMap lm;
  for (Elem j : join_irreducibles(L)) {
    ElementSet not_above = L.poset().all() - L.poset().up(j);
    Elem k = L.join_all(not_above);
    if (L.leq(j, k)) throw NotDistributive();
    lm.pairs.emplace_back(j, k);
  }
  return lm;
}

// ■m ≤ n ⇔ κ⁻¹(m) ≤ ◇κ⁻¹(n) over all meet-irreducibles m, n; witness (m, n).
inline std::optional<std::pair<Elem, Elem>> lambda_translation_failure(const SlantedAlg& sa) {
  const FinLattice& d = sa.delta();
  LambdaMap lm = lambda_map(d);
  for (Elem m : meet_irreducibles(d))
    for (Elem n : meet_irreducibles(d)) {
      Elem jm = *lm.kappa_inverse(m), jn = *lm.kappa_inverse(n);
      if (d.leq(apply_box(sa, m), n) != d.leq(jm, apply_diamond(sa, jn))) return std::pair{m, n};
    }
  return std::nullopt;
}

}  // namespace iosa
