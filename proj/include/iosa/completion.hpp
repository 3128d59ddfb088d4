#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "order.hpp"

namespace iosa {

struct CanonicalExtension {
  FinPoset base;
  FinLattice delta;
  std::vector<Elem> embed;  // base -> delta
  ElementSet closed, open;

  std::optional<Elem> preimage(Elem u) const {
    for (Elem a = 0; a < embed.size(); ++a)
      if (embed[a] == u) return a;
    return std::nullopt;
  }
  ElementSet image() const {
    ElementSet s;
    for (Elem u : embed) s.set(u);
    return s;
  }
};

// Dedekind-MacNeille: cuts are the lower sets L with L = (L^u)^l. They are
// exactly the intersections of principal down-sets (the empty family giving P).
inline CanonicalExtension dm_completion(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<ElementSet> cuts{p.all()};
  std::map<ElementSet, bool> seen{{p.all(), true}};
  for (Elem x = 0; x < n; ++x) {
    const std::size_t before = cuts.size();
    for (std::size_t i = 0; i < before; ++i) {
      ElementSet c = cuts[i] & p.down(x);
      if (seen.emplace(c, true).second) {
        if (cuts.size() >= kMaxElements) throw TooLarge("Dedekind-MacNeille completion");
        cuts.push_back(c);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });

  const std::size_t m = cuts.size();
  std::map<ElementSet, Elem> index;
  for (Elem i = 0; i < m; ++i) index[cuts[i]] = i;

  CanonicalExtension c;
  c.base = p;
  c.embed.resize(n);
  for (Elem x = 0; x < n; ++x) c.embed[x] = index.at(p.down(x));

  std::vector<std::string> labels(m);
  for (Elem i = 0; i < m; ++i) {
    std::string l = "[";
    bool first = true;
    for (Elem x : cuts[i]) {
      l += (first ? "" : ",") + p.label(x);
      first = false;
    }
    labels[i] = l + "]";
  }
  for (Elem x = 0; x < n; ++x) labels[c.embed[x]] = p.label(x);

  Matrix leq(m, std::vector<bool>(m));
  for (Elem i = 0; i < m; ++i)
    for (Elem j = 0; j < m; ++j) leq[i][j] = cuts[i].subset_of(cuts[j]);
  FinPoset dp = validate_poset(leq, labels);

  std::vector<Elem> meet(m * m), join(m * m);
  for (Elem i = 0; i < m; ++i)
    for (Elem j = 0; j < m; ++j) {
      meet[i * m + j] = index.at(cuts[i] & cuts[j]);
      join[i * m + j] = index.at(p.lower_bounds(p.upper_bounds(cuts[i] | cuts[j])));
    }
  c.delta = lattice_from_tables(std::move(dp), std::move(meet), std::move(join));
  // Nonempty finite directed sets have a least/greatest member, so both
  // closed and open elements are exactly the image.
  c.closed = c.image();
  c.open = c.image();
  return c;
}

namespace detail {
inline constexpr std::size_t kSubsetScanLimit = 10;

inline std::vector<ElementSet> nonempty_subsets(std::size_t n) {
  if (n > kSubsetScanLimit) throw TooLarge("subset enumeration over more than 10 base elements");
  std::vector<ElementSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) out.push_back(ElementSet::from_mask(mask));
  return out;
}

inline ElementSet embed_set(const CanonicalExtension& c, const ElementSet& s) {
  ElementSet r;
  for (Elem a : s) r.set(c.embed[a]);
  return r;
}
}  // namespace detail

// Closed (open) elements straight from the definition: meets (joins) of
// nonempty down-directed (up-directed) subsets of the image.
inline ElementSet definitional_closed(const CanonicalExtension& c) {
  ElementSet k;
  for (const auto& f : detail::nonempty_subsets(c.base.size()))
    if (is_down_directed(f, c.base)) k.set(c.delta.meet_all(detail::embed_set(c, f)));
  return k;
}

inline ElementSet definitional_open(const CanonicalExtension& c) {
  ElementSet o;
  for (const auto& i : detail::nonempty_subsets(c.base.size()))
    if (is_up_directed(i, c.base)) o.set(c.delta.join_all(detail::embed_set(c, i)));
  return o;
}

inline bool verify_dense(const CanonicalExtension& c) {
  const ElementSet k = definitional_closed(c);
  const ElementSet o = definitional_open(c);
  const FinPoset& dp = c.delta.poset();
  for (Elem u = 0; u < c.delta.size(); ++u) {
    if (c.delta.join_all(k & dp.down(u)) != u) return false;
    if (c.delta.meet_all(o & dp.up(u)) != u) return false;
  }
  return true;
}

inline bool verify_compact(const CanonicalExtension& c) {
  struct Dir {
    ElementSet s;
    Elem bound;
  };
  std::vector<Dir> fs, is;
  for (const auto& s : detail::nonempty_subsets(c.base.size())) {
    if (is_down_directed(s, c.base)) fs.push_back({s, c.delta.meet_all(detail::embed_set(c, s))});
    if (is_up_directed(s, c.base)) is.push_back({s, c.delta.join_all(detail::embed_set(c, s))});
  }
  for (const auto& f : fs)
    for (const auto& i : is) {
      if (!c.delta.leq(f.bound, i.bound)) continue;
      bool found = false;
      for (Elem a : f.s) {
        if (c.base.up(a).intersects(i.s)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

inline bool embed_is_order_embedding(const CanonicalExtension& c) {
  for (Elem a = 0; a < c.base.size(); ++a)
    for (Elem b = 0; b < c.base.size(); ++b)
      if (c.base.leq(a, b) != c.delta.leq(c.embed[a], c.embed[b])) return false;
  return true;
}

inline std::vector<Elem> extend_negation_sigma(const CanonicalExtension& c, const std::vector<Elem>& neg) {
  NegationLaws laws = check_negation_laws(c.base, neg);
  if (!laws.antitone) throw NegationLawsFail("antitone");
  if (!laws.left_self_adjoint) throw NegationLawsFail("left-self-adjoint");
  const FinLattice& d = c.delta;
  std::vector<Elem> on_open(d.size(), d.top());
  for (Elem o : c.open) {
    ElementSet vals;
    for (Elem a = 0; a < c.base.size(); ++a)
      if (d.leq(c.embed[a], o)) vals.set(c.embed[neg[a]]);
    on_open[o] = d.meet_all(vals);
  }
  std::vector<Elem> out(d.size());
  for (Elem u = 0; u < d.size(); ++u) {
    ElementSet vals;
    for (Elem o : c.open & d.poset().up(u)) vals.set(on_open[o]);
    out[u] = d.join_all(vals);
  }
  return out;
}

inline std::vector<Elem> extend_negation_pi(const CanonicalExtension& c, const std::vector<Elem>& neg) {
  NegationLaws laws = check_negation_laws(c.base, neg);
  if (!laws.antitone) throw NegationLawsFail("antitone");
  if (!laws.right_self_adjoint) throw NegationLawsFail("right-self-adjoint");
  const FinLattice& d = c.delta;
  std::vector<Elem> on_closed(d.size(), d.bot());
  for (Elem k : c.closed) {
    ElementSet vals;
    for (Elem a = 0; a < c.base.size(); ++a)
      if (d.leq(k, c.embed[a])) vals.set(c.embed[neg[a]]);
    on_closed[k] = d.join_all(vals);
  }
  std::vector<Elem> out(d.size());
  for (Elem u = 0; u < d.size(); ++u) {
    ElementSet vals;
    for (Elem k : c.closed & d.poset().down(u)) vals.set(on_closed[k]);
    out[u] = d.meet_all(vals);
  }
  return out;
}

}  // namespace iosa
