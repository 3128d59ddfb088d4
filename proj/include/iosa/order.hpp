#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"

namespace iosa {

using Matrix = std::vector<std::vector<bool>>;

class FinPoset {
 public:
  FinPoset() = default;

  std::size_t size() const { return up_.size(); }
  bool leq(Elem a, Elem b) const { return up_[a].test(b); }
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  const ElementSet& up(Elem a) const { return up_[a]; }
  const ElementSet& down(Elem a) const { return down_[a]; }
  ElementSet all() const { return ElementSet::full(size()); }

  std::optional<Elem> bottom() const { return bottom_; }
  std::optional<Elem> top() const { return top_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem a) const { return labels_[a]; }
  std::optional<Elem> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == name) return i;
    return std::nullopt;
  }

  ElementSet up_closure(const ElementSet& s) const {
    ElementSet r;
    for (Elem x : s) r |= up_[x];
    return r;
  }
  ElementSet down_closure(const ElementSet& s) const {
    ElementSet r;
    for (Elem x : s) r |= down_[x];
    return r;
  }
  // Common upper / lower bounds of every member (all of P for the empty set).
  ElementSet upper_bounds(const ElementSet& s) const {
    ElementSet r = all();
    for (Elem x : s) r &= up_[x];
    return r;
  }
  ElementSet lower_bounds(const ElementSet& s) const {
    ElementSet r = all();
    for (Elem x : s) r &= down_[x];
    return r;
  }
  std::optional<Elem> maximum(const ElementSet& s) const {
    for (Elem x : s)
      if (s.subset_of(down_[x])) return x;
    return std::nullopt;
  }
  std::optional<Elem> minimum(const ElementSet& s) const {
    for (Elem x : s)
      if (s.subset_of(up_[x])) return x;
    return std::nullopt;
  }

  Matrix matrix() const {
    Matrix m(size(), std::vector<bool>(size()));
    for (std::size_t a = 0; a < size(); ++a)
      for (Elem b : up_[a]) m[a][b] = true;
    return m;
  }

  friend FinPoset validate_poset(const Matrix& m, std::vector<std::string> labels);

 private:
  std::vector<ElementSet> up_, down_;
  std::vector<std::string> labels_;
  std::optional<Elem> bottom_, top_;
};

inline std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline FinPoset validate_poset(const Matrix& m, std::vector<std::string> labels = {}) {
  const std::size_t n = m.size();
  if (n == 0) throw InputError("empty carrier");
  if (n > kMaxElements) throw TooLarge("carrier with " + std::to_string(n) + " elements");
  for (const auto& row : m)
    if (row.size() != n) throw InputError("order matrix is not square");
  if (labels.empty()) labels = index_labels(n);
  if (labels.size() != n) throw InputError("label count does not match matrix");

  for (std::size_t a = 0; a < n; ++a)
    if (!m[a][a]) throw PosetLawViolation("reflexivity", {a});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (m[a][b] && m[b][a]) throw PosetLawViolation("antisymmetry", {a, b});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (m[a][b])
        for (std::size_t c = 0; c < n; ++c)
          if (m[b][c] && !m[a][c]) throw PosetLawViolation("transitivity", {a, b, c});

  FinPoset p;
  p.up_.resize(n);
  p.down_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (m[a][b]) {
        p.up_[a].set(b);
        p.down_[b].set(a);
      }
  p.labels_ = std::move(labels);
  ElementSet all = ElementSet::full(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (p.up_[a] == all) p.bottom_ = a;
    if (p.down_[a] == all) p.top_ = a;
  }
  return p;
}

// Reflexive-transitive closure of a cover list, then validation.
inline FinPoset poset_from_hasse(std::size_t n, const std::vector<std::pair<Elem, Elem>>& covers,
                                 std::vector<std::string> labels = {}) {
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw InputError("hasse pair out of range");
    m[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return validate_poset(m, std::move(labels));
}

class FinLattice {
 public:
  FinLattice() = default;

  const FinPoset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  bool leq(Elem a, Elem b) const { return poset_.leq(a, b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem bot() const { return bot_; }
  Elem top() const { return top_; }
  bool is_distributive() const { return distributive_; }
  bool is_boolean() const { return boolean_; }
  const std::optional<std::vector<Elem>>& neg() const { return neg_; }
  const std::string& label(Elem a) const { return poset_.label(a); }

  Elem meet_all(const ElementSet& s) const {
    Elem r = top_;
    for (Elem x : s) r = meet(r, x);
    return r;
  }
  Elem join_all(const ElementSet& s) const {
    Elem r = bot_;
    for (Elem x : s) r = join(r, x);
    return r;
  }

  FinLattice with_negation(std::vector<Elem> table) const {
    if (table.size() != size()) throw InputError("negation table has wrong length");
    for (Elem x : table)
      if (x >= size()) throw InputError("negation value out of range");
    FinLattice l = *this;
    l.neg_ = std::move(table);
    return l;
  }

  friend FinLattice lattice_from_tables(FinPoset p, std::vector<Elem> meet, std::vector<Elem> join);

 private:
  FinPoset poset_;
  std::vector<Elem> meet_, join_;
  Elem bot_ = 0, top_ = 0;
  bool distributive_ = false, boolean_ = false;
  std::optional<std::vector<Elem>> neg_;
};

inline FinLattice lattice_from_tables(FinPoset p, std::vector<Elem> meet, std::vector<Elem> join) {
  FinLattice l;
  const std::size_t n = p.size();
  if (!p.bottom() || !p.top()) throw InputError("lattice tables over an unbounded poset");
  l.bot_ = *p.bottom();
  l.top_ = *p.top();
  l.poset_ = std::move(p);
  l.meet_ = std::move(meet);
  l.join_ = std::move(join);

  l.distributive_ = true;
  for (std::size_t a = 0; a < n && l.distributive_; ++a)
    for (std::size_t b = 0; b < n && l.distributive_; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) {
          l.distributive_ = false;
          break;
        }

  if (l.distributive_) {
    std::vector<Elem> comp(n);
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      ok = false;
      for (std::size_t c = 0; c < n; ++c)
        if (l.meet(a, c) == l.bot_ && l.join(a, c) == l.top_) {
          comp[a] = c;
          ok = true;
          break;
        }
    }
    l.boolean_ = ok;
    if (ok) l.neg_ = std::move(comp);
  }
  return l;
}

inline FinLattice to_lattice(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<Elem> meet(n * n), join(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      ElementSet lower = p.down(a) & p.down(b);
      auto glb = p.maximum(lower);
      if (!glb) throw NotALattice(a, b, "greatest lower bound");
      ElementSet upper = p.up(a) & p.up(b);
      auto lub = p.minimum(upper);
      if (!lub) throw NotALattice(a, b, "least upper bound");
      meet[a * n + b] = meet[b * n + a] = *glb;
      join[a * n + b] = join[b * n + a] = *lub;
    }
  return lattice_from_tables(p, std::move(meet), std::move(join));
}

// Elements with exactly one lower cover, i.e. not the join of what lies strictly below.
inline ElementSet join_irreducibles(const FinLattice& l) {
  ElementSet out;
  for (Elem x = 0; x < l.size(); ++x) {
    if (x == l.bot()) continue;
    ElementSet below = l.poset().down(x);
    below.reset(x);
    if (l.join_all(below) != x) out.set(x);
  }
  return out;
}

inline ElementSet meet_irreducibles(const FinLattice& l) {
  ElementSet out;
  for (Elem x = 0; x < l.size(); ++x) {
    if (x == l.top()) continue;
    ElementSet above = l.poset().up(x);
    above.reset(x);
    if (l.meet_all(above) != x) out.set(x);
  }
  return out;
}

inline bool is_down_directed(const ElementSet& s, const FinPoset& p) {
  for (Elem a : s)
    for (Elem b : s)
      if (b > a && !(p.down(a) & p.down(b)).intersects(s)) return false;
  return true;
}

inline bool is_up_directed(const ElementSet& s, const FinPoset& p) {
  for (Elem a : s)
    for (Elem b : s)
      if (b > a && !(p.up(a) & p.up(b)).intersects(s)) return false;
  return true;
}

inline bool is_filter(const ElementSet& s, const FinLattice& l) {
  if (s.empty() || !l.poset().up_closure(s).subset_of(s)) return false;
  for (Elem a : s)
    for (Elem b : s)
      if (!s.test(l.meet(a, b))) return false;
  return true;
}

inline bool is_prime_filter(const ElementSet& s, const FinLattice& l) {
  if (!is_filter(s, l) || s.test(l.bot())) return false;
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = a; b < l.size(); ++b)
      if (s.test(l.join(a, b)) && !s.test(a) && !s.test(b)) return false;
  return true;
}

// Finite filters are principal, so scanning the generators suffices.
inline std::vector<ElementSet> prime_filters(const FinLattice& l) {
  if (!l.is_distributive()) throw NotDistributive();
  std::vector<ElementSet> out;
  for (Elem a = 0; a < l.size(); ++a) {
    const ElementSet& f = l.poset().up(a);
    if (is_prime_filter(f, l)) out.push_back(f);
  }
  return out;
}

struct NegationLaws {
  bool antitone = true;
  bool involutive = true;
  bool left_self_adjoint = true;   // ¬a ≤ b iff ¬b ≤ a
  bool right_self_adjoint = true;  // a ≤ ¬b iff b ≤ ¬a
  bool below_double = true;        // a ≤ ¬¬a
  bool above_double = true;        // ¬¬a ≤ a
};

inline NegationLaws check_negation_laws(const FinPoset& p, const std::vector<Elem>& neg) {
  if (neg.size() != p.size()) throw InputError("negation table has wrong length");
  NegationLaws r;
  const std::size_t n = p.size();
  for (Elem a = 0; a < n; ++a) {
    Elem nn = neg[neg[a]];
    if (nn != a) r.involutive = false;
    if (!p.leq(a, nn)) r.below_double = false;
    if (!p.leq(nn, a)) r.above_double = false;
    for (Elem b = 0; b < n; ++b) {
      if (p.leq(a, b) && !p.leq(neg[b], neg[a])) r.antitone = false;
      if (p.leq(neg[a], b) != p.leq(neg[b], a)) r.left_self_adjoint = false;
      if (p.leq(a, neg[b]) != p.leq(b, neg[a])) r.right_self_adjoint = false;
    }
  }
  return r;
}

inline NegationLaws check_negation_laws(const FinLattice& l, const std::vector<Elem>& neg) {
  return check_negation_laws(l.poset(), neg);
}

struct FreeBooleanAlgebra {
  std::size_t variables = 0;
  FinLattice lattice;
  // Element index = truth table; bit r is the value on the row where
  // variable i takes bit i of r.
  std::vector<Elem> generators;
};

namespace detail {
inline FreeBooleanAlgebra build_free_boolean_algebra(std::size_t k) {
  const std::size_t rows = std::size_t{1} << k;
  const std::size_t n = std::size_t{1} << rows;
  const Elem mask = n - 1;
  Matrix m(n, std::vector<bool>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) m[a][b] = (a & ~b) == 0;
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) {
    std::string s = "t";
    for (std::size_t r = rows; r-- > 0;) s += ((a >> r) & 1U) ? '1' : '0';
    labels.push_back(s);
  }
  FinPoset p = validate_poset(m, labels);
  std::vector<Elem> meet(n * n), join(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      meet[a * n + b] = a & b;
      join[a * n + b] = a | b;
    }
  FreeBooleanAlgebra f;
  f.variables = k;
  f.lattice = lattice_from_tables(std::move(p), std::move(meet), std::move(join));
  std::vector<Elem> neg(n);
  for (Elem a = 0; a < n; ++a) neg[a] = ~a & mask;
  f.lattice = f.lattice.with_negation(std::move(neg));
  for (std::size_t i = 0; i < k; ++i) {
    Elem g = 0;
    for (std::size_t r = 0; r < rows; ++r)
      if ((r >> i) & 1U) g |= Elem{1} << r;
    f.generators.push_back(g);
  }
  return f;
}
}  // namespace detail

inline const FreeBooleanAlgebra& free_boolean_algebra(std::size_t k) {
  if (k > 3) throw TooManyVariables(k);
  static std::array<std::optional<FreeBooleanAlgebra>, 4> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[k]) cache[k] = detail::build_free_boolean_algebra(k);
  return *cache[k];
}

// Backtracking search for an order isomorphism p -> q.
inline std::optional<std::vector<Elem>> poset_isomorphism(const FinPoset& p, const FinPoset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return std::nullopt;
  std::vector<Elem> map(n), used_by(n, n);
  auto profile = [](const FinPoset& x, Elem a) {
    return std::pair{x.up(a).count(), x.down(a).count()};
  };
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (Elem c = 0; c < n; ++c) {
      if (used_by[c] != n || profile(p, i) != profile(q, c)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = p.leq(j, i) == q.leq(map[j], c) && p.leq(i, j) == q.leq(c, map[j]);
      if (!ok) continue;
      map[i] = c;
      used_by[c] = i;
      if (self(self, i + 1)) return true;
      used_by[c] = n;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

// Every partial order on {0..n-1}, in increasing order of the off-diagonal bit mask.
inline std::vector<FinPoset> all_labeled_posets(std::size_t n) {
  if (n > 5) throw TooLarge("labeled poset enumeration beyond 5 elements");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<FinPoset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
    Matrix m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if ((mask >> c) & 1U) m[cells[c].first][cells[c].second] = true;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (a != b && m[a][b] && m[b][a]) ok = false;
        if (m[a][b])
          for (std::size_t c = 0; c < n && ok; ++c)
            if (m[b][c] && !m[a][c]) ok = false;
      }
    if (ok) out.push_back(validate_poset(m));
  }
  return out;
}

// Random order: pairs a<b (as indices) included with probability 1/3, then closed.
template <class Rng>
FinPoset random_poset(std::size_t n, Rng& rng) {
  std::vector<std::pair<Elem, Elem>> covers;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (rng() % 3 == 0) covers.emplace_back(a, b);
  return poset_from_hasse(n, covers);
}

// Shared immutable carrier: a poset, plus its lattice view when it has one.
struct Carrier {
  std::string name;
  std::shared_ptr<const FinPoset> poset;
  std::shared_ptr<const FinLattice> lattice;

  std::size_t size() const { return poset->size(); }
  bool is_lattice() const { return lattice != nullptr; }
};

inline Carrier make_carrier(FinLattice l, std::string name = {}) {
  Carrier c;
  c.name = std::move(name);
  c.lattice = std::make_shared<const FinLattice>(std::move(l));
  c.poset = std::shared_ptr<const FinPoset>(c.lattice, &c.lattice->poset());
  return c;
}

// Posets that happen to be lattices get their lattice view.
inline Carrier make_carrier(FinPoset p, std::string name = {}) {
  try {
    return make_carrier(to_lattice(p), std::move(name));
  } catch (const NotALattice&) {
    Carrier c;
    c.name = std::move(name);
    c.poset = std::make_shared<const FinPoset>(std::move(p));
    return c;
  }
}

}  // namespace iosa
