#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "order.hpp"

namespace iosa {

enum class Property {
  Bot, Top, SI, WO, And, Or, D, S6, CT, T, DD, UD,
  S9Fwd, S9Bwd, SL1, SL2, PrecInLeq, LeqInPrec, Proper
};

inline constexpr std::array<Property, 19> kAllProperties = {
    Property::Bot, Property::Top, Property::SI, Property::WO, Property::And, Property::Or, Property::D,
    Property::S6, Property::CT, Property::T, Property::DD, Property::UD, Property::S9Fwd, Property::S9Bwd,
    Property::SL1, Property::SL2, Property::PrecInLeq, Property::LeqInPrec, Property::Proper};

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::Bot: return "BOT";
    case Property::Top: return "TOP";
    case Property::SI: return "SI";
    case Property::WO: return "WO";
    case Property::And: return "AND";
    case Property::Or: return "OR";
    case Property::D: return "D";
    case Property::S6: return "S6";
    case Property::CT: return "CT";
    case Property::T: return "T";
    case Property::DD: return "DD";
    case Property::UD: return "UD";
    case Property::S9Fwd: return "S9_FWD";
    case Property::S9Bwd: return "S9_BWD";
    case Property::SL1: return "SL1";
    case Property::SL2: return "SL2";
    case Property::PrecInLeq: return "PREC_IN_LEQ";
    case Property::LeqInPrec: return "LEQ_IN_PREC";
    case Property::Proper: return "PROPER";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view s) {
  for (Property p : kAllProperties)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

struct ProtoSubAlg {
  Carrier carrier;
  Relation prec;
  // Negation on the carrier; defaults to the lattice's own when there is one.
  std::optional<std::vector<Elem>> neg;

  std::size_t size() const { return carrier.size(); }
  const FinPoset& poset() const { return *carrier.poset; }
  const FinLattice* lattice() const { return carrier.lattice.get(); }
  bool prec_has(Elem a, Elem b) const { return prec.contains(a, b); }
};

inline ProtoSubAlg make_subalg(Carrier c, Relation prec) {
  if (prec.size() != c.size()) throw InputError("relation size does not match carrier");
  ProtoSubAlg s{std::move(c), std::move(prec), std::nullopt};
  if (s.carrier.lattice && s.carrier.lattice->neg()) s.neg = s.carrier.lattice->neg();
  return s;
}

inline Relation order_relation(const FinPoset& p) {
  Relation r(p.size());
  for (Elem a = 0; a < p.size(); ++a) r.row(a) = p.up(a);
  return r;
}

struct PropertyResult {
  bool holds = true;
  std::vector<Elem> witness;  // first counterexample, variables in documented order
  explicit operator bool() const { return holds; }
};

namespace detail {
inline const FinLattice& need_lattice(const ProtoSubAlg& s, Property p) {
  if (!s.lattice()) throw MissingStructure(std::string(to_string(p)), "lattice operations");
  return *s.lattice();
}
inline PropertyResult fail(std::vector<Elem> w) { return {false, std::move(w)}; }
}  // namespace detail

// Witness variable order per property:
//   BOT, TOP: ()            SI: (a,b,x)      WO: (b,x,y)       AND: (a,x,y)
//   OR: (a,b,x)             D: (a,c)         S6: (a,b)         CT, T: (a,b,c)
//   DD: (a,x1,x2)           UD: (a1,a2,x)    S9_FWD: (x,a,b,c) S9_BWD: (x,a,b,a',b')
//   SL1: (a,b,c) for a ≺ b∨c               SL2: (a,b,c) for b∧c ≺ a
//   PREC_IN_LEQ, LEQ_IN_PREC: (a,b)         PROPER: (a)
//
// SL2 asks for b ≺ b' and c ≺ c' (the order dual of SL1), which is the form
// ◇(◇a∧◇b) ≤ ◇(a∧b) characterizes; sl2_preimage_form keeps b' ≺ b, c' ≺ c.
inline PropertyResult check_property(const ProtoSubAlg& s, Property p) {
  using detail::fail;
  const FinPoset& P = s.poset();
  const Relation& R = s.prec;
  const std::size_t n = s.size();
  switch (p) {
    case Property::Bot: {
      auto b = P.bottom();
      if (!b) throw MissingStructure("BOT", "a bottom element");
      return R.contains(*b, *b) ? PropertyResult{} : fail({});
    }
    case Property::Top: {
      auto t = P.top();
      if (!t) throw MissingStructure("TOP", "a top element");
      return R.contains(*t, *t) ? PropertyResult{} : fail({});
    }
    case Property::SI:
      for (Elem a = 0; a < n; ++a)
        for (Elem b : P.up(a))
          for (Elem x : R.image(b))
            if (!R.contains(a, x)) return fail({a, b, x});
      return {};
    case Property::WO:
      for (Elem b = 0; b < n; ++b)
        for (Elem x : R.image(b))
          for (Elem y : P.up(x))
            if (!R.contains(b, y)) return fail({b, x, y});
      return {};
    case Property::And: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem a = 0; a < n; ++a)
        for (Elem x : R.image(a))
          for (Elem y : R.image(a))
            if (!R.contains(a, L.meet(x, y))) return fail({a, x, y});
      return {};
    }
    case Property::Or: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem x : R.image(a) & R.image(b))
            if (!R.contains(L.join(a, b), x)) return fail({a, b, x});
      return {};
    }
    case Property::D:
      for (Elem a = 0; a < n; ++a)
        for (Elem c : R.image(a))
          if (!R.preimage(c).intersects(R.image(a))) return fail({a, c});
      return {};
    case Property::S6: {
      if (!s.neg) throw MissingStructure("S6", "a negation table");
      const auto& ng = *s.neg;
      for (Elem a = 0; a < n; ++a)
        for (Elem b : R.image(a))
          if (!R.contains(ng[b], ng[a])) return fail({a, b});
      return {};
    }
    case Property::CT: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem a = 0; a < n; ++a)
        for (Elem b : R.image(a))
          for (Elem c : R.image(L.meet(a, b)))
            if (!R.contains(a, c)) return fail({a, b, c});
      return {};
    }
    case Property::T:
      for (Elem a = 0; a < n; ++a)
        for (Elem b : R.image(a))
          for (Elem c : R.image(b))
            if (!R.contains(a, c)) return fail({a, b, c});
      return {};
    case Property::DD:
      for (Elem a = 0; a < n; ++a)
        for (Elem x1 : R.image(a))
          for (Elem x2 : R.image(a))
            if (!(R.image(a) & P.down(x1) & P.down(x2)).any()) return fail({a, x1, x2});
      return {};
    case Property::UD:
      for (Elem a1 = 0; a1 < n; ++a1)
        for (Elem a2 = 0; a2 < n; ++a2)
          for (Elem x : R.image(a1) & R.image(a2))
            if (!(R.preimage(x) & P.up(a1) & P.up(a2)).any()) return fail({a1, a2, x});
      return {};
    case Property::S9Fwd: {
      // ∃c(c≺b & x≺a∨c) ⇒ ∃a'b'(a'≺a & b'≺b & x ≤ a'∨b')
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem x = 0; x < n; ++x)
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b) {
            ElementSet pa = R.preimage(a), pb = R.preimage(b);
            bool concl = false;
            for (Elem a1 : pa) {
              for (Elem b1 : pb)
                if (L.leq(x, L.join(a1, b1))) {
                  concl = true;
                  break;
                }
              if (concl) break;
            }
            if (concl) continue;
            for (Elem c : pb)
              if (R.contains(x, L.join(a, c))) return fail({x, a, b, c});
          }
      return {};
    }
    case Property::S9Bwd: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem x = 0; x < n; ++x)
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b) {
            ElementSet pa = R.preimage(a), pb = R.preimage(b);
            bool concl = false;
            for (Elem c : pb)
              if (R.contains(x, L.join(a, c))) {
                concl = true;
                break;
              }
            if (concl) continue;
            for (Elem a1 : pa)
              for (Elem b1 : pb)
                if (L.leq(x, L.join(a1, b1))) return fail({x, a, b, a1, b1});
          }
      return {};
    }
    case Property::SL1: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) {
            if (!R.contains(a, L.join(b, c))) continue;
            bool ok = false;
            for (Elem b1 : R.preimage(b)) {
              for (Elem c1 : R.preimage(c))
                if (R.contains(a, L.join(b1, c1))) {
                  ok = true;
                  break;
                }
              if (ok) break;
            }
            if (!ok) return fail({a, b, c});
          }
      return {};
    }
    case Property::SL2: {
      const FinLattice& L = detail::need_lattice(s, p);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) {
            if (!R.contains(L.meet(b, c), a)) continue;
            bool ok = false;
            for (Elem b1 : R.image(b)) {
              for (Elem c1 : R.image(c))
                if (R.contains(L.meet(b1, c1), a)) {
                  ok = true;
                  break;
                }
              if (ok) break;
            }
            if (!ok) return fail({a, b, c});
          }
      return {};
    }
    case Property::PrecInLeq:
      for (Elem a = 0; a < n; ++a)
        for (Elem b : R.image(a))
          if (!P.leq(a, b)) return fail({a, b});
      return {};
    case Property::LeqInPrec:
      for (Elem a = 0; a < n; ++a)
        for (Elem b : P.up(a))
          if (!R.contains(a, b)) return fail({a, b});
      return {};
    case Property::Proper: {
      auto bot = P.bottom();
      if (!bot) throw MissingStructure("PROPER", "a bottom element");
      ElementSet only_bot = ElementSet::single(*bot);
      for (Elem a = 0; a < n; ++a)
        if (a != *bot && R.preimage(a).subset_of(only_bot)) return fail({a});
      return {};
    }
  }
  return {};
}

// b∧c ≺ a ⇒ ∃b'c'(b' ≺ b & c' ≺ c & b'∧c' ≺ a); witness (a,b,c).
inline PropertyResult sl2_preimage_form(const ProtoSubAlg& s) {
  const FinLattice& L = detail::need_lattice(s, Property::SL2);
  const Relation& R = s.prec;
  const std::size_t n = s.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (!R.contains(L.meet(b, c), a)) continue;
        bool ok = false;
        for (Elem b1 : R.preimage(b))
          for (Elem c1 : R.preimage(c)) ok = ok || R.contains(L.meet(b1, c1), a);
        if (!ok) return detail::fail({a, b, c});
      }
  return {};
}

// Structural requirements are met, so check_property will not throw.
inline bool property_applicable(const ProtoSubAlg& s, Property p) {
  switch (p) {
    case Property::Bot: return s.poset().bottom().has_value();
    case Property::Top: return s.poset().top().has_value();
    case Property::Proper: return s.poset().bottom().has_value();
    case Property::S6: return s.neg.has_value();
    case Property::And:
    case Property::Or:
    case Property::CT:
    case Property::S9Fwd:
    case Property::S9Bwd:
    case Property::SL1:
    case Property::SL2: return s.lattice() != nullptr;
    default: return true;
  }
}

inline bool holds(const ProtoSubAlg& s, Property p) { return check_property(s, p).holds; }

struct NamedClass {
  std::string_view name;
  std::vector<Property> props;
};

inline const std::vector<NamedClass>& named_classes() {
  using P = Property;
  static const std::vector<NamedClass> table = {
      {"diamond-premonotone", {P::SI}},
      {"box-premonotone", {P::WO}},
      {"premonotone", {P::SI, P::WO}},
      {"diamond-directed", {P::WO, P::DD}},
      {"box-directed", {P::SI, P::UD}},
      {"diamond-monotone", {P::WO, P::DD, P::SI}},
      {"box-monotone", {P::SI, P::UD, P::WO}},
      {"directed/monotone", {P::SI, P::WO, P::UD, P::DD}},
      {"diamond-regular", {P::SI, P::WO, P::DD, P::Or}},
      {"box-regular", {P::SI, P::WO, P::UD, P::And}},
      {"regular", {P::SI, P::WO, P::Or, P::And}},
      {"diamond-normal", {P::SI, P::WO, P::DD, P::Or, P::Bot}},
      {"box-normal", {P::SI, P::WO, P::UD, P::And, P::Top}},
      {"subordination algebra", {P::SI, P::WO, P::Or, P::And, P::Bot, P::Top}},
  };
  return table;
}

// Classes whose properties cannot be evaluated on the carrier are left out.
// With strict_boolean, "subordination algebra" also demands a Boolean carrier.
inline std::vector<std::string> classify(const ProtoSubAlg& s, bool strict_boolean = false) {
  std::vector<std::optional<bool>> cache(kAllProperties.size());
  auto has = [&](Property p) {
    auto& slot = cache[static_cast<std::size_t>(p)];
    if (!slot) slot = property_applicable(s, p) && check_property(s, p).holds;
    return *slot;
  };
  std::vector<std::string> out;
  for (const auto& c : named_classes()) {
    bool ok = true;
    for (Property p : c.props) ok = ok && has(p);
    if (ok && strict_boolean && c.name == "subordination algebra")
      ok = s.lattice() && s.lattice()->is_boolean();
    if (ok) out.emplace_back(c.name);
  }
  return out;
}

inline bool is_subordination_algebra(const ProtoSubAlg& s) {
  using P = Property;
  if (!s.lattice()) return false;
  for (P p : {P::SI, P::WO, P::Or, P::And, P::Bot, P::Top})
    if (!holds(s, p)) return false;
  return true;
}

enum class Rule { Bot, Top, SI, WO, And, Or, CT, T };

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Bot: return "BOT";
    case Rule::Top: return "TOP";
    case Rule::SI: return "SI";
    case Rule::WO: return "WO";
    case Rule::And: return "AND";
    case Rule::Or: return "OR";
    case Rule::CT: return "CT";
    case Rule::T: return "T";
  }
  return "?";
}

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::initializer_list<Rule> rules) {
    for (Rule r : rules) add(r);
  }
  RuleSet& add(Rule r) {
    bits_ |= 1U << static_cast<unsigned>(r);
    return *this;
  }
  bool has(Rule r) const { return (bits_ >> static_cast<unsigned>(r)) & 1U; }
  bool subset_of(const RuleSet& o) const { return (bits_ & ~o.bits_) == 0; }
  friend bool operator==(const RuleSet&, const RuleSet&) = default;

  static std::optional<Rule> parse(std::string_view s) {
    for (Rule r : {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or, Rule::CT, Rule::T})
      if (to_string(r) == s) return r;
    return std::nullopt;
  }
  std::vector<Rule> rules() const {
    std::vector<Rule> out;
    for (Rule r : {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or, Rule::CT, Rule::T})
      if (has(r)) out.push_back(r);
    return out;
  }

 private:
  unsigned bits_ = 0;
};

inline Property rule_property(Rule r) {
  switch (r) {
    case Rule::Bot: return Property::Bot;
    case Rule::Top: return Property::Top;
    case Rule::SI: return Property::SI;
    case Rule::WO: return Property::WO;
    case Rule::And: return Property::And;
    case Rule::Or: return Property::Or;
    case Rule::CT: return Property::CT;
    case Rule::T: return Property::T;
  }
  return Property::SI;
}

// Rows of the closure table: 1 = ⊤ SI WO AND, 2 adds OR, 3 adds CT, 4 adds both.
inline RuleSet system_rules(int i) {
  RuleSet r{Rule::Top, Rule::SI, Rule::WO, Rule::And};
  if (i < 1 || i > 4) throw InputError("system index must be 1..4");
  if (i == 2 || i == 4) r.add(Rule::Or);
  if (i == 3 || i == 4) r.add(Rule::CT);
  return r;
}

namespace detail {
inline bool grow(ElementSet& target, const ElementSet& add) {
  ElementSet before = target;
  target |= add;
  return !(before == target);
}

// Closure of s under a binary operation, each new pair combined once.
template <class Op>
ElementSet binary_closure(ElementSet s, Op op) {
  std::vector<Elem> members = s.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Elem m = op(members[i], members[j]);
      if (!s.test(m)) {
        s.set(m);
        members.push_back(m);
      }
    }
  return s;
}

// In a distributive lattice a nonempty up-set closed under meets is the
// principal filter of its meet; dually for down-sets and joins.
inline ElementSet meet_closure(const FinLattice& L, const ElementSet& s) {
  if (s.empty()) return s;
  if (L.is_distributive() && L.poset().up_closure(s) == s) return L.poset().up(L.meet_all(s));
  return binary_closure(s, [&](Elem a, Elem b) { return L.meet(a, b); });
}

inline ElementSet join_closure(const FinLattice& L, const ElementSet& s) {
  if (s.empty()) return s;
  if (L.is_distributive() && L.poset().down_closure(s) == s) return L.poset().down(L.join_all(s));
  return binary_closure(s, [&](Elem a, Elem b) { return L.join(a, b); });
}
}  // namespace detail

// Least fixpoint of the one-step consequence operator of `rules`.
inline Relation close(const Carrier& c, Relation r, RuleSet rules) {
  const FinPoset& P = *c.poset;
  const std::size_t n = c.size();
  for (Rule rule : rules.rules()) {
    bool lattice_rule = rule == Rule::And || rule == Rule::Or || rule == Rule::CT;
    if (lattice_rule && !c.lattice) throw MissingStructure(std::string(to_string(rule)), "lattice operations");
    if (rule == Rule::Bot && !P.bottom()) throw MissingStructure("BOT", "a bottom element");
    if (rule == Rule::Top && !P.top()) throw MissingStructure("TOP", "a top element");
  }
  const FinLattice* L = c.lattice.get();
  bool changed = true;
  while (changed) {
    changed = false;
    if (rules.has(Rule::Bot) && !r.contains(*P.bottom(), *P.bottom())) {
      r.insert(*P.bottom(), *P.bottom());
      changed = true;
    }
    if (rules.has(Rule::Top) && !r.contains(*P.top(), *P.top())) {
      r.insert(*P.top(), *P.top());
      changed = true;
    }
    if (rules.has(Rule::WO))
      for (Elem a = 0; a < n; ++a) changed |= detail::grow(r.row(a), P.up_closure(r.image(a)));
    if (rules.has(Rule::SI))
      for (Elem a = 0; a < n; ++a)
        for (Elem b : P.up(a)) changed |= detail::grow(r.row(a), r.image(b));
    if (rules.has(Rule::And))
      for (Elem a = 0; a < n; ++a) changed |= detail::grow(r.row(a), detail::meet_closure(*L, r.image(a)));
    if (rules.has(Rule::Or))
      for (Elem x = 0; x < n; ++x) {
        ElementSet pre = detail::join_closure(*L, r.preimage(x));
        for (Elem a : pre)
          if (!r.contains(a, x)) {
            r.insert(a, x);
            changed = true;
          }
      }
    if (rules.has(Rule::CT))
      for (Elem a = 0; a < n; ++a)
        for (Elem b : r.image(a)) changed |= detail::grow(r.row(a), r.image(L->meet(a, b)));
    if (rules.has(Rule::T))
      for (Elem a = 0; a < n; ++a)
        for (Elem b : r.image(a)) changed |= detail::grow(r.row(a), r.image(b));
  }
  return r;
}

inline ProtoSubAlg close(const ProtoSubAlg& s, RuleSet rules) {
  ProtoSubAlg out = s;
  out.prec = close(s.carrier, s.prec, rules);
  return out;
}

inline ProtoSubAlg close_i(const ProtoSubAlg& s, int i) {
  if (!s.lattice()) throw MissingStructure("close_i", "a bounded lattice carrier");
  return close(s, system_rules(i));
}

}  // namespace iosa
