#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "completion.hpp"
#include "duality.hpp"
#include "json_io.hpp"
#include "slanted.hpp"
#include "subordination.hpp"

namespace iosa {

// Default: "(DD)"/"(UD)" used as hypotheses also require nonempty images
// (preimages). Literal: the table formulas everywhere, the preimage form of
// (SL2), the stated map classes for the box side of output maximality, and
// the J-order readings of the relational S9/SL1 conditions.
enum class Reading { Default, Literal };

inline std::string_view to_string(Reading r) { return r == Reading::Default ? "default" : "literal"; }

// ---------------------------------------------------------------- instances

struct CarrierInfo {
  Carrier carrier;
  std::shared_ptr<const CanonicalExtension> ext;
  bool distributive = false;
};

inline std::shared_ptr<const CarrierInfo> carrier_info(Carrier c) {
  auto info = std::make_shared<CarrierInfo>();
  info->ext = std::make_shared<const CanonicalExtension>(dm_completion(*c.poset));
  info->distributive = c.lattice && c.lattice->is_distributive();
  info->carrier = std::move(c);
  return info;
}

struct Instance {
  std::string id;
  ProtoSubAlg sub;
  std::shared_ptr<const CarrierInfo> info;
  bool carrier_only = false;  // completion and negation checks only
};

inline Instance make_instance(std::string id, const std::shared_ptr<const CarrierInfo>& info, Relation prec,
                              std::optional<std::vector<Elem>> neg, bool carrier_only = false) {
  Instance in{std::move(id), make_subalg(info->carrier, std::move(prec)), info, carrier_only};
  if (neg) in.sub.neg = std::move(neg);
  return in;
}

// All relations on the carrier in bit order (pair (a,b) is bit a*n+b).
inline std::vector<ProtoSubAlg> enumerate_relations(const Carrier& c, const std::vector<Property>& filter = {}) {
  const std::size_t n = c.size();
  if (n * n > 16) throw TooLarge("exhaustive enumeration needs 2^(n^2) <= 2^16");
  std::vector<ProtoSubAlg> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
    ProtoSubAlg s = make_subalg(c, Relation::from_bits(n, bits));
    bool keep = true;
    for (Property p : filter) keep = keep && property_applicable(s, p) && holds(s, p);
    if (keep) out.push_back(std::move(s));
  }
  return out;
}

// Subordinations obtained by closing {(j, t_j) : j join-irreducible} under
// BOT, TOP, SI, WO, AND, OR, deduplicated in first-seen order. On a finite
// distributive lattice this is every subordination.
inline std::vector<Relation> closure_generated_subordinations(const Carrier& c) {
  if (!c.lattice) throw NotALattice(0, 0, "lattice carrier");
  const FinLattice& L = *c.lattice;
  const std::size_t n = L.size();
  std::vector<Elem> J = join_irreducibles(L).to_vector();
  double seeds = std::pow(static_cast<double>(n), static_cast<double>(J.size()));
  if (seeds > 1e6) throw TooLarge("closure-generated enumeration over more than 10^6 seeds");
  RuleSet rules;
  for (Rule r : {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or}) rules.add(r);
  std::set<std::vector<std::pair<Elem, Elem>>> seen;
  std::vector<Relation> out;
  std::vector<Elem> t(J.size(), 0);
  while (true) {
    Relation seed(n);
    for (std::size_t k = 0; k < J.size(); ++k) seed.insert(J[k], t[k]);
    Relation r = close(c, seed, rules);
    if (seen.insert(r.pairs()).second) out.push_back(std::move(r));
    std::size_t k = J.size();
    while (k > 0 && ++t[k - 1] == n) t[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

// Each pair independently with probability per_mille / 1000.
template <class Rng>
Relation random_relation(std::size_t n, unsigned per_mille, Rng& rng) {
  Relation r(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (rng() % 1000 < per_mille) r.insert(a, b);
  return r;
}

// ---------------------------------------------------------------- context

class CheckContext {
 public:
  CheckContext(const Instance& inst, Reading reading) : inst_(inst), reading_(reading) {}

  const Instance& instance() const { return inst_; }
  const ProtoSubAlg& s() const { return inst_.sub; }
  Reading reading() const { return reading_; }
  const CanonicalExtension& ext() const { return *inst_.info->ext; }
  const FinLattice* lattice() const { return inst_.sub.lattice(); }
  bool distributive() const { return inst_.info->distributive; }
  std::size_t n() const { return inst_.sub.size(); }

  bool has(Property p) {
    auto& slot = props_[static_cast<std::size_t>(p)];
    if (!slot) slot = property_applicable(s(), p) && check_property(s(), p).holds;
    return *slot;
  }

  bool images_nonempty() {
    if (!images_nonempty_) {
      bool ok = true;
      for (Elem a = 0; a < n() && ok; ++a) ok = s().prec.image(a).any();
      images_nonempty_ = ok;
    }
    return *images_nonempty_;
  }
  bool preimages_nonempty() {
    if (!preimages_nonempty_) {
      bool ok = true;
      for (Elem a = 0; a < n() && ok; ++a) ok = s().prec.preimage(a).any();
      preimages_nonempty_ = ok;
    }
    return *preimages_nonempty_;
  }

  bool dd_hyp() { return has(Property::DD) && (reading_ == Reading::Literal || images_nonempty()); }
  bool ud_hyp() { return has(Property::UD) && (reading_ == Reading::Literal || preimages_nonempty()); }
  bool directed() { return has(Property::SI) && has(Property::WO) && dd_hyp() && ud_hyp(); }
  bool subordination_lattice() { return distributive() && is_subordination_algebra(s()); }

  const SlantedAlg& sa() {
    if (!sa_) sa_ = build_slanted(s(), inst_.info->ext);
    return *sa_;
  }

  const ValidityResult& validity(const CompiledInequality& q) {
    auto it = valid_.find(q.text);
    if (it == valid_.end()) it = valid_.emplace(q.text, valid(sa(), q)).first;
    return it->second;
  }

  const SubordinationSpace& jspace() {
    if (!jspace_) jspace_ = build_space_jirr(sa());
    return *jspace_;
  }
  const SubordinationSpace& pfspace() {
    if (!pfspace_) pfspace_ = build_space_primefilters(s());
    return *pfspace_;
  }

 private:
  const Instance& inst_;
  Reading reading_;
  std::array<std::optional<bool>, kAllProperties.size()> props_{};
  std::optional<bool> images_nonempty_, preimages_nonempty_;
  std::optional<SlantedAlg> sa_;
  std::map<std::string, ValidityResult> valid_;
  std::optional<SubordinationSpace> jspace_, pfspace_;
};

// ---------------------------------------------------------------- checks

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

enum class Scope { Relation, Carrier };

struct Gate {
  std::string text;
  std::function<bool(CheckContext&)> pred;
};

// A side of an implication or biconditional; may append a note (e.g. a
// failing assignment) when it evaluates to false.
struct Side {
  std::string text;
  std::function<bool(CheckContext&, std::string&)> eval;
};

struct CheckSpec {
  std::string id;
  std::string group;
  std::string statement;
  Scope scope = Scope::Relation;
  Gate pre;
  std::function<Outcome(CheckContext&)> eval;
};

namespace gates {

inline Gate none() { return {"", [](CheckContext&) { return true; }}; }

inline Gate all(std::vector<Gate> gs) {
  std::string text;
  for (const auto& g : gs)
    if (!g.text.empty()) text += (text.empty() ? "" : " + ") + g.text;
  return {text, [gs = std::move(gs)](CheckContext& c) {
            for (const auto& g : gs)
              if (!g.pred(c)) return false;
            return true;
          }};
}

inline Gate prop(Property p) {
  return {std::string(to_string(p)), [p](CheckContext& c) { return c.has(p); }};
}
inline Gate dd() { return {"DD", [](CheckContext& c) { return c.dd_hyp(); }}; }
inline Gate ud() { return {"UD", [](CheckContext& c) { return c.ud_hyp(); }}; }
inline Gate directed() { return {"directed", [](CheckContext& c) { return c.directed(); }}; }
inline Gate lattice() { return {"lattice", [](CheckContext& c) { return c.lattice() != nullptr; }}; }
inline Gate distributive() { return {"distributive lattice", [](CheckContext& c) { return c.distributive(); }}; }
inline Gate has_bottom() {
  return {"bottom", [](CheckContext& c) { return c.s().poset().bottom().has_value(); }};
}
inline Gate has_top() { return {"top", [](CheckContext& c) { return c.s().poset().top().has_value(); }}; }
inline Gate small(std::size_t n) {
  return {"n <= " + std::to_string(n), [n](CheckContext& c) { return c.n() <= n; }};
}
inline Gate subordination_lattice() {
  return {"subordination lattice", [](CheckContext& c) { return c.subordination_lattice(); }};
}
inline Gate negation(std::string text, std::function<bool(const NegationLaws&)> f) {
  return {std::move(text), [f = std::move(f)](CheckContext& c) {
            return c.s().neg && f(check_negation_laws(c.s().poset(), *c.s().neg));
          }};
}

}  // namespace gates

namespace sides {

inline Side prop(Property p) {
  return {std::string(to_string(p)), [p](CheckContext& c, std::string&) {
            if (!property_applicable(c.s(), p)) throw MissingStructure(std::string(to_string(p)), "the carrier structure");
            return c.has(p);
          }};
}

inline std::string witness_text(const ValidityResult& r) {
  std::string s;
  for (const auto& [v, e] : r.witness) s += (s.empty() ? "" : ", ") + v + "=" + std::to_string(e);
  return s;
}

inline Side ineq(const std::string& text) {
  auto q = std::make_shared<CompiledInequality>(CompiledInequality::parse(text));
  return {"valid(" + text + ")", [q](CheckContext& c, std::string& note) {
            const ValidityResult& r = c.validity(*q);
            if (!r.valid) note += (note.empty() ? "" : "; ") + q->text + " fails at " + witness_text(r);
            return r.valid;
          }};
}

inline Side both(Side a, Side b) {
  return {a.text + " and " + b.text, [a, b](CheckContext& c, std::string& note) {
            bool x = a.eval(c, note);
            bool y = b.eval(c, note);
            return x && y;
          }};
}

inline Side pred(std::string text, std::function<bool(CheckContext&)> f) {
  return {std::move(text), [f = std::move(f)](CheckContext& c, std::string&) { return f(c); }};
}

// A universally quantified condition that reports its first failure.
inline Side forall(std::string text, std::function<std::optional<std::string>(CheckContext&)> first_failure) {
  return {std::move(text), [f = std::move(first_failure)](CheckContext& c, std::string& note) {
            auto fail = f(c);
            if (fail) note += (note.empty() ? "" : "; ") + *fail;
            return !fail;
          }};
}

}  // namespace sides

inline CheckSpec make_iff(std::string id, std::string group, Gate pre, Side lhs, Side rhs) {
  std::string stmt = (pre.text.empty() ? "" : pre.text + ": ") + lhs.text + " iff " + rhs.text;
  return {std::move(id), std::move(group), std::move(stmt), Scope::Relation, std::move(pre),
          [lhs, rhs](CheckContext& c) {
            std::string note;
            bool l = lhs.eval(c, note), r = rhs.eval(c, note);
            if (l == r) return Outcome{};
            return Outcome{Verdict::Fail, std::string("lhs=") + (l ? "true" : "false") + " rhs=" + (r ? "true" : "false") +
                                              (note.empty() ? "" : " (" + note + ")")};
          }};
}

inline CheckSpec make_implies(std::string id, std::string group, Gate pre, Side lhs, Side rhs) {
  std::string stmt = (pre.text.empty() ? "" : pre.text + ": ") + lhs.text + " implies " + rhs.text;
  return {std::move(id), std::move(group), std::move(stmt), Scope::Relation, std::move(pre),
          [lhs, rhs](CheckContext& c) {
            std::string note;
            if (!lhs.eval(c, note)) return Outcome{};
            if (rhs.eval(c, note)) return Outcome{};
            return Outcome{Verdict::Fail, "lhs=true rhs=false" + (note.empty() ? "" : " (" + note + ")")};
          }};
}

inline CheckSpec make_always(std::string id, std::string group, Gate pre, Side body, Scope scope = Scope::Relation) {
  std::string stmt = (pre.text.empty() ? "" : pre.text + ": ") + body.text;
  return {std::move(id), std::move(group), std::move(stmt), scope, std::move(pre), [body](CheckContext& c) {
            std::string note;
            if (body.eval(c, note)) return Outcome{};
            return Outcome{Verdict::Fail, note.empty() ? std::string("condition fails") : note};
          }};
}

// ---------------------------------------------------------------- output maximality

enum class MapSide { Diamond, Box };

struct Prop41Result {
  bool holds = true;
  MapSide side = MapSide::Diamond;
  std::string reason;      // "not-dominated", "not-in-class", "larger-map" / "smaller-map"
  std::vector<Elem> map;   // offending map, base indices
};

namespace detail {

inline std::vector<Elem> to_base(const CanonicalExtension& e, const std::vector<Elem>& f) {
  std::vector<Elem> out;
  for (Elem u : f) {
    auto a = e.preimage(u);
    if (!a) throw InputError("map leaves the carrier");
    out.push_back(*a);
  }
  return out;
}

inline bool map_monotone(const FinLattice& L, const std::vector<Elem>& f) {
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b : L.poset().up(a))
      if (!L.leq(f[a], f[b])) return false;
  return true;
}

inline bool join_preserving(const FinLattice& L, const std::vector<Elem>& f) {
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      if (f[L.join(a, b)] != L.join(f[a], f[b])) return false;
  return true;
}

inline bool meet_preserving(const FinLattice& L, const std::vector<Elem>& f) {
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      if (f[L.meet(a, b)] != L.meet(f[a], f[b])) return false;
  return true;
}

inline bool diamond_class(const FinLattice& L, const std::vector<Elem>& f, int i) {
  if (!map_monotone(L, f)) return false;
  if ((i == 2 || i == 4) && !join_preserving(L, f)) return false;
  if (i == 3 || i == 4)
    for (Elem a = 0; a < L.size(); ++a)
      if (!L.leq(f[a], f[L.meet(a, f[a])])) return false;
  return true;
}

inline bool box_class_stated(const FinLattice& L, const std::vector<Elem>& g, int i) {
  if (!map_monotone(L, g)) return false;
  if ((i == 2 || i == 4) && !meet_preserving(L, g)) return false;
  if (i == 3 || i == 4)
    for (Elem a = 0; a < L.size(); ++a)
      if (!L.leq(g[L.join(a, g[a])], g[a])) return false;
  return true;
}

// a ≺_g b iff a ≤ g(b), tested against the rules of system i.
inline bool box_class_induced(const Carrier& c, const std::vector<Elem>& g, int i) {
  const FinLattice& L = *c.lattice;
  Relation r(L.size());
  for (Elem b = 0; b < L.size(); ++b)
    for (Elem a : L.poset().down(g[b])) r.insert(a, b);
  ProtoSubAlg s = make_subalg(c, std::move(r));
  for (Rule rule : system_rules(i).rules())
    if (!holds(s, rule_property(rule))) return false;
  return true;
}

// Calls f on every map m with lo[a] ≤ m[a] ≤ hi[a]; stops when f returns false.
inline void for_each_map_between(const FinLattice& L, const std::vector<Elem>& lo, const std::vector<Elem>& hi,
                                 const std::function<bool(const std::vector<Elem>&)>& f) {
  const std::size_t n = L.size();
  std::vector<std::vector<Elem>> choices(n);
  for (Elem a = 0; a < n; ++a) {
    choices[a] = (L.poset().up(lo[a]) & L.poset().down(hi[a])).to_vector();
    if (choices[a].empty()) return;
  }
  std::vector<std::size_t> k(n, 0);
  std::vector<Elem> m(n);
  while (true) {
    for (Elem a = 0; a < n; ++a) m[a] = choices[a][k[a]];
    if (!f(m)) return;
    std::size_t i = n;
    while (i > 0 && ++k[i - 1] == choices[i - 1].size()) k[--i] = 0;
    if (i == 0) return;
  }
}

inline bool pointwise_leq(const FinLattice& L, const std::vector<Elem>& f, const std::vector<Elem>& g) {
  for (Elem a = 0; a < f.size(); ++a)
    if (!L.leq(f[a], g[a])) return false;
  return true;
}

}  // namespace detail

// ◇ᵢ is the largest map below ◇ in item i's class; ■ᵢ the least map above ■
// in the dual class. diamond_override replaces ◇ᵢ (fault injection).
inline Prop41Result verify_prop41(const ProtoSubAlg& s, int i, MapSide side, Reading reading = Reading::Default,
                                  const std::optional<std::vector<Elem>>& override_map = std::nullopt) {
  if (i < 1 || i > 4) throw InputError("system index must be 1..4");
  const FinLattice* Lp = s.lattice();
  if (!Lp) throw MissingStructure("output maximality", "a lattice carrier");
  const FinLattice& L = *Lp;
  if (L.size() > 4) throw TooLarge("map enumeration beyond 4 elements");
  auto ext = std::make_shared<const CanonicalExtension>(dm_completion(s.poset()));
  SlantedAlg base = build_slanted(s, ext);
  SlantedAlg closed = build_slanted(close_i(s, i), ext);
  Prop41Result res;
  res.side = side;
  auto fail = [&](std::string why, std::vector<Elem> m) {
    res.holds = false;
    res.reason = std::move(why);
    res.map = std::move(m);
    return res;
  };
  const std::size_t n = L.size();
  if (side == MapSide::Diamond) {
    std::vector<Elem> dia = detail::to_base(*ext, base.diamond);
    std::vector<Elem> di = override_map ? *override_map : detail::to_base(*ext, closed.diamond);
    if (!detail::pointwise_leq(L, di, dia)) return fail("not-dominated", di);
    if (!detail::diamond_class(L, di, i)) return fail("not-in-class", di);
    std::optional<std::vector<Elem>> bad;
    detail::for_each_map_between(L, std::vector<Elem>(n, L.bot()), dia, [&](const std::vector<Elem>& f) {
      if (detail::diamond_class(L, f, i) && !detail::pointwise_leq(L, f, di)) {
        bad = f;
        return false;
      }
      return true;
    });
    if (bad) return fail("larger-map", *bad);
    return res;
  }
  std::vector<Elem> box = detail::to_base(*ext, base.box);
  std::vector<Elem> bi = override_map ? *override_map : detail::to_base(*ext, closed.box);
  auto in_class = [&](const std::vector<Elem>& g) {
    return reading == Reading::Literal ? detail::box_class_stated(L, g, i) : detail::box_class_induced(s.carrier, g, i);
  };
  if (!detail::pointwise_leq(L, box, bi)) return fail("not-dominated", bi);
  if (!in_class(bi)) return fail("not-in-class", bi);
  std::optional<std::vector<Elem>> bad;
  detail::for_each_map_between(L, box, std::vector<Elem>(n, L.top()), [&](const std::vector<Elem>& g) {
    if (in_class(g) && !detail::pointwise_leq(L, bi, g)) {
      bad = g;
      return false;
    }
    return true;
  });
  if (bad) return fail("smaller-map", *bad);
  return res;
}

// ---------------------------------------------------------------- catalog

namespace detail {

inline std::string set_text(const ElementSet& s) {
  std::string t = "{";
  bool first = true;
  for (Elem x : s) {
    t += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return t + "}";
}

inline const std::vector<ElementSet>& cached_subsets(std::size_t n) {
  static const std::array<std::vector<ElementSet>, kSubsetScanLimit + 1> table = [] {
    std::array<std::vector<ElementSet>, kSubsetScanLimit + 1> t;
    for (std::size_t k = 0; k <= kSubsetScanLimit; ++k) t[k] = nonempty_subsets(k);
    return t;
  }();
  if (n > kSubsetScanLimit) throw TooLarge("subset scan beyond 10 elements");
  return table[n];
}

inline ElementSet embed_all(const CanonicalExtension& e, const ElementSet& s) { return embed_set(e, s); }

}  // namespace detail

inline std::vector<CheckSpec> build_catalog(Reading reading = Reading::Default) {
  using P = Property;
  namespace g = gates;
  namespace sd = sides;
  std::vector<CheckSpec> cat;

  // negation extensions
  {
    const std::string grp = "negation-extension";
    auto sigma_ok = [](const NegationLaws& l) { return l.antitone && l.left_self_adjoint; };
    auto pi_ok = [](const NegationLaws& l) { return l.antitone && l.right_self_adjoint; };
    auto laws_of = [](CheckContext& c, bool sigma) {
      const auto& e = c.ext();
      auto t = sigma ? extend_negation_sigma(e, *c.s().neg) : extend_negation_pi(e, *c.s().neg);
      return check_negation_laws(e.delta, t);
    };
    struct Item {
      std::string id;
      bool sigma;
      std::function<bool(const NegationLaws&)> extra;
      std::string extra_text;
      std::function<bool(const NegationLaws&)> concl;
      std::string concl_text;
    };
    std::vector<Item> items = {
        {"neg-sigma-antitone", true, nullptr, "", [](auto& l) { return l.antitone; }, "extension antitone"},
        {"neg-sigma-left-adjoint", true, nullptr, "", [](auto& l) { return l.left_self_adjoint; },
         "extension left self-adjoint"},
        {"neg-sigma-above-double", true, nullptr, "", [](auto& l) { return l.above_double; },
         "extension satisfies ~~u <= u"},
        {"neg-sigma-below-double", true, [](auto& l) { return l.below_double; }, "a <= ~~a",
         [](auto& l) { return l.below_double; }, "extension satisfies u <= ~~u"},
        {"neg-sigma-involutive", true, [](auto& l) { return l.involutive; }, "involutive",
         [](auto& l) { return l.involutive; }, "extension involutive"},
        {"neg-pi-antitone", false, nullptr, "", [](auto& l) { return l.antitone; }, "extension antitone"},
        {"neg-pi-right-adjoint", false, nullptr, "", [](auto& l) { return l.right_self_adjoint; },
         "extension right self-adjoint"},
        {"neg-pi-below-double", false, nullptr, "", [](auto& l) { return l.below_double; },
         "extension satisfies u <= ~~u"},
        {"neg-pi-above-double", false, [](auto& l) { return l.above_double; }, "~~a <= a",
         [](auto& l) { return l.above_double; }, "extension satisfies ~~u <= u"},
        {"neg-pi-involutive", false, [](auto& l) { return l.involutive; }, "involutive",
         [](auto& l) { return l.involutive; }, "extension involutive"},
    };
    for (auto& it : items) {
      auto base = it.sigma ? sigma_ok : pi_ok;
      std::string gate_text =
          std::string(it.sigma ? "antitone + left self-adjoint" : "antitone + right self-adjoint") +
          (it.extra_text.empty() ? "" : " + " + it.extra_text);
      auto extra = it.extra;
      Gate pre = g::negation(gate_text, [base, extra](const NegationLaws& l) { return base(l) && (!extra || extra(l)); });
      bool sigma = it.sigma;
      auto concl = it.concl;
      cat.push_back(make_always(it.id, grp, pre,
                                sd::pred(it.concl_text, [laws_of, sigma, concl](CheckContext& c) {
                                  return concl(laws_of(c, sigma));
                                }),
                                Scope::Carrier));
    }
    cat.push_back(make_always(
        "neg-sigma-pi-agree", grp,
        g::negation("antitone + involutive", [](const NegationLaws& l) { return l.antitone && l.involutive; }),
        sd::pred("sigma and pi extensions coincide",
                 [](CheckContext& c) {
                   return extend_negation_sigma(c.ext(), *c.s().neg) == extend_negation_pi(c.ext(), *c.s().neg);
                 }),
        Scope::Carrier));
  }

  // completion
  {
    const std::string grp = "completion";
    cat.push_back(make_always("completion-dense", grp, g::none(),
                              sd::pred("completion dense", [](CheckContext& c) { return verify_dense(c.ext()); }),
                              Scope::Carrier));
    cat.push_back(make_always("completion-compact", grp, g::none(),
                              sd::pred("completion compact", [](CheckContext& c) { return verify_compact(c.ext()); }),
                              Scope::Carrier));
    cat.push_back(make_always(
        "completion-embedding", grp, g::none(),
        sd::pred("embed is an order embedding", [](CheckContext& c) { return embed_is_order_embedding(c.ext()); }),
        Scope::Carrier));
    cat.push_back(make_always("completion-lattice-iso", grp, g::lattice(),
                              sd::pred("embed is an isomorphism",
                                       [](CheckContext& c) {
                                         return c.ext().delta.size() == c.n() && embed_is_order_embedding(c.ext());
                                       }),
                              Scope::Carrier));
  }

  // output equivalence
  {
    const std::string grp = "output-equivalence";
    cat.push_back(make_always(
        "prec-bounds-diamond-and-box", grp, g::none(),
        sd::forall("a<b implies <>a <= b and a <= []b", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          const auto& e = c.ext().embed;
          for (auto [a, b] : c.s().prec.pairs())
            if (!d.leq(sa.diamond[a], e[b]) || !d.leq(e[a], sa.box[b]))
              return "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "diamond-bound-iff-prec", grp, g::all({g::prop(P::WO), g::dd()}),
        sd::forall("<>a <= b iff a<b", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          for (Elem a = 0; a < c.n(); ++a)
            for (Elem b = 0; b < c.n(); ++b)
              if (sa.delta().leq(sa.diamond[a], c.ext().embed[b]) != c.s().prec.contains(a, b))
                return "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "box-bound-iff-prec", grp, g::all({g::prop(P::SI), g::ud()}),
        sd::forall("a <= []b iff a<b", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          for (Elem a = 0; a < c.n(); ++a)
            for (Elem b = 0; b < c.n(); ++b)
              if (sa.delta().leq(c.ext().embed[a], sa.box[b]) != c.s().prec.contains(a, b))
                return "pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
          return std::nullopt;
        })));
  }

  // directedness
  {
    const std::string grp = "directedness";
    cat.push_back(make_implies("or-implies-ud", grp, g::lattice(), sd::prop(P::Or), sd::prop(P::UD)));
    cat.push_back(make_implies("and-implies-dd", grp, g::lattice(), sd::prop(P::And), sd::prop(P::DD)));
    cat.push_back(make_iff("ud-iff-or-under-si", grp, g::all({g::lattice(), g::prop(P::SI)}), sd::prop(P::UD),
                           sd::prop(P::Or)));
    cat.push_back(make_iff("dd-iff-and-under-wo", grp, g::all({g::lattice(), g::prop(P::WO)}), sd::prop(P::DD),
                           sd::prop(P::And)));
  }

  auto diamond_monotone = sd::pred("<> monotone", [](CheckContext& c) { return c.sa().diamond_monotone; });
  auto box_monotone = sd::pred("[] monotone", [](CheckContext& c) { return c.sa().box_monotone; });
  const std::string box_meet = "[]a & []b <= [](a & b)";
  const std::string diamond_join = "<>(a | b) <= <>a | <>b";

  // axioms to slanted inequalities
  {
    const std::string grp = "axioms-to-slanted";
    cat.push_back(make_always("si-gives-diamond-monotone", grp, g::prop(P::SI), diamond_monotone));
    cat.push_back(make_implies("and-gives-box-meet-on-dl", grp, g::all({g::prop(P::SI), g::distributive()}),
                               sd::prop(P::And), sd::ineq(box_meet)));
    cat.push_back(make_implies("and-gives-box-meet-under-ud", grp, g::all({g::prop(P::SI), g::ud(), g::lattice()}),
                               sd::prop(P::And), sd::ineq(box_meet)));
    cat.push_back(make_always("wo-gives-box-monotone", grp, g::prop(P::WO), box_monotone));
    cat.push_back(make_implies("or-gives-diamond-join-on-dl", grp, g::all({g::prop(P::WO), g::distributive()}),
                               sd::prop(P::Or), sd::ineq(diamond_join)));
    cat.push_back(make_implies("or-gives-diamond-join-under-dd", grp,
                               g::all({g::prop(P::WO), g::dd(), g::lattice()}), sd::prop(P::Or),
                               sd::ineq(diamond_join)));
    cat.push_back(
        make_implies("bot-gives-diamond-bot", grp, g::has_bottom(), sd::prop(P::Bot), sd::ineq("<>F <= F")));
    cat.push_back(make_implies("top-gives-box-top", grp, g::has_top(), sd::prop(P::Top), sd::ineq("T <= []T")));
  }

  // slanted inequalities back to axioms
  {
    const std::string grp = "slanted-to-axioms";
    Gate dia = g::all({g::prop(P::WO), g::dd()});
    Gate box = g::all({g::prop(P::SI), g::ud()});
    cat.push_back(make_iff("si-iff-diamond-monotone", grp, dia, sd::prop(P::SI), diamond_monotone));
    cat.push_back(make_iff("or-iff-diamond-join", grp, g::all({dia, g::lattice()}), sd::prop(P::Or),
                           sd::ineq(diamond_join)));
    cat.push_back(make_iff("bot-iff-diamond-bot", grp, g::all({dia, g::has_bottom()}), sd::prop(P::Bot),
                           sd::ineq("<>F <= F")));
    cat.push_back(make_iff("wo-iff-box-monotone", grp, box, sd::prop(P::WO), box_monotone));
    cat.push_back(
        make_iff("and-iff-box-meet", grp, g::all({box, g::lattice()}), sd::prop(P::And), sd::ineq(box_meet)));
    cat.push_back(make_iff("top-iff-box-top", grp, g::all({box, g::has_top()}), sd::prop(P::Top),
                           sd::ineq("T <= []T")));
  }

  // slanted classes
  {
    const std::string grp = "slanted-classes";
    auto flags = [](CheckContext& c) { return classify_slanted(c.sa()); };
    cat.push_back(make_iff("monotone-iff-slanted-monotone", grp, g::directed(),
                           sd::pred("SI + WO + DD + UD",
                                    [](CheckContext& c) {
                                      return c.has(P::SI) && c.has(P::WO) && c.has(P::DD) && c.has(P::UD);
                                    }),
                           sd::pred("slanted monotone", [flags](CheckContext& c) { return flags(c).monotone; })));
    cat.push_back(make_iff("regular-iff-slanted-regular", grp, g::all({g::directed(), g::lattice()}),
                           sd::pred("SI + WO + OR + AND",
                                    [](CheckContext& c) {
                                      return c.has(P::SI) && c.has(P::WO) && c.has(P::Or) && c.has(P::And);
                                    }),
                           sd::pred("slanted regular", [flags](CheckContext& c) { return *flags(c).regular; })));
    cat.push_back(make_iff(
        "subordination-iff-slanted-normal", grp, g::all({g::directed(), g::lattice()}),
        sd::pred("subordination algebra", [](CheckContext& c) { return is_subordination_algebra(c.s()); }),
        sd::pred("slanted normal", [flags](CheckContext& c) { return *flags(c).normal; })));
  }

  // extended output equivalence on closed and open elements
  {
    const std::string grp = "extended-output";
    Gate dia = g::all({g::prop(P::SI), g::dd(), g::prop(P::WO)});
    Gate box = g::all({g::prop(P::WO), g::ud(), g::prop(P::SI)});
    cat.push_back(make_always(
        "image-of-down-directed-is-down-directed", grp, dia,
        sd::forall("D down-directed implies <[D] down-directed", [](CheckContext& c) -> std::optional<std::string> {
          for (const auto& D : detail::cached_subsets(c.n()))
            if (is_down_directed(D, c.s().poset()) && !is_down_directed(c.s().prec.image(D), c.s().poset()))
              return "D=" + detail::set_text(D);
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "diamond-of-closed-is-meet-of-image", grp, dia,
        sd::forall("<>(meet D) = meet <[D] in K", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          for (const auto& D : detail::cached_subsets(c.n())) {
            if (!is_down_directed(D, c.s().poset())) continue;
            Elem k = d.meet_all(detail::embed_all(c.ext(), D));
            Elem want = d.meet_all(detail::embed_all(c.ext(), c.s().prec.image(D)));
            if (apply_diamond(sa, k) != want || !c.ext().closed.test(want)) return "D=" + detail::set_text(D);
          }
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "diamond-closed-below-element", grp, dia,
        sd::forall("<>k <= b implies a<b for some a >= k", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          const auto& e = c.ext().embed;
          for (Elem k : c.ext().closed) {
            Elem dk = apply_diamond(sa, k);
            for (Elem b = 0; b < c.n(); ++b) {
              if (!d.leq(dk, e[b])) continue;
              bool ok = false;
              for (Elem a = 0; a < c.n() && !ok; ++a) ok = d.leq(k, e[a]) && c.s().prec.contains(a, b);
              if (!ok) return "k=" + std::to_string(k) + " b=" + std::to_string(b);
            }
          }
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "diamond-closed-below-open", grp, dia,
        sd::forall("<>k <= o implies a<b for some a >= k, b <= o", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          const auto& e = c.ext().embed;
          for (Elem k : c.ext().closed) {
            Elem dk = apply_diamond(sa, k);
            for (Elem o : c.ext().open) {
              if (!d.leq(dk, o)) continue;
              bool ok = false;
              for (auto [a, b] : c.s().prec.pairs()) ok = ok || (d.leq(k, e[a]) && d.leq(e[b], o));
              if (!ok) return "k=" + std::to_string(k) + " o=" + std::to_string(o);
            }
          }
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "preimage-of-up-directed-is-up-directed", grp, box,
        sd::forall("U up-directed implies <^-1[U] up-directed", [](CheckContext& c) -> std::optional<std::string> {
          for (const auto& U : detail::cached_subsets(c.n()))
            if (is_up_directed(U, c.s().poset()) && !is_up_directed(c.s().prec.preimage(U), c.s().poset()))
              return "U=" + detail::set_text(U);
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "box-of-open-is-join-of-preimage", grp, box,
        sd::forall("[](join U) = join <^-1[U] in O", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          for (const auto& U : detail::cached_subsets(c.n())) {
            if (!is_up_directed(U, c.s().poset())) continue;
            Elem o = d.join_all(detail::embed_all(c.ext(), U));
            Elem want = d.join_all(detail::embed_all(c.ext(), c.s().prec.preimage(U)));
            if (apply_box(sa, o) != want || !c.ext().open.test(want)) return "U=" + detail::set_text(U);
          }
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "box-open-above-element", grp, box,
        sd::forall("a <= []o implies a<b for some b <= o", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          const auto& e = c.ext().embed;
          for (Elem o : c.ext().open) {
            Elem bo = apply_box(sa, o);
            for (Elem a = 0; a < c.n(); ++a) {
              if (!d.leq(e[a], bo)) continue;
              bool ok = false;
              for (Elem b = 0; b < c.n() && !ok; ++b) ok = d.leq(e[b], o) && c.s().prec.contains(a, b);
              if (!ok) return "a=" + std::to_string(a) + " o=" + std::to_string(o);
            }
          }
          return std::nullopt;
        })));
    cat.push_back(make_always(
        "box-open-above-closed", grp, box,
        sd::forall("k <= []o implies a<b for some a >= k, b <= o", [](CheckContext& c) -> std::optional<std::string> {
          const auto& sa = c.sa();
          const auto& d = sa.delta();
          const auto& e = c.ext().embed;
          for (Elem o : c.ext().open) {
            Elem bo = apply_box(sa, o);
            for (Elem k : c.ext().closed) {
              if (!d.leq(k, bo)) continue;
              bool ok = false;
              for (auto [a, b] : c.s().prec.pairs()) ok = ok || (d.leq(k, e[a]) && d.leq(e[b], o));
              if (!ok) return "k=" + std::to_string(k) + " o=" + std::to_string(o);
            }
          }
          return std::nullopt;
        })));
  }

  // correspondence
  {
    const std::string grp = "correspondence";
    Gate wdd = g::all({g::prop(P::WO), g::dd()});
    Gate wdds = g::all({g::prop(P::WO), g::dd(), g::prop(P::SI)});
    Gate wdds_l = g::all({wdds, g::lattice()});
    Gate suw_l = g::all({g::prop(P::SI), g::ud(), g::prop(P::WO), g::lattice()});
    cat.push_back(make_iff("prec-in-leq-iff-diamond-inflationary", grp, g::none(), sd::prop(P::PrecInLeq),
                           sd::ineq("a <= <>a")));
    cat.push_back(make_iff("prec-in-leq-iff-box-deflationary", grp, g::none(), sd::prop(P::PrecInLeq),
                           sd::ineq("[]a <= a")));
    cat.push_back(make_iff("leq-in-prec-iff-diamond-deflationary", grp, wdd, sd::prop(P::LeqInPrec),
                           sd::ineq("<>a <= a")));
    cat.push_back(make_iff("t-iff-diamond-dense", grp, wdds, sd::prop(P::T), sd::ineq("<>a <= <><>a")));
    cat.push_back(make_iff("d-iff-diamond-transitive", grp, wdds, sd::prop(P::D), sd::ineq("<><>a <= <>a")));
    cat.push_back(make_iff("ct-iff-diamond-cut", grp, wdds_l, sd::prop(P::CT), sd::ineq("<>a <= <>(a & <>a)")));
    Side sl2 = reading == Reading::Literal
                   ? sd::pred("SL2 (preimage form)", [](CheckContext& c) { return sl2_preimage_form(c.s()).holds; })
                   : sd::prop(P::SL2);
    cat.push_back(make_iff("sl2-iff-diamond-meet", grp, wdds_l, sl2, sd::ineq("<>(<>a & <>b) <= <>(a & b)")));
    cat.push_back(make_implies("ct-implies-t", grp, g::all({g::prop(P::SI), g::lattice()}), sd::prop(P::CT),
                               sd::prop(P::T)));
    Gate neg = g::all({g::directed(), g::negation("antitone + involutive + self-adjoint", [](const NegationLaws& l) {
                         return l.antitone && l.involutive && (l.left_self_adjoint || l.right_self_adjoint);
                       })});
    cat.push_back(make_iff("s6-iff-neg-diamond-is-box-neg", grp, neg, sd::prop(P::S6),
                           sd::both(sd::ineq("~<>a <= []~a"), sd::ineq("[]~a <= ~<>a"))));
    cat.push_back(make_iff("s6-iff-diamond-neg-is-neg-box", grp, neg, sd::prop(P::S6),
                           sd::both(sd::ineq("<>~a <= ~[]a"), sd::ineq("~[]a <= <>~a"))));
    cat.push_back(
        make_iff("s9-fwd-iff-box-inequality", grp, suw_l, sd::prop(P::S9Fwd), sd::ineq("[](a | []b) <= []a | []b")));
    cat.push_back(
        make_iff("s9-bwd-iff-box-inequality", grp, suw_l, sd::prop(P::S9Bwd), sd::ineq("[]a | []b <= [](a | []b)")));
    cat.push_back(
        make_iff("sl1-iff-box-inequality", grp, suw_l, sd::prop(P::SL1), sd::ineq("[](a | b) <= []([]a | []b)")));
  }

  // output maximality
  {
    const std::string grp = "output-maximality";
    Gate pre = g::all({g::lattice(), g::small(4), g::directed()});
    for (int i = 1; i <= 4; ++i)
      for (MapSide side : {MapSide::Diamond, MapSide::Box}) {
        bool dia = side == MapSide::Diamond;
        std::string id = std::string(dia ? "diamond-" : "box-") + std::to_string(i) +
                         (dia ? "-largest-below-diamond" : "-least-above-box");
        std::string text = dia ? "<>_" + std::to_string(i) + " is the largest class map below <>"
                               : "[]_" + std::to_string(i) + " is the least class map above []";
        cat.push_back(make_always(id, grp, pre,
                                  sd::forall(text, [i, side, reading](CheckContext& c) -> std::optional<std::string> {
                                    auto r = verify_prop41(c.s(), i, side, reading);
                                    if (r.holds) return std::nullopt;
                                    std::string m;
                                    for (Elem x : r.map) m += (m.empty() ? "" : ",") + std::to_string(x);
                                    return r.reason + " [" + m + "]";
                                  })));
      }
  }

  // dual spaces
  {
    const std::string grp = "space-isomorphism";
    cat.push_back(make_always(
        "jirr-and-prime-filter-spaces-isomorphic", grp, g::subordination_lattice(),
        sd::pred("spaces isomorphic",
                 [](CheckContext& c) { return spaces_isomorphic(c.jspace(), c.pfspace()).has_value(); })));
  }
  {
    const std::string grp = "space-correspondence";
    Gate pre = g::subordination_lattice();
    auto rel = [](RelCondition rc) {
      return sd::pred(std::string(to_string(rc)), [rc](CheckContext& c) { return check_relational(c.jspace(), rc).holds; });
    };
    const bool lit = reading == Reading::Literal;
    cat.push_back(make_iff("prec-in-leq-iff-reflexive", grp, pre, sd::prop(P::PrecInLeq), rel(RelCondition::Reflexive)));
    cat.push_back(make_iff("d-iff-transitive", grp, pre, sd::prop(P::D), rel(RelCondition::Transitive)));
    cat.push_back(make_iff("t-iff-dense", grp, pre, sd::prop(P::T), rel(RelCondition::Dense)));
    cat.push_back(make_iff("proper-iff-proper-space", grp, pre, sd::prop(P::Proper), rel(RelCondition::Proper)));
    cat.push_back(make_iff("ct-iff-ct-rel", grp, pre, sd::prop(P::CT), rel(RelCondition::CT)));
    cat.push_back(make_iff("s9-fwd-iff-rel", grp, pre, sd::prop(P::S9Fwd),
                           rel(lit ? RelCondition::S9FwdVerbatim : RelCondition::S9Fwd)));
    cat.push_back(make_iff("s9-bwd-iff-rel", grp, pre, sd::prop(P::S9Bwd),
                           rel(lit ? RelCondition::S9BwdVerbatim : RelCondition::S9Bwd)));
    cat.push_back(make_iff("sl1-iff-rel", grp, pre, sd::prop(P::SL1),
                           rel(lit ? RelCondition::SL1Verbatim : RelCondition::SL1)));
    cat.push_back(make_iff("sl2-iff-rel", grp, pre, sd::prop(P::SL2), rel(RelCondition::SL2)));
    cat.push_back(make_always("lambda-translation-law", grp, pre,
                              sd::pred("[]m <= n iff k^-1(m) <= <>k^-1(n)", [](CheckContext& c) {
                                return !lambda_translation_failure(c.sa()).has_value();
                              })));
  }
  return cat;
}

inline std::vector<std::string> catalog_groups() {
  return {"negation-extension", "completion",       "output-equivalence", "directedness",
          "axioms-to-slanted",  "slanted-to-axioms", "slanted-classes",    "extended-output",
          "correspondence",     "output-maximality", "space-isomorphism",  "space-correspondence"};
}

// ---------------------------------------------------------------- corpus

enum class GenMode { Exhaustive, Random };

struct GenConfig {
  std::string corpus = "default";  // "default" or "none"
  GenMode mode = GenMode::Exhaustive;
  std::size_t max_n = 4;
  std::uint64_t seed = 7;
  std::size_t samples = 500;
  Reading reading = Reading::Default;
  std::vector<std::string> groups;    // empty: every group
  std::vector<std::string> carriers;  // empty: every corpus carrier
  std::vector<std::pair<std::string, AlgebraInput>> extra;  // user-supplied carriers
  unsigned threads = 0;
  std::size_t max_counterexamples = 20;
};

namespace detail {

inline bool wanted(const GenConfig& cfg, const std::string& name) {
  return cfg.carriers.empty() || std::find(cfg.carriers.begin(), cfg.carriers.end(), name) != cfg.carriers.end();
}

inline Carrier renamed(Carrier c, std::string name) {
  c.name = std::move(name);
  return c;
}

// Negation variants keyed by corpus name.
struct NegVariant {
  std::string name;
  std::string base;
  std::vector<Elem> neg;
};

inline const std::vector<NegVariant>& negation_variants() {
  static const std::vector<NegVariant> v = {
      {"antichain2~swap", "antichain2", {1, 0}},
      {"chain3~rev", "chain3", {2, 1, 0}},
      {"chain3~pc", "chain3", {2, 0, 0}},
      {"chain3~dpc", "chain3", {2, 2, 0}},
      {"chain4~rev", "chain4", {3, 2, 1, 0}},
      {"FDL2~dm", "FDL2", {5, 4, 3, 2, 1, 0}},
  };
  return v;
}

}  // namespace detail

struct Corpus {
  std::vector<Instance> instances;
};

inline Corpus build_corpus(const GenConfig& cfg) {
  Corpus out;
  std::mt19937_64 rng(cfg.seed);
  std::map<std::string, std::shared_ptr<const CarrierInfo>> infos;
  auto info_for = [&](const std::string& name, const std::function<Carrier()>& make) {
    auto it = infos.find(name);
    if (it == infos.end()) it = infos.emplace(name, carrier_info(detail::renamed(make(), name))).first;
    return it->second;
  };
  auto builtin_info = [&](const std::string& name) { return info_for(name, [&] { return builtin::carrier(name); }); };
  auto lattice_neg = [](const std::shared_ptr<const CarrierInfo>& i) -> std::optional<std::vector<Elem>> {
    if (i->carrier.lattice && i->carrier.lattice->neg()) return i->carrier.lattice->neg();
    return std::nullopt;
  };

  auto add_all_relations = [&](const std::string& name, const std::shared_ptr<const CarrierInfo>& info,
                               std::optional<std::vector<Elem>> neg) {
    const std::size_t n = info->carrier.size();
    if (cfg.mode == GenMode::Exhaustive && n <= cfg.max_n && n * n <= 16) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits)
        out.instances.push_back(
            make_instance(name + "/all/" + std::to_string(bits), info, Relation::from_bits(n, bits), neg));
    } else {
      for (std::size_t k = 0; k < cfg.samples; ++k) {
        static constexpr unsigned kDensity[] = {100, 300, 500};
        out.instances.push_back(make_instance(name + "/random/" + std::to_string(k), info,
                                              random_relation(n, kDensity[k % 3], rng), neg));
      }
    }
  };

  // Random relations with optional closure and (with a negation) S6 symmetrization.
  auto add_random = [&](const std::string& name, const std::shared_ptr<const CarrierInfo>& info,
                        std::optional<std::vector<Elem>> neg, std::size_t count) {
    const std::size_t n = info->carrier.size();
    static constexpr unsigned kDensity[] = {100, 300, 500};
    static const Rule kRules[] = {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or, Rule::CT, Rule::T};
    for (std::size_t k = 0; k < count; ++k) {
      Relation r = random_relation(n, kDensity[k % 3], rng);
      std::uint64_t mode = rng() % 4;
      if (neg && mode == 3) {
        Relation sym = r;
        for (auto [a, b] : r.pairs()) sym.insert((*neg)[b], (*neg)[a]);
        r = std::move(sym);
      }
      if (mode >= 1 && info->carrier.lattice) {
        RuleSet rules;
        for (Rule rule : kRules)
          if (rng() % 2 == 0) rules.add(rule);
        r = close(info->carrier, r, rules);
        if (neg && mode == 3) {
          Relation sym = r;
          for (auto [a, b] : r.pairs()) sym.insert((*neg)[b], (*neg)[a]);
          r = std::move(sym);
        }
      }
      out.instances.push_back(make_instance(name + "/random/" + std::to_string(k), info, std::move(r), neg));
    }
  };

  auto add_closure_generated = [&](const std::string& name, const std::shared_ptr<const CarrierInfo>& info,
                                   std::optional<std::vector<Elem>> neg) {
    auto rels = closure_generated_subordinations(info->carrier);
    for (std::size_t k = 0; k < rels.size(); ++k)
      out.instances.push_back(make_instance(name + "/sub/" + std::to_string(k), info, std::move(rels[k]), neg));
  };

  auto add_carrier_only = [&](const std::string& id, const std::shared_ptr<const CarrierInfo>& info,
                              std::optional<std::vector<Elem>> neg) {
    out.instances.push_back(make_instance(id, info, Relation(info->carrier.size()), std::move(neg), true));
  };

  if (cfg.corpus == "default") {
    // Small carriers: every relation.
    for (const char* name : {"chain2", "chain3", "chain4", "B4", "V", "Lambda"})
      if (detail::wanted(cfg, name)) {
        auto info = builtin_info(name);
        add_all_relations(name, info, lattice_neg(info));
      }
    for (const auto& nv : detail::negation_variants()) {
      if (!detail::wanted(cfg, nv.name)) continue;
      auto info = info_for(nv.name, [&] { return builtin::carrier(nv.base); });
      if (info->carrier.size() * info->carrier.size() <= 9 || nv.name == "antichain2~swap")
        add_all_relations(nv.name, info, nv.neg);
      else if (info->carrier.lattice)
        add_random(nv.name, info, nv.neg, cfg.samples / 5);
    }
    // Larger carriers: every subordination plus seeded random relations.
    for (const char* name : {"FDL2", "B8", "B4+top", "N5", "M3"})
      if (detail::wanted(cfg, name)) {
        auto info = builtin_info(name);
        add_closure_generated(name, info, lattice_neg(info));
        add_random(name, info, lattice_neg(info), std::string(name) == "B8" ? cfg.samples : cfg.samples / 5);
      }
    // Carrier-level checks.
    for (const auto& [name, info] : infos) {
      auto neg = lattice_neg(info);
      for (const auto& nv : detail::negation_variants())
        if (nv.name == name) neg = nv.neg;
      add_carrier_only(name, info, neg);
    }
    if (detail::wanted(cfg, "poset4")) {
      auto ps = all_labeled_posets(4);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        std::string id = "poset4/" + std::to_string(k);
        auto info = info_for(id, [&] { return carrier_from_poset(ps[k], id); });
        add_carrier_only(id, info, std::nullopt);
      }
    }
    if (detail::wanted(cfg, "random-poset")) {
      std::mt19937_64 prng(cfg.seed ^ 0x5eedULL);
      for (std::size_t k = 0; k < 200; ++k) {
        std::size_t n = 5 + prng() % 2;
        FinPoset p = random_poset(n, prng);
        std::string id = "random-poset/" + std::to_string(k);
        auto info = info_for(id, [&] { return carrier_from_poset(p, id); });
        add_carrier_only(id, info, std::nullopt);
      }
    }
  } else if (cfg.corpus != "none") {
    throw InputError("unknown corpus: " + cfg.corpus);
  }

  for (const auto& [name, alg] : cfg.extra) {
    auto info = info_for(name, [&] { return alg.carrier; });
    const std::size_t n = info->carrier.size();
    if (cfg.mode == GenMode::Exhaustive && n <= cfg.max_n && n * n <= 16)
      add_all_relations(name, info, alg.neg);
    else
      add_random(name, info, alg.neg, cfg.samples);
    add_carrier_only(name, info, alg.neg);
  }
  return out;
}

// ---------------------------------------------------------------- suite

struct Counterexample {
  std::size_t instance_index = 0;
  std::string instance_id;
  json instance;
  std::string detail;
};

struct CheckReport {
  std::string id, group, statement;
  std::size_t tested = 0, passed = 0, skipped = 0, refused = 0, failed = 0;
  std::vector<Counterexample> counterexamples;
  double seconds = 0;
};

struct Report {
  std::string catalog;
  GenConfig config;
  std::size_t instances = 0;
  std::vector<CheckReport> checks;
  std::vector<std::string> coverage_gaps;
  double seconds = 0;

  std::size_t total_counterexamples() const {
    std::size_t t = 0;
    for (const auto& c : checks) t += c.failed;
    return t;
  }
  bool ok() const { return total_counterexamples() == 0 && coverage_gaps.empty(); }
  const CheckReport* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

inline Report run_suite(const GenConfig& cfg, const std::vector<CheckSpec>& catalog, const Corpus& corpus) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::vector<const CheckSpec*> active;
  for (const auto& c : catalog)
    if (cfg.groups.empty() || std::find(cfg.groups.begin(), cfg.groups.end(), c.group) != cfg.groups.end())
      active.push_back(&c);

  struct Partial {
    std::vector<CheckReport> checks;
    std::vector<std::vector<std::pair<std::size_t, std::string>>> fails;
  };
  unsigned nthreads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, std::max<std::size_t>(1, corpus.instances.size()));
  std::vector<Partial> parts(nthreads);
  for (auto& p : parts) {
    p.checks.resize(active.size());
    p.fails.resize(active.size());
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&](unsigned t) {
    try {
      Partial& part = parts[t];
      while (true) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= corpus.instances.size()) break;
        const Instance& inst = corpus.instances[idx];
        CheckContext ctx(inst, cfg.reading);
        for (std::size_t k = 0; k < active.size(); ++k) {
          const CheckSpec& spec = *active[k];
          if ((spec.scope == Scope::Carrier) != inst.carrier_only) continue;
          auto c0 = clock::now();
          CheckReport& cr = part.checks[k];
          try {
            if (!spec.pre.pred(ctx)) {
              ++cr.skipped;
            } else {
              Outcome o = spec.eval(ctx);
              ++cr.tested;
              if (o.verdict == Verdict::Pass) {
                ++cr.passed;
              } else {
                ++cr.failed;
                part.fails[k].emplace_back(idx, std::move(o.detail));
              }
            }
          } catch (const Error&) {
            ++cr.refused;
          }
          cr.seconds += std::chrono::duration<double>(clock::now() - c0).count();
        }
      }
    } catch (...) {
      std::lock_guard lk(err_mu);
      err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);

  Report rep;
  rep.catalog = std::string(to_string(cfg.reading));
  rep.config = cfg;
  rep.instances = corpus.instances.size();
  for (std::size_t k = 0; k < active.size(); ++k) {
    CheckReport cr;
    cr.id = active[k]->id;
    cr.group = active[k]->group;
    cr.statement = active[k]->statement;
    std::vector<std::pair<std::size_t, std::string>> fails;
    for (auto& p : parts) {
      const CheckReport& x = p.checks[k];
      cr.tested += x.tested;
      cr.passed += x.passed;
      cr.skipped += x.skipped;
      cr.refused += x.refused;
      cr.failed += x.failed;
      cr.seconds += x.seconds;
      fails.insert(fails.end(), p.fails[k].begin(), p.fails[k].end());
    }
    std::sort(fails.begin(), fails.end());
    for (std::size_t f = 0; f < fails.size() && f < cfg.max_counterexamples; ++f) {
      const Instance& inst = corpus.instances[fails[f].first];
      cr.counterexamples.push_back({fails[f].first, inst.id, subordination_to_json(inst.sub), fails[f].second});
    }
    if (cr.tested == 0) rep.coverage_gaps.push_back(cr.id);
    rep.checks.push_back(std::move(cr));
  }
  rep.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return rep;
}

inline Report run_suite(const GenConfig& cfg) {
  return run_suite(cfg, build_catalog(cfg.reading), build_corpus(cfg));
}

// Timing lives under "timing" only, so reports of identical runs agree on
// everything else.
inline json report_to_json(const Report& r, bool with_timing = true) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cx = json::array();
    for (const auto& x : c.counterexamples)
      cx.push_back({{"instance", x.instance_id}, {"detail", x.detail}, {"subordination", x.instance}});
    checks.push_back({{"id", c.id},
                      {"group", c.group},
                      {"statement", c.statement},
                      {"tested", c.tested},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"refused", c.refused},
                      {"counterexample_count", c.failed},
                      {"counterexamples", cx}});
  }
  json j = {{"catalog", r.catalog},
            {"config",
             {{"corpus", r.config.corpus},
              {"mode", r.config.mode == GenMode::Exhaustive ? "exhaustive" : "random"},
              {"max_n", r.config.max_n},
              {"seed", r.config.seed},
              {"samples", r.config.samples},
              {"groups", r.config.groups},
              {"carriers", r.config.carriers}}},
            {"instances", r.instances},
            {"checks", checks},
            {"coverage_gaps", r.coverage_gaps},
            {"counterexamples", r.total_counterexamples()},
            {"ok", r.ok()}};
  if (with_timing) {
    json per = json::object();
    for (const auto& c : r.checks) per[c.id] = c.seconds;
    j["timing"] = {{"total_seconds", r.seconds}, {"check_seconds", per}};
  }
  return j;
}

}  // namespace iosa
