#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "completion.hpp"
#include "subordination.hpp"

namespace iosa {

enum class NegationMode { Sigma, Pi };

struct SlantedAlg {
  ProtoSubAlg source;
  std::shared_ptr<const CanonicalExtension> ext;
  std::vector<Elem> diamond, box;  // base -> delta
  bool diamond_in_closed = false, box_in_open = false;
  bool diamond_monotone = false, box_monotone = false;
  std::optional<std::vector<Elem>> sigma, pi;  // present iff the map is monotone
  std::optional<std::vector<Elem>> neg_delta;
  std::string neg_problem;  // why neg_delta is absent, if the source has a negation

  const FinLattice& delta() const { return ext->delta; }
  std::size_t base_size() const { return diamond.size(); }
};

inline std::vector<Elem> sigma_extension(const SlantedAlg& sa);
inline std::vector<Elem> pi_extension(const SlantedAlg& sa);

namespace detail {
inline bool monotone_into(const FinPoset& base, const FinLattice& d, const std::vector<Elem>& f) {
  for (Elem a = 0; a < base.size(); ++a)
    for (Elem b : base.up(a))
      if (!d.leq(f[a], f[b])) return false;
  return true;
}
}  // namespace detail

inline SlantedAlg build_slanted(const ProtoSubAlg& s, std::shared_ptr<const CanonicalExtension> ext,
                                NegationMode mode = NegationMode::Sigma) {
  if (ext->base.size() != s.size()) throw InputError("canonical extension does not match carrier");
  SlantedAlg sa;
  sa.source = s;
  sa.ext = std::move(ext);
  const FinLattice& d = sa.ext->delta;
  const std::size_t n = s.size();
  sa.diamond.resize(n);
  sa.box.resize(n);
  for (Elem a = 0; a < n; ++a) {
    sa.diamond[a] = d.meet_all(detail::embed_set(*sa.ext, s.prec.image(a)));
    sa.box[a] = d.join_all(detail::embed_set(*sa.ext, s.prec.preimage(a)));
  }
  sa.diamond_in_closed = sa.box_in_open = true;
  for (Elem a = 0; a < n; ++a) {
    sa.diamond_in_closed = sa.diamond_in_closed && sa.ext->closed.test(sa.diamond[a]);
    sa.box_in_open = sa.box_in_open && sa.ext->open.test(sa.box[a]);
  }
  sa.diamond_monotone = detail::monotone_into(s.poset(), d, sa.diamond);
  sa.box_monotone = detail::monotone_into(s.poset(), d, sa.box);
  if (sa.diamond_monotone) sa.sigma = sigma_extension(sa);
  if (sa.box_monotone) sa.pi = pi_extension(sa);
  if (s.neg) {
    try {
      sa.neg_delta = mode == NegationMode::Sigma ? extend_negation_sigma(*sa.ext, *s.neg)
                                                 : extend_negation_pi(*sa.ext, *s.neg);
    } catch (const NegationLawsFail& e) {
      sa.neg_problem = e.law;
    }
  }
  return sa;
}

inline SlantedAlg build_slanted(const ProtoSubAlg& s, NegationMode mode = NegationMode::Sigma) {
  return build_slanted(s, std::make_shared<const CanonicalExtension>(dm_completion(s.poset())), mode);
}

inline std::vector<Elem> sigma_extension(const SlantedAlg& sa) {
  const CanonicalExtension& c = *sa.ext;
  const FinLattice& d = c.delta;
  if (!detail::monotone_into(c.base, d, sa.diamond)) throw NotMonotone("diamond");
  std::vector<Elem> on_closed(d.size(), d.top());
  for (Elem k : c.closed) {
    ElementSet vals;
    for (Elem a = 0; a < c.base.size(); ++a)
      if (d.leq(k, c.embed[a])) vals.set(sa.diamond[a]);
    on_closed[k] = d.meet_all(vals);
  }
  std::vector<Elem> out(d.size());
  for (Elem u = 0; u < d.size(); ++u) {
    ElementSet vals;
    for (Elem k : c.closed & d.poset().down(u)) vals.set(on_closed[k]);
    out[u] = d.join_all(vals);
  }
  return out;
}

inline std::vector<Elem> pi_extension(const SlantedAlg& sa) {
  const CanonicalExtension& c = *sa.ext;
  const FinLattice& d = c.delta;
  if (!detail::monotone_into(c.base, d, sa.box)) throw NotMonotone("box");
  std::vector<Elem> on_open(d.size(), d.bot());
  for (Elem o : c.open) {
    ElementSet vals;
    for (Elem a = 0; a < c.base.size(); ++a)
      if (d.leq(c.embed[a], o)) vals.set(sa.box[a]);
    on_open[o] = d.join_all(vals);
  }
  std::vector<Elem> out(d.size());
  for (Elem u = 0; u < d.size(); ++u) {
    ElementSet vals;
    for (Elem o : c.open & d.poset().up(u)) vals.set(on_open[o]);
    out[u] = d.meet_all(vals);
  }
  return out;
}

// ◇ on delta: image elements use the slanted map itself, the rest go
// through the σ-extension (which needs ◇ monotone).
inline Elem apply_diamond(const SlantedAlg& sa, Elem u) {
  if (auto a = sa.ext->preimage(u)) return sa.diamond[*a];
  if (!sa.sigma) throw NotMonotone("diamond");
  return (*sa.sigma)[u];
}

inline Elem apply_box(const SlantedAlg& sa, Elem u) {
  if (auto a = sa.ext->preimage(u)) return sa.box[*a];
  if (!sa.pi) throw NotMonotone("box");
  return (*sa.pi)[u];
}

// ---- modal terms ----

struct ModalTerm {
  enum class Op { Var, Top, Bot, And, Or, Not, Diamond, Box };
  struct Node {
    Op op;
    int lhs = -1, rhs = -1;  // child node indices
    std::string name;        // Var only
  };
  std::vector<Node> nodes;
  int root = -1;

  bool uses_negation() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.op == Op::Not; });
  }
  std::vector<std::string> variables() const {
    std::vector<std::string> v;
    for (const auto& n : nodes)
      if (n.op == Op::Var) v.push_back(n.name);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  std::string to_string() const { return root < 0 ? "" : render(root, 0); }

 private:
  std::string render(int i, int ctx) const {
    const Node& n = nodes[i];
    switch (n.op) {
      case Op::Var: return n.name;
      case Op::Top: return "T";
      case Op::Bot: return "F";
      case Op::Not: return "~" + render(n.lhs, 3);
      case Op::Diamond: return "<>" + render(n.lhs, 3);
      case Op::Box: return "[]" + render(n.lhs, 3);
      case Op::And: {
        std::string s = render(n.lhs, 2) + " & " + render(n.rhs, 2);
        return ctx > 2 ? "(" + s + ")" : s;
      }
      case Op::Or: {
        std::string s = render(n.lhs, 1) + " | " + render(n.rhs, 1);
        return ctx > 1 ? "(" + s + ")" : s;
      }
    }
    return "";
  }
};

struct Inequality {
  ModalTerm lhs, rhs;
  std::vector<std::string> variables() const {
    auto v = lhs.variables();
    auto w = rhs.variables();
    v.insert(v.end(), w.begin(), w.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  bool uses_negation() const { return lhs.uses_negation() || rhs.uses_negation(); }
  std::string to_string() const { return lhs.to_string() + " <= " + rhs.to_string(); }
};

namespace detail {
class ModalParser {
 public:
  explicit ModalParser(std::string_view text) : s_(text) {}

  ModalTerm term_only() {
    ModalTerm t;
    t.root = parse_or(t);
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected input", pos_);
    return t;
  }

  Inequality inequality() {
    Inequality q;
    q.lhs.root = parse_or(q.lhs);
    skip();
    if (s_.substr(pos_, 2) != "<=") throw SyntaxError("expected '<='", pos_);
    pos_ += 2;
    q.rhs.root = parse_or(q.rhs);
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected input", pos_);
    return q;
  }

 private:
  using Op = ModalTerm::Op;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  int add(ModalTerm& t, Op op, int l = -1, int r = -1, std::string name = {}) {
    t.nodes.push_back({op, l, r, std::move(name)});
    return static_cast<int>(t.nodes.size()) - 1;
  }
  int parse_or(ModalTerm& t) {
    int l = parse_and(t);
    for (skip(); pos_ < s_.size() && s_[pos_] == '|'; skip()) {
      ++pos_;
      l = add(t, Op::Or, l, parse_and(t));
    }
    return l;
  }
  int parse_and(ModalTerm& t) {
    int l = parse_unary(t);
    for (skip(); pos_ < s_.size() && s_[pos_] == '&'; skip()) {
      ++pos_;
      l = add(t, Op::And, l, parse_unary(t));
    }
    return l;
  }
  int parse_unary(ModalTerm& t) {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    if (s_[pos_] == '~') {
      ++pos_;
      return add(t, Op::Not, parse_unary(t));
    }
    if (s_.substr(pos_, 2) == "<>") {
      pos_ += 2;
      return add(t, Op::Diamond, parse_unary(t));
    }
    if (s_.substr(pos_, 2) == "[]") {
      pos_ += 2;
      return add(t, Op::Box, parse_unary(t));
    }
    return parse_atom(t);
  }
  int parse_atom(ModalTerm& t) {
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      int inner = parse_or(t);
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (ch == 'T') {
      ++pos_;
      return add(t, Op::Top);
    }
    if (ch == 'F') {
      ++pos_;
      return add(t, Op::Bot);
    }
    if (ch >= 'a' && ch <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                  std::isdigit(static_cast<unsigned char>(s_[pos_]))))
        ++pos_;
      return add(t, Op::Var, -1, -1, std::string(s_.substr(start, pos_ - start)));
    }
    throw SyntaxError(std::string("unexpected character '") + ch + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};
}  // namespace detail

inline ModalTerm parse_modal_term(std::string_view text) { return detail::ModalParser(text).term_only(); }
inline Inequality parse_inequality(std::string_view text) { return detail::ModalParser(text).inequality(); }

// Postfix program over variable slots; the harness evaluates the same
// inequality on many instances, so parsing and name lookup happen once.
struct CompiledTerm {
  struct Instr {
    ModalTerm::Op op;
    std::size_t slot = 0;
  };
  std::vector<Instr> code;
  bool uses_negation = false;

  static CompiledTerm compile(const ModalTerm& t, const std::vector<std::string>& vars) {
    CompiledTerm c;
    c.uses_negation = t.uses_negation();
    auto emit = [&](auto&& self, int i) -> void {
      const auto& n = t.nodes[i];
      if (n.lhs >= 0) self(self, n.lhs);
      if (n.rhs >= 0) self(self, n.rhs);
      Instr in{n.op};
      if (n.op == ModalTerm::Op::Var) {
        auto it = std::lower_bound(vars.begin(), vars.end(), n.name);
        if (it == vars.end() || *it != n.name) throw UnboundVariable(n.name);
        in.slot = static_cast<std::size_t>(it - vars.begin());
      }
      c.code.push_back(in);
    };
    if (t.root >= 0) emit(emit, t.root);
    return c;
  }

  // `assignment` holds base elements, one per slot.
  Elem eval(const SlantedAlg& sa, const std::vector<Elem>& assignment) const {
    using Op = ModalTerm::Op;
    const FinLattice& d = sa.delta();
    if (uses_negation) {
      if (!sa.source.neg) throw MissingNegation();
      if (!sa.neg_delta) throw NegationLawsFail(sa.neg_problem);
    }
    Elem stack[64];
    std::size_t sp = 0;
    std::vector<Elem> big;
    if (code.size() > 64) big.resize(code.size());
    Elem* st = code.size() > 64 ? big.data() : stack;
    for (const Instr& in : code) {
      switch (in.op) {
        case Op::Var: st[sp++] = sa.ext->embed[assignment[in.slot]]; break;
        case Op::Top: st[sp++] = d.top(); break;
        case Op::Bot: st[sp++] = d.bot(); break;
        case Op::And: --sp; st[sp - 1] = d.meet(st[sp - 1], st[sp]); break;
        case Op::Or: --sp; st[sp - 1] = d.join(st[sp - 1], st[sp]); break;
        case Op::Not: st[sp - 1] = (*sa.neg_delta)[st[sp - 1]]; break;
        case Op::Diamond: st[sp - 1] = apply_diamond(sa, st[sp - 1]); break;
        case Op::Box: st[sp - 1] = apply_box(sa, st[sp - 1]); break;
      }
    }
    return st[0];
  }
};

struct CompiledInequality {
  std::vector<std::string> vars;  // sorted; first is most significant in enumeration
  CompiledTerm lhs, rhs;
  std::string text;

  static CompiledInequality compile(const Inequality& q) {
    CompiledInequality c;
    c.vars = q.variables();
    c.lhs = CompiledTerm::compile(q.lhs, c.vars);
    c.rhs = CompiledTerm::compile(q.rhs, c.vars);
    c.text = q.to_string();
    return c;
  }
  static CompiledInequality parse(std::string_view text) { return compile(parse_inequality(text)); }
};

using Assignment = std::map<std::string, Elem>;

inline Elem evaluate(const ModalTerm& t, const Assignment& v, const SlantedAlg& sa) {
  std::vector<std::string> vars;
  std::vector<Elem> vals;
  for (const auto& [name, e] : v) {
    if (e >= sa.base_size()) throw InputError("assignment value out of range for " + name);
    vars.push_back(name);
    vals.push_back(e);
  }
  return CompiledTerm::compile(t, vars).eval(sa, vals);
}

struct ValidityResult {
  bool valid = true;
  std::vector<std::pair<std::string, Elem>> witness;  // base elements
  explicit operator bool() const { return valid; }
};

// Quantifies over base assignments in odometer order, last variable fastest.
inline ValidityResult valid(const SlantedAlg& sa, const CompiledInequality& q) {
  const std::size_t n = sa.base_size();
  const std::size_t k = q.vars.size();
  std::vector<Elem> v(k, 0);
  const FinLattice& d = sa.delta();
  while (true) {
    if (!d.leq(q.lhs.eval(sa, v), q.rhs.eval(sa, v))) {
      ValidityResult r{false, {}};
      for (std::size_t i = 0; i < k; ++i) r.witness.emplace_back(q.vars[i], v[i]);
      return r;
    }
    std::size_t i = k;
    while (i > 0 && ++v[i - 1] == n) v[--i] = 0;
    if (i == 0) return {};
  }
}

inline ValidityResult valid(const SlantedAlg& sa, const Inequality& q) {
  return valid(sa, CompiledInequality::compile(q));
}

struct SlantedFlags {
  bool monotone = false, tense = false;
  std::optional<bool> regular, normal;  // lattice base only
};

inline SlantedFlags classify_slanted(const SlantedAlg& sa) {
  SlantedFlags f;
  const FinLattice& d = sa.delta();
  const auto& e = sa.ext->embed;
  const std::size_t n = sa.base_size();
  f.monotone = sa.diamond_monotone && sa.box_monotone;
  f.tense = true;
  for (Elem a = 0; a < n && f.tense; ++a)
    for (Elem b = 0; b < n && f.tense; ++b)
      f.tense = d.leq(sa.diamond[a], e[b]) == d.leq(e[a], sa.box[b]);
  if (const FinLattice* L = sa.source.lattice()) {
    bool reg = true;
    for (Elem a = 0; a < n && reg; ++a)
      for (Elem b = 0; b < n && reg; ++b)
        reg = sa.diamond[L->join(a, b)] == d.join(sa.diamond[a], sa.diamond[b]) &&
              sa.box[L->meet(a, b)] == d.meet(sa.box[a], sa.box[b]);
    f.regular = reg;
    f.normal = reg && sa.diamond[L->bot()] == d.bot() && sa.box[L->top()] == d.top();
  }
  return f;
}

}  // namespace iosa
