#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "slanted.hpp"
#include "subordination.hpp"

namespace iosa {

struct Formula {
  enum class Op { Atom, Top, Bot, Not, And, Or, Implies };
  struct Node {
    Op op;
    int lhs = -1, rhs = -1;
    std::string name;
  };
  std::vector<Node> nodes;
  int root = -1;

  std::vector<std::string> atoms() const {
    std::vector<std::string> v;
    for (const auto& n : nodes)
      if (n.op == Op::Atom) v.push_back(n.name);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  std::string to_string() const { return root < 0 ? "" : render(root, 0); }

  // Homomorphic evaluation; `atom` maps names to values, `bot`/`top`/`neg`
  // and the binary operations come from `ops`.
  template <class Ops, class AtomFn>
  Elem eval(const Ops& ops, AtomFn atom) const {
    auto rec = [&](auto&& self, int i) -> Elem {
      const Node& n = nodes[i];
      switch (n.op) {
        case Op::Atom: return atom(n.name);
        case Op::Top: return ops.top();
        case Op::Bot: return ops.bot();
        case Op::Not: return ops.neg(self(self, n.lhs));
        case Op::And: return ops.meet(self(self, n.lhs), self(self, n.rhs));
        case Op::Or: return ops.join(self(self, n.lhs), self(self, n.rhs));
        case Op::Implies: return ops.join(ops.neg(self(self, n.lhs)), self(self, n.rhs));
      }
      return ops.bot();
    };
    return rec(rec, root);
  }

 private:
  static int prec(Op op) {
    switch (op) {
      case Op::Implies: return 1;
      case Op::Or: return 2;
      case Op::And: return 3;
      default: return 4;
    }
  }
  std::string render(int i, int ctx) const {
    const Node& n = nodes[i];
    std::string s;
    switch (n.op) {
      case Op::Atom: return n.name;
      case Op::Top: return "T";
      case Op::Bot: return "F";
      case Op::Not: return "~" + render(n.lhs, 4);
      case Op::And: s = render(n.lhs, 3) + " & " + render(n.rhs, 3); break;
      case Op::Or: s = render(n.lhs, 2) + " | " + render(n.rhs, 2); break;
      case Op::Implies: s = render(n.lhs, 2) + " -> " + render(n.rhs, 1); break;
    }
    return ctx > prec(n.op) ? "(" + s + ")" : s;
  }
};

namespace detail {
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text, std::size_t offset = 0) : s_(text), offset_(offset) {}

  Formula parse() {
    Formula f;
    f.root = implies(f);
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected input", offset_ + pos_);
    return f;
  }

 private:
  using Op = Formula::Op;
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  int add(Formula& f, Op op, int l = -1, int r = -1, std::string name = {}) {
    f.nodes.push_back({op, l, r, std::move(name)});
    return static_cast<int>(f.nodes.size()) - 1;
  }
  int implies(Formula& f) {
    int l = disj(f);
    skip();
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return add(f, Op::Implies, l, implies(f));
    }
    return l;
  }
  int disj(Formula& f) {
    int l = conj(f);
    for (skip(); pos_ < s_.size() && s_[pos_] == '|'; skip()) {
      ++pos_;
      l = add(f, Op::Or, l, conj(f));
    }
    return l;
  }
  int conj(Formula& f) {
    int l = unary(f);
    for (skip(); pos_ < s_.size() && s_[pos_] == '&'; skip()) {
      ++pos_;
      l = add(f, Op::And, l, unary(f));
    }
    return l;
  }
  int unary(Formula& f) {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", offset_ + pos_);
    char ch = s_[pos_];
    if (ch == '~') {
      ++pos_;
      return add(f, Op::Not, unary(f));
    }
    if (ch == '(') {
      ++pos_;
      int inner = implies(f);
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw SyntaxError("expected ')'", offset_ + pos_);
      ++pos_;
      return inner;
    }
    if (ch == 'T' || ch == 'F') {
      ++pos_;
      return add(f, ch == 'T' ? Op::Top : Op::Bot);
    }
    if (ch >= 'a' && ch <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[pos_])) ||
                                  std::isdigit(static_cast<unsigned char>(s_[pos_]))))
        ++pos_;
      return add(f, Op::Atom, -1, -1, std::string(s_.substr(start, pos_ - start)));
    }
    throw SyntaxError(std::string("unexpected character '") + ch + "'", offset_ + pos_);
  }

  std::string_view s_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};
}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

struct Norm {
  Formula body, head;
};

struct NormativeSystem {
  std::vector<Norm> norms;

  std::vector<std::string> atoms() const {
    std::vector<std::string> v;
    for (const auto& n : norms) {
      auto a = n.body.atoms(), b = n.head.atoms();
      v.insert(v.end(), a.begin(), a.end());
      v.insert(v.end(), b.begin(), b.end());
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
};

// "body |~ head"; the first "|~" on the line separates the two sides.
inline Norm parse_norm(std::string_view line) {
  auto sep = line.find("|~");
  if (sep == std::string_view::npos) throw SyntaxError("expected '|~'", line.size());
  return {detail::FormulaParser(line.substr(0, sep)).parse(),
          detail::FormulaParser(line.substr(sep + 2), sep + 2).parse()};
}

inline NormativeSystem parse_norms(std::string_view text) {
  NormativeSystem n;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) {
      try {
        n.norms.push_back(parse_norm(line));
      } catch (const SyntaxError& e) {
        throw SyntaxError("line " + std::to_string(line_no) + ": " + e.what(), e.position);
      }
    }
    start = end + 1;
  }
  return n;
}

// Γ as a comma-separated list of formulas; empty text is the empty set.
inline std::vector<Formula> parse_formula_list(std::string_view text) {
  std::vector<Formula> out;
  std::size_t start = 0;
  bool blank = std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) return out;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(detail::FormulaParser(piece, start).parse());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---- Lindenbaum-Tarski algebra over the atoms in play ----

class Signature {
 public:
  explicit Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    fba_ = &free_boolean_algebra(atoms_.size());
  }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t k() const { return atoms_.size(); }
  const FinLattice& algebra() const { return fba_->lattice; }

  Elem value(const Formula& f) const {
    const Elem mask = algebra().size() - 1;
    struct Ops {
      Elem mask;
      Elem top() const { return mask; }
      Elem bot() const { return 0; }
      Elem neg(Elem a) const { return ~a & mask; }
      Elem meet(Elem a, Elem b) const { return a & b; }
      Elem join(Elem a, Elem b) const { return a | b; }
    };
    return f.eval(Ops{mask}, [&](const std::string& name) {
      auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name);
      if (it == atoms_.end() || *it != name) throw UnboundAtom(name);
      return fba_->generators[static_cast<std::size_t>(it - atoms_.begin())];
    });
  }

  // Disjunctive normal form of an element: one conjunct per true row.
  std::string dnf(Elem e) const {
    const std::size_t rows = std::size_t{1} << k();
    if (e == 0) return "F";
    if (e == algebra().size() - 1) return "T";
    std::string out;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!((e >> r) & 1U)) continue;
      std::string term;
      for (std::size_t i = 0; i < k(); ++i) {
        if (!term.empty()) term += " & ";
        term += ((r >> i) & 1U) ? atoms_[i] : "~" + atoms_[i];
      }
      if (!out.empty()) out += " | ";
      out += k() > 1 && e != Elem{1} << r ? "(" + term + ")" : term;
    }
    return out;
  }

 private:
  std::vector<std::string> atoms_;
  const FreeBooleanAlgebra* fba_;
};

inline const Carrier& free_algebra_carrier(std::size_t k) {
  static std::array<std::optional<Carrier>, 4> cache;
  static std::mutex mu;
  if (k > 3) throw TooManyVariables(k);
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[k]) cache[k] = make_carrier(free_boolean_algebra(k).lattice, "FBA" + std::to_string(k));
  return *cache[k];
}

inline std::shared_ptr<const CanonicalExtension> free_algebra_extension(std::size_t k) {
  static std::array<std::shared_ptr<const CanonicalExtension>, 4> cache;
  static std::mutex mu;
  if (k > 3) throw TooManyVariables(k);
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[k]) cache[k] = std::make_shared<const CanonicalExtension>(dm_completion(free_boolean_algebra(k).lattice.poset()));
  return cache[k];
}

inline bool entails(const Formula& phi, const Formula& psi) {
  auto atoms = phi.atoms();
  auto more = psi.atoms();
  atoms.insert(atoms.end(), more.begin(), more.end());
  Signature sig(std::move(atoms));
  return (sig.value(phi) & ~sig.value(psi)) == 0;
}

// N_i materialized in the free algebra over the atoms of N and the queries.
class IOClosure {
 public:
  IOClosure(const NormativeSystem& n, int system, std::vector<std::string> extra_atoms = {})
      : sig_(collect(n, std::move(extra_atoms))), system_(system) {
    const Carrier& c = free_algebra_carrier(sig_.k());
    Relation base(c.size());
    for (const auto& norm : n.norms) base.insert(sig_.value(norm.body), sig_.value(norm.head));
    closed_ = close_i(make_subalg(c, std::move(base)), system);
  }

  const Signature& signature() const { return sig_; }
  int system() const { return system_; }
  const ProtoSubAlg& relation() const { return closed_; }

  bool derives(const Formula& body, const Formula& head) const {
    return closed_.prec.contains(sig_.value(body), sig_.value(head));
  }
  bool out(const std::vector<Formula>& gamma, const Formula& psi) const {
    Elem h = sig_.value(psi);
    return std::any_of(gamma.begin(), gamma.end(), [&](const Formula& a) { return closed_.prec.contains(sig_.value(a), h); });
  }
  // out_i(Γ) as a set of algebra elements (an up-set).
  ElementSet out_set(const std::vector<Formula>& gamma) const {
    ElementSet s;
    for (const auto& a : gamma) s |= closed_.prec.image(sig_.value(a));
    return s;
  }
  std::vector<Elem> out_minimal(const std::vector<Formula>& gamma) const {
    ElementSet s = out_set(gamma);
    const FinPoset& p = closed_.poset();
    std::vector<Elem> mins;
    for (Elem e : s)
      if ((p.down(e) & s) == ElementSet::single(e)) mins.push_back(e);
    return mins;
  }
  // ◇_i(⋀Γ) ≤ ψ on the slanted algebra of N_i.
  bool modal_output(const std::vector<Formula>& gamma, const Formula& psi) const {
    const FinLattice& L = sig_.algebra();
    Elem k = L.top();
    for (const auto& a : gamma) k = L.meet(k, sig_.value(a));
    const SlantedAlg& sa = slanted();
    Elem d = apply_diamond(sa, sa.ext->embed[k]);
    return sa.delta().leq(d, sa.ext->embed[sig_.value(psi)]);
  }
  const SlantedAlg& slanted() const {
    if (!slanted_) slanted_ = std::make_shared<SlantedAlg>(build_slanted(closed_, free_algebra_extension(sig_.k())));
    return *slanted_;
  }

 private:
  static std::vector<std::string> collect(const NormativeSystem& n, std::vector<std::string> extra) {
    auto a = n.atoms();
    extra.insert(extra.end(), a.begin(), a.end());
    return extra;
  }
  Signature sig_;
  int system_;
  ProtoSubAlg closed_;
  mutable std::shared_ptr<SlantedAlg> slanted_;
};

namespace detail {
inline std::vector<std::string> atoms_of(const std::vector<Formula>& fs) {
  std::vector<std::string> v;
  for (const auto& f : fs) {
    auto a = f.atoms();
    v.insert(v.end(), a.begin(), a.end());
  }
  return v;
}
}  // namespace detail

inline bool derive(const NormativeSystem& n, int system, const Formula& body, const Formula& head) {
  return IOClosure(n, system, detail::atoms_of({body, head})).derives(body, head);
}

inline bool out(const NormativeSystem& n, int system, const std::vector<Formula>& gamma, const Formula& psi) {
  auto atoms = detail::atoms_of(gamma);
  auto more = psi.atoms();
  atoms.insert(atoms.end(), more.begin(), more.end());
  return IOClosure(n, system, std::move(atoms)).out(gamma, psi);
}

inline bool modal_output(const NormativeSystem& n, int system, const std::vector<Formula>& gamma, const Formula& psi) {
  auto atoms = detail::atoms_of(gamma);
  auto more = psi.atoms();
  atoms.insert(atoms.end(), more.begin(), more.end());
  return IOClosure(n, system, std::move(atoms)).modal_output(gamma, psi);
}

struct IOModel {
  ProtoSubAlg algebra;
  std::map<std::string, Elem> h;
};

struct ModelResult {
  bool holds = true;
  std::optional<std::size_t> violated;  // index into the norm list
  explicit operator bool() const { return holds; }
};

inline Elem evaluate_formula(const IOModel& m, const Formula& f) {
  const FinLattice* L = m.algebra.lattice();
  if (!L) throw MissingStructure("formula evaluation", "a bounded lattice carrier");
  struct Ops {
    const FinLattice* L;
    const std::optional<std::vector<Elem>>* table;
    Elem top() const { return L->top(); }
    Elem bot() const { return L->bot(); }
    Elem neg(Elem a) const {
      if (!*table) throw MissingNegation();
      return (**table)[a];
    }
    Elem meet(Elem a, Elem b) const { return L->meet(a, b); }
    Elem join(Elem a, Elem b) const { return L->join(a, b); }
  };
  return f.eval(Ops{L, &m.algebra.neg}, [&](const std::string& name) {
    auto it = m.h.find(name);
    if (it == m.h.end()) throw UnboundAtom(name);
    if (it->second >= L->size()) throw InputError("atom value out of range: " + name);
    return it->second;
  });
}

inline ModelResult check_model(const IOModel& m, const NormativeSystem& n) {
  for (std::size_t i = 0; i < n.norms.size(); ++i) {
    Elem a = evaluate_formula(m, n.norms[i].body);
    Elem b = evaluate_formula(m, n.norms[i].head);
    if (!m.algebra.prec.contains(a, b)) return {false, i};
  }
  return {};
}

}  // namespace iosa
