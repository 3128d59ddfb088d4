#include <gtest/gtest.h>

#include <random>

#include <iosa/builtins.hpp>
#include <iosa/iologic.hpp>

#include "oracles.hpp"

using namespace iosa;

namespace {

const std::vector<std::string> kAtoms = {"p", "q", "r"};

// Truth table over p,q,r; row bit i is the value of kAtoms[i].
std::uint32_t table(const Formula& f, int node = -2) {
  if (node == -2) node = f.root;
  const auto& n = f.nodes[node];
  using Op = Formula::Op;
  switch (n.op) {
    case Op::Top: return 0xFF;
    case Op::Bot: return 0;
    case Op::Not: return ~table(f, n.lhs) & 0xFF;
    case Op::And: return table(f, n.lhs) & table(f, n.rhs);
    case Op::Or: return table(f, n.lhs) | table(f, n.rhs);
    case Op::Implies: return (~table(f, n.lhs) | table(f, n.rhs)) & 0xFF;
    case Op::Atom: {
      std::size_t i = std::find(kAtoms.begin(), kAtoms.end(), n.name) - kAtoms.begin();
      std::uint32_t m = 0;
      for (std::size_t row = 0; row < 8; ++row)
        if ((row >> i) & 1U) m |= 1U << row;
      return m;
    }
  }
  return 0;
}

std::string random_formula(std::mt19937_64& rng, int depth) {
  int pick = static_cast<int>(rng() % (depth > 0 ? 8 : 4));
  switch (pick) {
    case 0: return "p";
    case 1: return "q";
    case 2: return "r";
    case 3: return rng() % 4 ? "q" : (rng() % 2 ? "T" : "F");
    case 4: return "~" + random_formula(rng, depth - 1);
    case 5: return "(" + random_formula(rng, depth - 1) + " & " + random_formula(rng, depth - 1) + ")";
    case 6: return "(" + random_formula(rng, depth - 1) + " | " + random_formula(rng, depth - 1) + ")";
    default: return "(" + random_formula(rng, depth - 1) + " -> " + random_formula(rng, depth - 1) + ")";
  }
}

NormativeSystem random_system(std::mt19937_64& rng, std::size_t count) {
  NormativeSystem n;
  for (std::size_t i = 0; i < count; ++i)
    n.norms.push_back({parse_formula(random_formula(rng, 2)), parse_formula(random_formula(rng, 2))});
  return n;
}

oracle::SemanticOutput semantic(const NormativeSystem& n) {
  oracle::SemanticOutput s{3, {}};
  for (const auto& norm : n.norms) s.norms.push_back({table(norm.body), table(norm.head)});
  return s;
}

// DNF text for a proposition over p,q (rows as in table()).
std::string dnf2(std::uint32_t mask) {
  std::string out;
  for (std::size_t row = 0; row < 4; ++row) {
    if (!((mask >> row) & 1U)) continue;
    std::string term = std::string((row & 1U) ? "p" : "~p") + " & " + ((row & 2U) ? "q" : "~q");
    out += (out.empty() ? "" : " | ") + ("(" + term + ")");
  }
  return out.empty() ? "F" : out;
}

Formula f(const std::string& s) { return parse_formula(s); }

}  // namespace

TEST(ParseFormula, Precedence) {
  EXPECT_EQ(f("p & ~q").to_string(), "p & ~q");
  Formula g = f("p -> q | r");
  EXPECT_EQ(g.nodes[g.root].op, Formula::Op::Implies);
  EXPECT_EQ(g.nodes[g.nodes[g.root].rhs].op, Formula::Op::Or);
  EXPECT_EQ(f("~p & q | r -> s").to_string(), "~p & q | r -> s");
  EXPECT_EQ(f("(p | q) & r").to_string(), "(p | q) & r");
}

TEST(ParseFormula, Errors) {
  EXPECT_THROW(f("p &"), SyntaxError);
  EXPECT_THROW(f("(p"), SyntaxError);
  EXPECT_THROW(f("P"), SyntaxError);
  EXPECT_THROW(parse_norm("p q"), SyntaxError);
  try {
    parse_norms("p |~ q\n\n# note\np |~ &\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ParseNorms, CommentsAndBlankLines) {
  NormativeSystem n = parse_norms("# header\np |~ q\n\n  q & r |~ s # trailing\n");
  ASSERT_EQ(n.norms.size(), 2U);
  EXPECT_EQ(n.norms[1].body.to_string(), "q & r");
  EXPECT_EQ(n.atoms(), (std::vector<std::string>{"p", "q", "r", "s"}));
  EXPECT_TRUE(parse_formula_list("  ").empty());
  EXPECT_EQ(parse_formula_list("p, q & r").size(), 2U);
}

TEST(Entails, Examples) {
  EXPECT_TRUE(entails(f("p & q"), f("p")));
  EXPECT_TRUE(entails(f("p"), f("p | q")));
  EXPECT_FALSE(entails(f("p"), f("q")));
  EXPECT_TRUE(entails(f("F"), f("q")));
  EXPECT_TRUE(entails(f("p & (p -> q)"), f("q")));
  EXPECT_THROW(entails(f("p & q"), f("r | s")), TooManyVariables);
}

TEST(Entails, ConjunctionAndDisjunctionPropertiesOverTwoAtoms) {
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = 0; b < 16; ++b)
      for (std::uint32_t c = 0; c < 16; ++c) {
        Formula x = f(dnf2(a)), y = f(dnf2(b)), z = f(dnf2(c));
        Formula both = f("(" + dnf2(a) + ") & (" + dnf2(b) + ")");
        Formula either = f("(" + dnf2(a) + ") | (" + dnf2(b) + ")");
        EXPECT_EQ(entails(either, z), entails(x, z) && entails(y, z));
        // z follows from {x, y} exactly when it follows from x & y
        EXPECT_EQ(entails(both, z), ((a & b) & ~c) == 0);
      }
}

TEST(Derive, Examples) {
  NormativeSystem n = parse_norms("p |~ q");
  EXPECT_TRUE(derive(n, 1, f("p & r"), f("q | r")));
  EXPECT_TRUE(derive(NormativeSystem{}, 1, f("T"), f("T")));
  EXPECT_FALSE(derive(n, 1, f("p | r"), f("q")));
  EXPECT_FALSE(derive(NormativeSystem{}, 4, f("p"), f("q")));
}

TEST(Derive, DisjunctiveBodyNeedsANormForEachDisjunct) {
  // OR only combines pairs already present; nothing yields (r, q)
  NormativeSystem n = parse_norms("p |~ q");
  for (int i = 1; i <= 4; ++i) EXPECT_FALSE(derive(n, i, f("p | r"), f("q"))) << i;
  NormativeSystem both = parse_norms("p |~ q\nr |~ q");
  EXPECT_FALSE(derive(both, 1, f("p | r"), f("q")));
  EXPECT_TRUE(derive(both, 2, f("p | r"), f("q")));
  EXPECT_TRUE(derive(both, 4, f("p | r"), f("q")));
}

TEST(Derive, CumulativeTransitivity) {
  NormativeSystem n = parse_norms("p |~ q\np & q |~ r");
  EXPECT_FALSE(derive(n, 1, f("p"), f("r")));
  EXPECT_FALSE(derive(n, 2, f("p"), f("r")));
  EXPECT_TRUE(derive(n, 3, f("p"), f("r")));
  EXPECT_TRUE(derive(n, 4, f("p"), f("r")));
}

TEST(Derive, AgreesWithSemanticOracleOnRandomSystems) {
  std::mt19937_64 rng(21);
  std::size_t positive = 0, total = 0;
  for (int trial = 0; trial < 12; ++trial) {
    NormativeSystem n = random_system(rng, 1 + trial % 4);
    oracle::SemanticOutput sem = semantic(n);
    for (int i = 1; i <= 4; ++i) {
      IOClosure io(n, i, kAtoms);
      for (int q = 0; q < 60; ++q) {
        Formula a = f(random_formula(rng, 2)), b = f(random_formula(rng, 2));
        bool expected = sem.out(i, table(a), table(b));
        positive += expected;
        ++total;
        EXPECT_EQ(io.derives(a, b), expected)
            << "system " << i << " query " << a.to_string() << " |~ " << b.to_string();
      }
    }
  }
  EXPECT_GT(positive, total / 10);
  EXPECT_LT(positive, total);
}

TEST(Out, Examples) {
  NormativeSystem n = parse_norms("p |~ q");
  EXPECT_TRUE(out(n, 1, {f("p")}, f("q | r")));
  EXPECT_FALSE(out(n, 1, {}, f("T")));

  IOClosure io(n, 1, kAtoms);
  std::vector<Elem> mins = io.out_minimal({f("p")});
  ASSERT_EQ(mins.size(), 1U);
  EXPECT_EQ(mins[0], io.signature().value(f("q")));
  EXPECT_EQ(io.out_set({f("p")}), io.relation().poset().up(io.signature().value(f("q"))));

  NormativeSystem two = parse_norms("p |~ s\nq |~ s");
  EXPECT_FALSE(out(two, 1, {f("p | q")}, f("s")));
  EXPECT_TRUE(out(two, 2, {f("p | q")}, f("s")));
}

TEST(Out, TautologiesFollowFromAnyNonemptyInput) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    NormativeSystem n = random_system(rng, 2);
    for (int i = 1; i <= 4; ++i) {
      EXPECT_TRUE(out(n, i, {f(random_formula(rng, 1))}, f("p | ~p")));
      EXPECT_TRUE(out(n, i, {f("q")}, f("T")));
    }
  }
}

TEST(Out, MonotoneInNormsInputAndSystem) {
  std::mt19937_64 rng(8);
  const std::pair<int, int> steps[] = {{1, 2}, {1, 3}, {2, 4}, {3, 4}};
  for (int trial = 0; trial < 6; ++trial) {
    NormativeSystem small = random_system(rng, 2);
    NormativeSystem big = small;
    big.norms.push_back({f(random_formula(rng, 2)), f(random_formula(rng, 2))});
    std::vector<Formula> g1 = {f(random_formula(rng, 2))};
    std::vector<Formula> g2 = g1;
    g2.push_back(f(random_formula(rng, 2)));
    for (int i = 1; i <= 4; ++i) {
      IOClosure s(small, i, kAtoms), b(big, i, kAtoms);
      EXPECT_TRUE(s.out_set(g1).subset_of(b.out_set(g1)));
      EXPECT_TRUE(s.out_set(g1).subset_of(s.out_set(g2)));
    }
    for (auto [lo, hi] : steps)
      EXPECT_TRUE(IOClosure(small, lo, kAtoms).relation().prec.subset_of(IOClosure(small, hi, kAtoms).relation().prec));
  }
}

TEST(ModalOutput, SingletonInputAgreesWithOut) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    NormativeSystem n = random_system(rng, 1 + trial % 3);
    for (int i = 1; i <= 4; ++i) {
      IOClosure io(n, i, kAtoms);
      for (int q = 0; q < 20; ++q) {
        std::vector<Formula> g = {f(random_formula(rng, 2))};
        Formula psi = f(random_formula(rng, 2));
        EXPECT_EQ(io.modal_output(g, psi), io.out(g, psi)) << i << " " << g[0].to_string() << " / " << psi.to_string();
      }
    }
  }
}

TEST(ModalOutput, AggregatesAcrossBodies) {
  NormativeSystem n = parse_norms("p & q |~ s");
  EXPECT_TRUE(modal_output(n, 1, {f("p"), f("q")}, f("s")));
  EXPECT_FALSE(out(n, 1, {f("p"), f("q")}, f("s")));
}

TEST(ModalOutput, EmptyInputIsTheTopBody) {
  NormativeSystem n = parse_norms("T |~ q\np |~ r");
  EXPECT_TRUE(modal_output(n, 1, {}, f("q")));
  EXPECT_EQ(modal_output(n, 1, {}, f("r")), derive(n, 1, f("T"), f("r")));
  EXPECT_FALSE(modal_output(n, 1, {}, f("r")));
}

TEST(CheckModel, Examples) {
  Carrier c = builtin::carrier("B4");
  IOModel m{make_subalg(c, order_relation(*c.poset)), {{"p", 1}, {"q", 3}}};
  NormativeSystem n = parse_norms("p |~ q");
  EXPECT_TRUE(check_model(m, n));
  m.h["q"] = 0;
  ModelResult r = check_model(m, n);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.violated, std::size_t{0});
  m.h["p"] = 0;
  for (Elem q = 0; q < 4; ++q) {
    m.h["q"] = q;
    EXPECT_TRUE(check_model(m, n));
  }
}

TEST(CheckModel, Errors) {
  Carrier c = builtin::carrier("B4");
  IOModel m{make_subalg(c, order_relation(*c.poset)), {{"p", 1}}};
  EXPECT_THROW(check_model(m, parse_norms("p |~ q")), UnboundAtom);
  Carrier chain = builtin::carrier("chain3");
  IOModel nm{make_subalg(chain, order_relation(*chain.poset)), {{"p", 1}}};
  EXPECT_THROW(check_model(nm, parse_norms("p |~ ~p")), MissingNegation);
  EXPECT_TRUE(check_model(nm, parse_norms("p |~ p | T")));
}
