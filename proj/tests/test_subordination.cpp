#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <iosa/builtins.hpp>
#include <iosa/harness.hpp>

#include "oracles.hpp"

using namespace iosa;
using P = Property;

namespace {

ProtoSubAlg sub(const std::string& carrier, std::vector<std::pair<Elem, Elem>> pairs) {
  Carrier c = builtin::carrier(carrier);
  return make_subalg(c, Relation::from_pairs(c.size(), pairs));
}

ProtoSubAlg with_order(const std::string& carrier) {
  Carrier c = builtin::carrier(carrier);
  return make_subalg(c, order_relation(*c.poset));
}

ProtoSubAlg with_full(const std::string& carrier) {
  Carrier c = builtin::carrier(carrier);
  return make_subalg(c, Relation::full(c.size()));
}

bool has_class(const ProtoSubAlg& s, const std::string& name) {
  auto cs = classify(s);
  return std::find(cs.begin(), cs.end(), name) != cs.end();
}

// One rule application at a time until nothing changes, straight from the rule table.
Relation naive_close(const FinLattice& L, Relation r, RuleSet rules) {
  const std::size_t n = L.size();
  bool changed = true;
  auto add = [&](Elem a, Elem b) {
    if (!r.contains(a, b)) {
      r.insert(a, b);
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    if (rules.has(Rule::Bot)) add(L.bot(), L.bot());
    if (rules.has(Rule::Top)) add(L.top(), L.top());
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) {
          if (rules.has(Rule::SI) && L.leq(a, b) && r.contains(b, c)) add(a, c);
          if (rules.has(Rule::WO) && r.contains(a, b) && L.leq(b, c)) add(a, c);
          if (rules.has(Rule::And) && r.contains(a, b) && r.contains(a, c)) add(a, L.meet(b, c));
          if (rules.has(Rule::Or) && r.contains(a, c) && r.contains(b, c)) add(L.join(a, b), c);
          if (rules.has(Rule::CT) && r.contains(a, b) && r.contains(L.meet(a, b), c)) add(a, c);
          if (rules.has(Rule::T) && r.contains(a, b) && r.contains(b, c)) add(a, c);
        }
  }
  return r;
}

RuleSet all_six() { return {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or}; }

}  // namespace

TEST(CheckProperty, OrderOnB4IsStrengthening) { EXPECT_TRUE(check_property(with_order("B4"), P::SI).holds); }

TEST(CheckProperty, EmptyRelationOnB4) {
  ProtoSubAlg s = sub("B4", {});
  PropertyResult top = check_property(s, P::Top);
  EXPECT_FALSE(top.holds);
  EXPECT_TRUE(top.witness.empty());
  EXPECT_TRUE(check_property(s, P::DD).holds);
}

TEST(CheckProperty, ChainReversedPairFailsStrengthening) {
  ProtoSubAlg s = sub("chain3", {{2, 0}});
  PropertyResult r = check_property(s, P::SI);
  EXPECT_FALSE(r.holds);
  // first counterexample in index order; (m,1,0) is a later one
  EXPECT_EQ(r.witness, (std::vector<Elem>{0, 2, 0}));
  EXPECT_TRUE(s.poset().leq(1, 2) && s.prec.contains(2, 0) && !s.prec.contains(1, 0));
}

TEST(CheckProperty, MissingStructureIsReported) {
  ProtoSubAlg v = sub("V", {});
  EXPECT_THROW(check_property(v, P::And), MissingStructure);
  EXPECT_THROW(check_property(v, P::Top), MissingStructure);
  EXPECT_THROW(check_property(sub("chain3", {}), P::S6), MissingStructure);
  EXPECT_FALSE(property_applicable(v, P::And));
  EXPECT_TRUE(property_applicable(v, P::Bot));
}

TEST(CheckProperty, ByNameRoundTrip) {
  for (P p : kAllProperties) EXPECT_EQ(parse_property(to_string(p)), p);
  EXPECT_FALSE(parse_property("NOPE"));
}

TEST(Classify, OrderOnB4IsSubordinationAlgebra) {
  EXPECT_TRUE(has_class(with_order("B4"), "subordination algebra"));
  EXPECT_TRUE(is_subordination_algebra(with_order("B4")));
}

TEST(Classify, EmptyOnB4) {
  ProtoSubAlg s = sub("B4", {});
  EXPECT_TRUE(has_class(s, "premonotone"));
  EXPECT_TRUE(has_class(s, "directed/monotone"));
  EXPECT_FALSE(has_class(s, "subordination algebra"));
}

TEST(Classify, FullOnB4) { EXPECT_TRUE(has_class(with_full("B4"), "subordination algebra")); }

TEST(Classify, StrictBooleanExcludesChains) {
  ProtoSubAlg s = with_order("chain3");
  auto loose = classify(s);
  auto strict = classify(s, true);
  EXPECT_NE(std::find(loose.begin(), loose.end(), "subordination algebra"), loose.end());
  EXPECT_EQ(std::find(strict.begin(), strict.end(), "subordination algebra"), strict.end());
}

TEST(Close, TopOnEmptyChain) {
  ProtoSubAlg c = close(sub("chain3", {}), RuleSet{Rule::Top});
  EXPECT_EQ(c.prec.pairs(), (std::vector<std::pair<Elem, Elem>>{{2, 2}}));
}

TEST(Close, StrengtheningAndWeakeningOnB4) {
  ProtoSubAlg c = close(sub("B4", {{1, 1}}), RuleSet{Rule::SI, Rule::WO});
  EXPECT_EQ(c.prec.pairs(), (std::vector<std::pair<Elem, Elem>>{{0, 1}, {0, 3}, {1, 1}, {1, 3}}));
}

TEST(Close, AllSixRulesOnB4Diagonal) {
  ProtoSubAlg c = close(sub("B4", {{1, 1}, {2, 2}}), all_six());
  EXPECT_EQ(c.prec.pairs(),
            (std::vector<std::pair<Elem, Elem>>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}));
  EXPECT_TRUE(is_subordination_algebra(c));
}

TEST(Close, SystemsAreNested) {
  ProtoSubAlg s = sub("B4", {{1, 1}});
  Relation r1 = close_i(s, 1).prec, r2 = close_i(s, 2).prec, r3 = close_i(s, 3).prec, r4 = close_i(s, 4).prec;
  EXPECT_EQ(r1, naive_close(builtin::b4(), s.prec, system_rules(1)));
  EXPECT_TRUE(r1.subset_of(r2));
  EXPECT_TRUE(r1.subset_of(r3));
  EXPECT_TRUE(r2.subset_of(r4));
  EXPECT_TRUE(r3.subset_of(r4));
}

TEST(Close, MatchesNaiveFixpointOnRandomRelations) {
  std::mt19937_64 rng(3);
  const std::vector<Rule> pool = {Rule::Bot, Rule::Top, Rule::SI, Rule::WO, Rule::And, Rule::Or, Rule::CT, Rule::T};
  for (const auto& name : {"B4", "chain4", "FDL2", "N5", "M3", "B8"}) {
    Carrier c = builtin::carrier(name);
    for (int k = 0; k < 30; ++k) {
      Relation r = random_relation(c.size(), 150, rng);
      RuleSet rules;
      for (Rule rule : pool)
        if (rng() % 2) rules.add(rule);
      Relation got = close(c, r, rules);
      EXPECT_EQ(got, naive_close(*c.lattice, r, rules)) << name;
      for (Rule rule : rules.rules()) EXPECT_TRUE(holds(make_subalg(c, got), rule_property(rule))) << name;
    }
  }
}

TEST(Close, LatticeRulesNeedALattice) {
  EXPECT_THROW(close(sub("V", {}), RuleSet{Rule::And}), MissingStructure);
  EXPECT_THROW(close_i(sub("V", {}), 1), MissingStructure);
  EXPECT_THROW(system_rules(5), InputError);
}

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate_relations(builtin::carrier("chain2")).size(), 16U);
  EXPECT_EQ(enumerate_relations(builtin::carrier("B4")).size(), 65536U);
  EXPECT_THROW(enumerate_relations(builtin::carrier("FDL2")), TooLarge);
}

TEST(Enumerate, SubordinationCountsAgreeWithClosureGeneration) {
  const std::vector<P> six = {P::SI, P::WO, P::And, P::Or, P::Bot, P::Top};
  const std::map<std::string, std::size_t> frozen = {{"chain2", 2}, {"chain3", 6}, {"chain4", 20}, {"B4", 16}};
  for (const auto& [name, count] : frozen) {
    Carrier c = builtin::carrier(name);
    auto filtered = enumerate_relations(c, six);
    auto generated = closure_generated_subordinations(c);
    EXPECT_EQ(filtered.size(), count) << name;
    std::set<Relation> a, b(generated.begin(), generated.end());
    for (const auto& s : filtered) a.insert(s.prec);
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Enumerate, ClosureGeneratedCountsMatchMonotoneRelationsOnJoinIrreducibles) {
  // On a finite distributive lattice subordinations correspond to relations
  // on the join-irreducibles that are up-closed in the first coordinate and
  // down-closed in the second.
  const std::map<std::string, std::size_t> frozen = {{"FDL2", 168}, {"B8", 512}, {"B4+top", 50}};
  for (const auto& [name, count] : frozen) {
    Carrier c = builtin::carrier(name);
    auto J = join_irreducibles(*c.lattice).to_vector();
    Matrix m(J.size(), std::vector<bool>(J.size()));
    for (std::size_t i = 0; i < J.size(); ++i)
      for (std::size_t k = 0; k < J.size(); ++k) m[i][k] = c.poset->leq(J[i], J[k]);
    EXPECT_EQ(oracle::count_monotone_relations(validate_poset(m)), count) << name;
    auto gen = closure_generated_subordinations(c);
    EXPECT_EQ(gen.size(), count) << name;
    for (const auto& r : gen) EXPECT_TRUE(is_subordination_algebra(make_subalg(c, r))) << name;
  }
}

TEST(Sl2Forms, ImageFormDiffersFromPreimageForm) {
  // every element below 1 only: SI, WO, DD hold; <> is constantly 1
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem a = 0; a < 4; ++a) pairs.emplace_back(a, 3);
  ProtoSubAlg s = sub("B4", pairs);
  EXPECT_TRUE(check_property(s, P::SL2).holds);
  PropertyResult pre = sl2_preimage_form(s);
  EXPECT_FALSE(pre.holds);
  EXPECT_EQ(pre.witness, (std::vector<Elem>{3, 0, 0}));
}
