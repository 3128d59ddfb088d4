#include <gtest/gtest.h>

#include <iosa/builtins.hpp>
#include <iosa/duality.hpp>
#include <iosa/harness.hpp>

using namespace iosa;
using P = Property;

namespace {

ProtoSubAlg with_order(const std::string& name) {
  Carrier c = builtin::carrier(name);
  return make_subalg(c, order_relation(*c.poset));
}

ProtoSubAlg with_full(const std::string& name) {
  Carrier c = builtin::carrier(name);
  return make_subalg(c, Relation::full(c.size()));
}

using Pairs = std::vector<std::pair<Elem, Elem>>;

const std::vector<std::string> kDistributive = {"chain2", "chain3", "chain4", "B4", "FDL2", "B4+top", "B8"};

}  // namespace

TEST(SpaceJirr, OrderOnB4IsDiagonal) {
  SubordinationSpace sp = build_space_jirr(with_order("B4"));
  EXPECT_EQ(sp.labels, (std::vector<std::string>{"a", "a'"}));
  EXPECT_EQ(sp.R.pairs(), (Pairs{{0, 0}, {1, 1}}));
}

TEST(SpaceJirr, OrderOnChain) {
  SubordinationSpace sp = build_space_jirr(with_order("chain3"));
  EXPECT_EQ(sp.labels, (std::vector<std::string>{"m", "1"}));
  EXPECT_EQ(sp.R.pairs(), (Pairs{{0, 0}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(sp.leq(0, 1));
}

TEST(SpaceJirr, FullRelationHasEmptyR) { EXPECT_EQ(build_space_jirr(with_full("B4")).R.count(), 0U); }

TEST(SpaceJirr, RequiresSubordinationLattice) {
  Carrier b4 = builtin::carrier("B4");
  EXPECT_THROW(build_space_jirr(make_subalg(b4, Relation(4))), NotSubordinationLattice);
  EXPECT_THROW(build_space_jirr(with_order("N5")), NotSubordinationLattice);
  EXPECT_THROW(build_space_primefilters(with_order("M3")), NotSubordinationLattice);
}

TEST(SpacePrimeFilters, Examples) {
  SubordinationSpace b4 = build_space_primefilters(with_order("B4"));
  ASSERT_EQ(b4.size(), 2U);
  EXPECT_EQ(b4.R.pairs(), (Pairs{{0, 0}, {1, 1}}));

  SubordinationSpace chain = build_space_primefilters(with_order("chain3"));
  ASSERT_EQ(chain.size(), 2U);
  std::size_t up1 = chain.labels[0] == "up(1)" ? 0 : 1, upm = 1 - up1;
  EXPECT_EQ(chain.labels[upm], "up(m)");
  EXPECT_TRUE(chain.R.contains(up1, upm));
  EXPECT_TRUE(chain.R.contains(up1, up1));
  EXPECT_TRUE(chain.R.contains(upm, upm));
  EXPECT_FALSE(chain.R.contains(upm, up1));

  EXPECT_EQ(build_space_primefilters(with_full("B4")).R.count(), 0U);
}

TEST(SpacesIsomorphic, TwoConstructionsAgree) {
  for (const auto& name : {"B4", "chain3"}) {
    auto iso = spaces_isomorphic(build_space_jirr(with_order(name)), build_space_primefilters(with_order(name)));
    EXPECT_TRUE(iso) << name;
  }
  SubordinationSpace j = build_space_jirr(with_order("B4"));
  SubordinationSpace pf = build_space_primefilters(with_order("B4"));
  auto iso = spaces_isomorphic(j, pf);
  ASSERT_TRUE(iso);
  for (std::size_t x = 0; x < j.size(); ++x) EXPECT_EQ(pf.labels[(*iso)[x]], "up(" + j.labels[x] + ")");
}

TEST(SpacesIsomorphic, TransposeOfChainSpaceDiffers) {
  SubordinationSpace sp = build_space_jirr(with_order("chain3"));
  EXPECT_FALSE(spaces_isomorphic(sp, transpose(sp)));
}

TEST(SpacesIsomorphic, TwoConstructionsAgreeOnEverySubordination) {
  for (const auto& name : kDistributive) {
    Carrier c = builtin::carrier(name);
    for (const auto& r : closure_generated_subordinations(c)) {
      ProtoSubAlg s = make_subalg(c, r);
      EXPECT_TRUE(spaces_isomorphic(build_space_jirr(s), build_space_primefilters(s))) << name;
    }
  }
}

TEST(CheckRelational, Examples) {
  SubordinationSpace b4 = build_space_jirr(with_order("B4"));
  EXPECT_TRUE(check_relational(b4, RelCondition::Reflexive));
  SubordinationSpace chain = build_space_jirr(with_order("chain3"));
  EXPECT_TRUE(check_relational(chain, RelCondition::Transitive));
  EXPECT_TRUE(check_relational(chain, RelCondition::Dense));
  SubordinationSpace empty = build_space_jirr(with_full("B4"));
  RelResult r = check_relational(empty, RelCondition::Reflexive);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(check_relational(empty, RelCondition::Transitive));
}

TEST(CheckRelational, ConditionNamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(RelCondition::SL1Verbatim); ++i) {
    auto c = static_cast<RelCondition>(i);
    EXPECT_EQ(parse_rel_condition(to_string(c)), c);
  }
  EXPECT_EQ(parse_rel_condition("reflexive"), RelCondition::Reflexive);
  EXPECT_EQ(parse_rel_condition("ct"), RelCondition::CT);
  EXPECT_FALSE(parse_rel_condition("bogus"));
}

TEST(Correspondence, AlgebraicAndRelationalSidesAgreeOnEverySubordination) {
  const std::vector<std::pair<P, RelCondition>> table = {
      {P::PrecInLeq, RelCondition::Reflexive}, {P::D, RelCondition::Transitive}, {P::T, RelCondition::Dense},
      {P::CT, RelCondition::CT},               {P::S9Fwd, RelCondition::S9Fwd}, {P::S9Bwd, RelCondition::S9Bwd},
      {P::SL1, RelCondition::SL1},             {P::SL2, RelCondition::SL2},     {P::Proper, RelCondition::Proper}};
  std::map<P, std::array<std::size_t, 2>> seen;
  for (const auto& name : kDistributive) {
    Carrier c = builtin::carrier(name);
    for (const auto& r : closure_generated_subordinations(c)) {
      ProtoSubAlg s = make_subalg(c, r);
      SubordinationSpace sp = build_space_jirr(s);
      for (auto [prop, cond] : table) {
        bool alg = holds(s, prop);
        EXPECT_EQ(alg, check_relational(sp, cond).holds) << name << " " << to_string(prop) << " " << r.to_bits();
        ++seen[prop][alg];
      }
    }
  }
  // both outcomes occur for every property, so no equivalence is vacuous
  for (const auto& [prop, counts] : seen) {
    EXPECT_GT(counts[0], 0U) << to_string(prop);
    EXPECT_GT(counts[1], 0U) << to_string(prop);
  }
}

TEST(LambdaMap, Examples) {
  LambdaMap l = lambda_map(builtin::b4());
  EXPECT_EQ(l.kappa(1), Elem{2});
  EXPECT_EQ(l.kappa(2), Elem{1});

  LambdaMap c = lambda_map(builtin::chain(3));
  EXPECT_EQ(c.kappa(1), Elem{0});
  EXPECT_EQ(c.kappa(2), Elem{1});
  EXPECT_EQ(c.kappa_inverse(0), Elem{1});

  LambdaMap two = lambda_map(builtin::chain(2));
  EXPECT_EQ(two.kappa(1), Elem{0});

  Carrier n5 = builtin::carrier("N5");
  EXPECT_THROW(lambda_map(*n5.lattice), NotDistributive);
}

TEST(LambdaMap, OrderIsomorphismOntoMeetIrreducibles) {
  for (const auto& name : kDistributive) {
    Carrier c = builtin::carrier(name);
    const FinLattice& L = *c.lattice;
    LambdaMap l = lambda_map(L);
    ElementSet image;
    for (auto [j, m] : l.pairs) image.set(m);
    EXPECT_EQ(image, meet_irreducibles(L)) << name;
    for (auto [j1, m1] : l.pairs)
      for (auto [j2, m2] : l.pairs) EXPECT_EQ(L.leq(j1, j2), L.leq(m1, m2)) << name;
  }
}

TEST(LambdaMap, TranslationLawOnEverySubordination) {
  for (const auto& name : kDistributive) {
    Carrier c = builtin::carrier(name);
    for (const auto& r : closure_generated_subordinations(c)) {
      auto fail = lambda_translation_failure(build_slanted(make_subalg(c, r)));
      EXPECT_FALSE(fail) << name << " " << r.to_bits();
    }
  }
}
