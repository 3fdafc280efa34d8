#include <gtest/gtest.h>

#include "support.hpp"

using namespace fintop;
using namespace testing_support;

TEST(Homotopy, Reflexive) {
  HomotopyEngine e;
  auto f = SpaceMap::identity(pseudocircle());
  auto d = e.are_homotopic(f, f);
  ASSERT_TRUE(d.homotopic);
  EXPECT_EQ(d.witness->length(), 1u);
}

TEST(Homotopy, ConstantsInDistinctComponents) {
  HomotopyEngine e;
  auto x = point();
  auto y = discrete2();
  EXPECT_FALSE(e.are_homotopic(SpaceMap::constant(x, y, 0), SpaceMap::constant(x, y, 1)).homotopic);
}

TEST(Homotopy, PseudocircleIdentityNotNull) {
  HomotopyEngine e;
  auto x = pseudocircle();
  auto id = SpaceMap::identity(x);
  for (Point v = 0; v < 4; ++v) {
    EXPECT_FALSE(e.are_homotopic(id, SpaceMap::constant(x, x, v)).homotopic);
  }
  EXPECT_FALSE(e.is_nullhomotopic(id).homotopic);
  const auto ox = oracle::from_space(*x);
  EXPECT_FALSE(oracle::nullhomotopic(ox, ox, to_oracle(id.assignment())));
}

TEST(Homotopy, NullhomotopicExamples) {
  HomotopyEngine e;
  auto x = pseudocircle();
  EXPECT_TRUE(e.is_nullhomotopic(SpaceMap::constant(x, x, 3)).homotopic);
  auto d = e.is_nullhomotopic(SpaceMap::identity(cone()));
  ASSERT_TRUE(d.homotopic);
  EXPECT_TRUE(d.witness->valid());
  EXPECT_TRUE(d.witness->back().is_constant());
  auto empty = make_space(FiniteSpace::from_down_sets({}));
  EXPECT_THROW(e.is_nullhomotopic(SpaceMap::identity(empty)), EmptyDomain);
}

TEST(Homotopy, ComparableMapsHaveShortWitness) {
  HomotopyEngine e;
  auto c = generate_corpus(3);
  for (const auto& x : c.spaces) {
    for (const auto& y : c.spaces) {
      auto maps = all_maps(x, y);
      for (const auto& f : maps) {
        for (const auto& g : maps) {
          if (!(f.leq(g)) || f == g) continue;
          auto d = e.are_homotopic(f, g);
          ASSERT_TRUE(d.homotopic);
          EXPECT_TRUE(d.witness->joins(f, g));
          EXPECT_EQ(d.witness->length(), 2u);
        }
      }
    }
  }
}

TEST(Homotopy, MatchesOracleAndIsEquivalence) {
  HomotopyEngine e;
  auto c = generate_corpus(4);
  std::size_t pairs = 0;
  for (const auto& x : c.spaces) {
    for (const auto& y : c.spaces) {
      if (x->size() * y->size() > 12) continue;
      const auto classes = oracle::homotopy_classes(oracle::from_space(*x), oracle::from_space(*y));
      auto maps = all_maps(x, y);
      ASSERT_EQ(maps.size(), classes.maps.size());
      for (const auto& f : maps) {
        for (const auto& g : maps) {
          auto d = e.are_homotopic(f, g);
          const bool want = classes.class_of(to_oracle(f.assignment())) ==
                            classes.class_of(to_oracle(g.assignment()));
          ASSERT_EQ(d.homotopic, want);
          if (d.homotopic) {
            EXPECT_TRUE(d.witness->joins(f, g));
            EXPECT_TRUE(d.witness->reversed().joins(g, f));
          }
          EXPECT_EQ(e.are_homotopic(g, f).homotopic, d.homotopic);
          ++pairs;
        }
      }
    }
  }
  EXPECT_GT(pairs, 1000u);
}

TEST(Homotopy, DomainMismatch) {
  HomotopyEngine e;
  EXPECT_THROW(e.are_homotopic(SpaceMap::identity(point()), SpaceMap::identity(chain2())),
               DomainMismatch);
}

TEST(Core, Examples) {
  EXPECT_EQ(core(chain2()).core.space->size(), 1u);
  auto pc = core(pseudocircle());
  EXPECT_EQ(pc.core.space->size(), 4u);
  EXPECT_TRUE(pc.removed.empty());
  auto cc = core(cone());
  EXPECT_EQ(cc.core.space->size(), 1u);
  EXPECT_EQ(cc.removed.size(), 4u);
  EXPECT_TRUE(is_contractible(point()));
  EXPECT_FALSE(is_contractible(pseudocircle()));
  EXPECT_TRUE(is_contractible(cone()));
}

TEST(Core, RetractionAndInclusionAreHomotopyInverse) {
  HomotopyEngine e;
  for (const auto& x : generate_corpus(4).spaces) {
    auto c = core(x);
    EXPECT_TRUE(c.deformation.valid());
    EXPECT_TRUE(c.deformation.joins(SpaceMap::identity(x), compose(c.inclusion, c.retraction)));
    EXPECT_TRUE(e.are_homotopic(compose(c.inclusion, c.retraction), SpaceMap::identity(x)).homotopic);
    EXPECT_EQ(compose(c.retraction, c.inclusion), SpaceMap::identity(c.core.space));
  }
}

TEST(Core, ContractibleAgreesWithNullhomotopy) {
  HomotopyEngine e;
  for (const auto& x : generate_corpus(5).spaces) {
    EXPECT_EQ(is_contractible(x), e.is_nullhomotopic(SpaceMap::identity(x)).homotopic)
        << x->structure_key();
  }
}

TEST(Core, RetractOfContractibleIsContractible) {
  std::size_t checked = 0;
  for (const auto& x : generate_corpus(5).spaces) {
    if (!is_contractible(x)) continue;
    for (PointSet m = 1; m <= x->all(); ++m) {
      auto sub = induced_subspace(x, m);
      if (enumerate_retractions(sub).empty()) continue;
      EXPECT_TRUE(is_contractible(sub.space));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Engine, CacheIsUsed) {
  HomotopyEngine e;
  auto x = pseudocircle();
  auto f = SpaceMap::identity(x);
  auto g = SpaceMap::constant(x, x, 0);
  e.are_homotopic(f, g);
  e.are_homotopic(f, g);
  EXPECT_GE(e.cache_hits(), 1u);
}

TEST(FenceSearch, OnePointAgreesWithFullComparability) {
  auto c = generate_corpus(3);
  for (const auto& x : c.spaces) {
    for (const auto& y : c.spaces) {
      auto maps = all_maps(x, y);
      for (const auto& f : maps) {
        for (const auto& g : maps) {
          auto a = fence::one_point(*x, *y, f.assignment(), g.assignment(), 1000000);
          auto b = fence::full_comparability(*x, *y, f.assignment(), g.assignment(), 1000000);
          ASSERT_NE(a.outcome, fence::Outcome::Capped);
          ASSERT_NE(b.outcome, fence::Outcome::Capped);
          EXPECT_EQ(a.outcome, b.outcome);
        }
      }
    }
  }
}
