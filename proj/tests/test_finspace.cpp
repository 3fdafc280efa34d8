#include <gtest/gtest.h>

#include "support.hpp"

using namespace fintop;
using namespace testing_support;

TEST(FiniteSpace, ChainIsValid) {
  auto x = chain2();
  EXPECT_EQ(x->size(), 2u);
  EXPECT_TRUE(x->leq(0, 1));
  EXPECT_FALSE(x->leq(1, 0));
}

TEST(FiniteSpace, CycleRejected) {
  EXPECT_THROW(FiniteSpace::from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
  EXPECT_THROW(FiniteSpace::from_covers({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
               CycleError);
}

TEST(FiniteSpace, ShapeErrors) {
  EXPECT_THROW(FiniteSpace::from_covers({"a", "a"}, {}), ShapeError);
  EXPECT_THROW(FiniteSpace::from_covers({"a"}, {{"a", "z"}}), ShapeError);
  std::vector<std::string> many(65);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = std::to_string(i);
  EXPECT_THROW(FiniteSpace::from_covers(many, {}), ShapeError);
}

TEST(FiniteSpace, PseudocircleOrder) {
  auto x = pseudocircle();
  EXPECT_EQ(x->size(), 4u);
  EXPECT_EQ(x->minimal(x->all()), bits::bit(0) | bits::bit(1));
  EXPECT_EQ(x->maximal(x->all()), bits::bit(2) | bits::bit(3));
  EXPECT_FALSE(x->comparable(0, 1));
  EXPECT_FALSE(x->comparable(2, 3));
}

TEST(FiniteSpace, RelationClosureAndAntisymmetry) {
  for (const auto& x : generate_corpus(4).spaces) {
    for (Point a = 0; a < x->size(); ++a) {
      EXPECT_TRUE(x->leq(a, a));
      for (Point b = 0; b < x->size(); ++b) {
        if (a != b) EXPECT_FALSE(x->leq(a, b) && x->leq(b, a));
        for (Point c = 0; c < x->size(); ++c) {
          if (x->leq(a, b) && x->leq(b, c)) EXPECT_TRUE(x->leq(a, c));
        }
      }
    }
  }
}

TEST(FiniteSpace, FromRelationClosesTransitively) {
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
  leq[0][1] = true;
  leq[1][2] = true;
  auto x = FiniteSpace::from_relation({"a", "b", "c"}, leq);
  EXPECT_TRUE(x.leq(0, 2));
}

TEST(SpaceMap, RejectsNonMonotone) {
  auto x = chain2();
  EXPECT_THROW(SpaceMap(x, x, {1, 0}), ContinuityError);
  EXPECT_THROW(SpaceMap(x, x, {0}), ShapeError);
  EXPECT_THROW(SpaceMap(x, x, {0, 2}), ShapeError);
}

TEST(SpaceMap, AcceptedMapsPreserveOrder) {
  auto c = generate_corpus(3);
  for (const auto& x : c.spaces) {
    for (const auto& y : c.spaces) {
      for (const auto& f : all_maps(x, y)) {
        for (Point a = 0; a < x->size(); ++a) {
          for (Point b = 0; b < x->size(); ++b) {
            if (x->leq(a, b)) EXPECT_TRUE(y->leq(f(a), f(b)));
          }
        }
      }
      // all_maps agrees with brute force
      const auto brute = oracle::all_maps(oracle::from_space(*x), oracle::from_space(*y));
      EXPECT_EQ(all_maps(x, y).size(), brute.size());
    }
  }
}

TEST(Product, UnitLaw) {
  auto p = product({point(), pseudocircle()});
  EXPECT_EQ(p.space()->size(), 4u);
  EXPECT_TRUE(isomorphic(*p.space(), *pseudocircle()));
}

TEST(Product, Sizes) {
  EXPECT_EQ(product({pseudocircle(), pseudocircle()}).space()->size(), 16u);
  auto c = product({chain2(), chain2()});
  EXPECT_EQ(c.space()->size(), 4u);
  EXPECT_EQ(bits::count(c.space()->maximal(c.space()->all())), 1u);
}

TEST(Product, ProjectionsRecoverTuples) {
  auto x = pseudocircle();
  auto y = chain2();
  auto prod = product({x, y, x});
  for (Point p = 0; p < prod.space()->size(); ++p) {
    std::vector<Point> t;
    for (std::size_t i = 0; i < prod.arity(); ++i) t.push_back(prod.projection(i)(p));
    EXPECT_EQ(prod.index(t), p);
  }
  EXPECT_THROW(product({}), ShapeError);
}

TEST(Product, DiagonalIsContinuous) {
  auto prod = power(pseudocircle(), 2);
  auto d = prod.diagonal();
  EXPECT_TRUE(SpaceMap::is_order_preserving(*d.domain(), *d.codomain(), d.assignment()));
}

TEST(RestrictMap, IdentityAndConstant) {
  auto x = pseudocircle();
  auto sub = induced_subspace(x, std::vector<std::string>{"a", "c", "d"});
  auto r = restrict_map(SpaceMap::identity(x), sub, sub);
  EXPECT_EQ(r.assignment(), (std::vector<Point>{0, 1, 2}));
  auto k = restrict_map(SpaceMap::constant(x, x, 2), sub);
  EXPECT_TRUE(k.is_constant());
  EXPECT_EQ(k(0), 2u);
}

TEST(RestrictMap, CollapseToChain) {
  auto x = pseudocircle();
  auto y = chain2();
  SpaceMap f(x, y, {0, 0, 1, 1});
  auto sub = induced_subspace(x, std::vector<std::string>{"a", "c"});
  auto g = restrict_map(f, sub);
  EXPECT_EQ(g.assignment(), (std::vector<Point>{0, 1}));
  EXPECT_TRUE(SpaceMap::is_order_preserving(*g.domain(), *g.codomain(), g.assignment()));
  auto ys = induced_subspace(y, bits::bit(0));
  EXPECT_THROW(restrict_map(f, sub, ys), ImageError);
}

TEST(OpenSets, SmallExamples) {
  EXPECT_EQ(open_sets(*point()), (std::vector<PointSet>{0, 1}));
  auto c = open_sets(*chain2());
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c, (std::vector<PointSet>{0, 1, 3}));
  EXPECT_EQ(open_sets(*pseudocircle()).size(), 7u);
}

TEST(OpenSets, MatchBruteForce) {
  for (const auto& x : generate_corpus(4).spaces) {
    auto got = open_sets(*x);
    for (PointSet s : got) EXPECT_TRUE(x->is_down_set(s));
    std::sort(got.begin(), got.end());
    auto want = oracle::down_sets(oracle::from_space(*x));
    EXPECT_EQ(got, want);
  }
}

TEST(OpenSets, StreamTruncates) {
  OpenSetStream s(*pseudocircle(), 3);
  std::size_t n = 0;
  while (s.next()) ++n;
  EXPECT_EQ(n, 3u);
  EXPECT_TRUE(s.truncated());
}

TEST(Components, Examples) {
  EXPECT_EQ(connected_components(*discrete2()).size(), 2u);
  EXPECT_EQ(connected_components(*pseudocircle()).size(), 1u);
  EXPECT_EQ(connected_components(FiniteSpace::from_down_sets({})).size(), 0u);
}

TEST(Corpus, CountsMatchKnownSequence) {
  auto c = generate_corpus(5);
  EXPECT_EQ(c.counts, (std::vector<std::size_t>{0, 1, 2, 5, 16, 63}));
  EXPECT_EQ(generate_corpus(1).spaces.size(), 1u);
  EXPECT_EQ(generate_corpus(2).counts[2], 2u);
  EXPECT_THROW(generate_corpus(6), PreconditionError);
  for (std::size_t i = 0; i < c.spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < c.spaces.size(); ++j) {
      if (c.spaces[i]->size() == c.spaces[j]->size()) {
        EXPECT_FALSE(isomorphic(*c.spaces[i], *c.spaces[j]));
      }
    }
  }
}
