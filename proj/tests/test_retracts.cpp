#include <gtest/gtest.h>

#include "support.hpp"

using namespace fintop;
using namespace testing_support;

TEST(Retraction, Examples) {
  auto x = pseudocircle();
  auto whole = induced_subspace(x, x->all());
  std::vector<Point> id{0, 1, 2, 3};
  EXPECT_TRUE(is_retraction(whole, id));

  auto c = chain2();
  auto bottom = induced_subspace(c, bits::bit(0));
  EXPECT_TRUE(is_retraction(bottom, std::vector<Point>{0, 0}));

  // b -> a, d -> c onto {a, c}: d >= b forces r(d) >= r(b), which holds
  auto ac = induced_subspace(x, std::vector<std::string>{"a", "c"});
  EXPECT_TRUE(is_retraction(ac, std::vector<Point>{0, 0, 1, 1}));
  // d only lies above a and b, so it may also go to a
  EXPECT_TRUE(is_retraction(ac, std::vector<Point>{0, 0, 1, 0}));
  // a must stay fixed
  EXPECT_FALSE(is_retraction(ac, std::vector<Point>{1, 0, 1, 1}));
  // b -> c with d -> a breaks b <= d
  EXPECT_FALSE(is_retraction(ac, std::vector<Point>{0, 1, 1, 0}));
}

TEST(Retraction, Enumerate) {
  auto x = pseudocircle();
  auto whole = induced_subspace(x, x->all());
  auto all = enumerate_retractions(whole);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].assignment(), (std::vector<Point>{0, 1, 2, 3}));

  auto k = cone();
  auto circle = induced_subspace(k, std::vector<std::string>{"a", "b", "c", "d"});
  EXPECT_TRUE(enumerate_retractions(circle).empty());

  auto c = chain2();
  EXPECT_EQ(enumerate_retractions(induced_subspace(c, bits::bit(0))).size(), 1u);
}

TEST(Retraction, GeneratorMatchesBruteForce) {
  for (const auto& x : generate_corpus(4).spaces) {
    const auto o = oracle::from_space(*x);
    for (PointSet m = 1; m <= x->all(); ++m) {
      auto sub = induced_subspace(x, m);
      auto rs = enumerate_retractions(sub);
      for (const auto& r : rs) EXPECT_TRUE(is_retraction(r, sub));
      std::vector<std::size_t> pts(sub.embedding.begin(), sub.embedding.end());
      EXPECT_EQ(rs.size(), oracle::retraction_count(o, pts));
    }
  }
}

TEST(Square, IdentitySquaresArePairsOfEqualRetractions) {
  for (const auto& x : generate_corpus(4).spaces) {
    auto f = SpaceMap::identity(x);
    for (PointSet m = 1; m <= x->all(); ++m) {
      auto sub = induced_subspace(x, m);
      auto squares = enumerate_squares(f, sub, sub);
      EXPECT_EQ(squares.size(), enumerate_retractions(sub).size());
      for (const auto& sq : squares) {
        EXPECT_EQ(sq.r_x.assignment(), sq.r_y.assignment());
        EXPECT_TRUE(verify_square(sq).commutes);
        EXPECT_EQ(sq.f_prime, restrict_map(f, sub, sub));
      }
    }
  }
}

TEST(Square, ConstantMapSquares) {
  auto x = pseudocircle();
  auto y = pseudocircle();
  auto f = SpaceMap::constant(x, y, 0);
  auto xs = induced_subspace(x, std::vector<std::string>{"a", "c"});
  auto ys = induced_subspace(y, std::vector<std::string>{"a", "d"});
  auto squares = enumerate_squares(f, xs, ys);
  EXPECT_EQ(squares.size(),
            enumerate_retractions(xs).size() * enumerate_retractions(ys).size());
  for (const auto& sq : squares) {
    EXPECT_TRUE(sq.f_prime.is_constant());
    EXPECT_EQ(ys.embedding[sq.f_prime(0)], 0u);
  }
}

TEST(Square, FailureLocusReported) {
  auto x = pseudocircle();
  auto f = SpaceMap::identity(x);
  auto sub = induced_subspace(x, std::vector<std::string>{"a", "c"});
  auto squares = enumerate_squares(f, sub, sub);
  ASSERT_FALSE(squares.empty());
  RetractionSquare sq = squares.front();
  ASSERT_TRUE(verify_square(sq).commutes);
  // perturb r_X at one non-fixed point, keeping it a retraction
  for (const auto& r : enumerate_retractions(sub)) {
    std::size_t diff = 0;
    Point where = 0;
    for (Point p = 0; p < 4; ++p) {
      if (r(p) != sq.r_x(p)) {
        ++diff;
        where = p;
      }
    }
    if (diff != 1) continue;
    RetractionSquare bad = sq;
    bad.r_x = r;
    auto check = verify_square(bad);
    EXPECT_FALSE(check.commutes);
    ASSERT_TRUE(check.failure.has_value());
    EXPECT_EQ(*check.failure, where);
    return;
  }
  FAIL() << "no one-point perturbation found";
}

TEST(Square, ComponentErrors) {
  auto x = pseudocircle();
  auto f = SpaceMap::identity(x);
  auto sub = induced_subspace(x, std::vector<std::string>{"a", "c"});
  RetractionSquare sq = enumerate_squares(f, sub, sub).front();
  sq.r_x = SpaceMap(x, sub.space, {1, 1, 1, 1});
  EXPECT_THROW(verify_square(sq), ComponentInvalid);
}

TEST(Square, NoRetractionNoSquares) {
  auto k = cone();
  auto f = SpaceMap::identity(k);
  auto circle = induced_subspace(k, std::vector<std::string>{"a", "b", "c", "d"});
  EXPECT_TRUE(enumerate_squares(f, circle, circle).empty());
}

TEST(Audit, EmptyCorpus) {
  PosetCorpus empty;
  auto report = audit_monotonicity(empty, AuditSpec{});
  EXPECT_EQ(report.summary.instances, 0u);
  EXPECT_EQ(report.summary.violations, 0u);
  EXPECT_TRUE(report.records.empty());
}

TEST(Audit, IdentityCategoryUpToFourPoints) {
  AuditSpec spec;
  spec.identity_only = true;
  auto report = audit_monotonicity(generate_corpus(4), spec);
  EXPECT_EQ(report.summary.violations, 0u);
  EXPECT_EQ(report.summary.transport_failures, 0u);
  EXPECT_EQ(report.summary.budget_exceeded, 0u);
  EXPECT_GT(report.summary.instances, 0u);
  EXPECT_TRUE(report.clean());
}

TEST(Audit, ComplexityRThreeOnTwoPoints) {
  AuditSpec spec;
  spec.invariant = AuditInvariant::Complexity;
  spec.r_values = {2, 3};
  spec.max_points = 2;
  auto report = audit_monotonicity(generate_corpus(2), spec);
  EXPECT_EQ(report.summary.violations, 0u);
  EXPECT_EQ(report.summary.transport_failures, 0u);
  EXPECT_GT(report.summary.instances, 0u);
}

TEST(Audit, Deterministic) {
  AuditSpec spec;
  spec.max_points = 3;
  auto c = generate_corpus(3);
  auto a = audit_monotonicity(c, spec);
  spec.jobs = 4;
  auto b = audit_monotonicity(c, spec);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].f, b.records[i].f);
    EXPECT_EQ(a.records[i].value_f, b.records[i].value_f);
    EXPECT_EQ(a.records[i].value_f_prime, b.records[i].value_f_prime);
    EXPECT_EQ(a.records[i].squares, b.records[i].squares);
  }
}

TEST(Audit, DeadlineSkipsPairs) {
  AuditSpec spec;
  spec.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  auto report = audit_monotonicity(generate_corpus(2), spec);
  EXPECT_EQ(report.summary.pairs_skipped, report.summary.pairs);
  EXPECT_EQ(report.summary.instances, 0u);
}
