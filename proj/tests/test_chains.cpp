#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fintop;
using namespace testing_support;

namespace {

oracle::Rows to_rows(const IntMatrix& m) {
  oracle::Rows out;
  for (const auto& r : m.to_rows()) out.emplace_back(r.begin(), r.end());
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  }
  return m;
}

std::vector<SimplicialComplex> complex_corpus() {
  std::vector<SimplicialComplex> out;
  for (const auto& x : generate_corpus(4).spaces) out.push_back(order_complex(*x));
  out.push_back(torus());
  out.push_back(projective_plane());
  out.push_back(order_complex(*cone()));
  return out;
}

}  // namespace

TEST(Smith, FactorsMatchMinorsOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 4;
    const std::size_t c = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, r, c, 4);
    const SmithForm s = smith_normal_form(a);
    EXPECT_EQ(smith_certificate_problem(a, s), std::nullopt);
    const auto want = oracle::invariant_factors(to_rows(a));
    ASSERT_EQ(s.invariant_factors.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(s.invariant_factors[i], want[i]);
  }
}

TEST(Smith, Examples) {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  ASSERT_EQ(s.invariant_factors.size(), 3u);
  EXPECT_EQ(s.invariant_factors[0], 2);
  EXPECT_EQ(s.invariant_factors[1], 6);
  EXPECT_EQ(s.invariant_factors[2], 12);
  EXPECT_EQ(smith_normal_form(IntMatrix(3, 2)).rank, 0u);
  EXPECT_EQ(smith_normal_form(IntMatrix(0, 3)).rank, 0u);
}

TEST(Smith, PromotesOnOverflow) {
  const std::int64_t big = std::int64_t{1} << 61;
  IntMatrix a = IntMatrix::from_rows({{big, big - 1}, {big - 3, big + 5}});
  auto s = smith_normal_form(a);
  EXPECT_TRUE(s.promoted);
  EXPECT_EQ(smith_certificate_problem(a, s), std::nullopt);
  EXPECT_EQ(s.rank, 2u);
}

TEST(Smith, CertificateCheckerRejectsTampering) {
  IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  auto s = smith_normal_form(a);
  ASSERT_EQ(smith_certificate_problem(a, s), std::nullopt);
  auto bad = s;
  bad.diagonal(0, 0) = 5;
  EXPECT_TRUE(smith_certificate_problem(a, bad).has_value());
  bad = s;
  bad.left(0, 0) *= 2;
  EXPECT_TRUE(smith_certificate_problem(a, bad).has_value());
}

TEST(Complex, OrderComplexExamples) {
  auto c = order_complex(*chain2());
  EXPECT_EQ(c.dimension(), 1);
  EXPECT_EQ(c.count(1), 1u);
  auto p = order_complex(*pseudocircle());
  EXPECT_EQ(p.count(0), 4u);
  EXPECT_EQ(p.count(1), 4u);
  EXPECT_EQ(p.dimension(), 1);
  auto anti = order_complex(*space({"a", "b", "c"}, {}));
  EXPECT_EQ(anti.count(0), 3u);
  EXPECT_EQ(anti.dimension(), 0);
}

TEST(Complex, BoundarySquaresToZero) {
  for (const auto& k : complex_corpus()) EXPECT_TRUE(boundary_squares_to_zero(k));
}

TEST(Complex, EulerFromBettiMatchesSimplexCount) {
  for (const auto& k : complex_corpus()) {
    for (const Ring& r : {Ring::integers(), Ring::rationals(), Ring::prime(2), Ring::prime(3)}) {
      EXPECT_EQ(homology(k, r).euler_from_ranks(), k.euler_characteristic());
      EXPECT_EQ(cohomology(k, r).euler_from_ranks(), k.euler_characteristic());
    }
  }
}

TEST(Complex, RationalRankEqualsIntegerSnfRank) {
  for (const auto& k : complex_corpus()) {
    for (int d = 1; d <= k.dimension(); ++d) {
      const IntMatrix m = boundary_matrix(k, static_cast<std::size_t>(d));
      const auto s = smith_normal_form(m);
      EXPECT_EQ(smith_certificate_problem(m, s), std::nullopt);
      RationalField q;
      EXPECT_EQ(rank_of(q, to_field_rows(q, m), m.cols()), s.rank);
      EXPECT_EQ(oracle::rank_mod(to_rows(m), 1000003), s.rank);
    }
  }
}

TEST(Homology, Examples) {
  auto pt = homology(order_complex(*point()), Ring::integers());
  EXPECT_EQ(pt.rank, std::vector<std::size_t>{1});
  auto circle = homology(circle_complex(), Ring::integers());
  EXPECT_EQ(circle.rank, (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(circle.torsion[0].empty());
  EXPECT_TRUE(circle.torsion[1].empty());
  EXPECT_FALSE(circle.nonzero(2));
  EXPECT_EQ(homology(torus(), Ring::integers()).rank, (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Homology, ProjectivePlaneTorsion) {
  auto k = projective_plane();
  auto h = homology(k, Ring::integers());
  EXPECT_EQ(h.rank, (std::vector<std::size_t>{1, 0, 0}));
  ASSERT_EQ(h.torsion[1].size(), 1u);
  EXPECT_EQ(h.torsion[1][0], 2);
  auto c = cohomology(k, Ring::integers());
  EXPECT_EQ(c.rank, (std::vector<std::size_t>{1, 0, 0}));
  ASSERT_EQ(c.torsion[2].size(), 1u);
  EXPECT_EQ(c.torsion[2][0], 2);
  EXPECT_EQ(cohomology(k, Ring::prime(2)).rank, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(cohomology(k, Ring::rationals()).rank, (std::vector<std::size_t>{1, 0, 0}));
}

TEST(Homology, BettiOverPrimeFieldMatchesOracle) {
  for (const auto& k : complex_corpus()) {
    for (long long p : {2, 3, 5}) {
      auto h = homology(k, Ring::prime(static_cast<std::uint64_t>(p)));
      for (int d = 0; d <= k.dimension(); ++d) {
        const std::size_t out = d == 0 ? 0 : oracle::rank_mod(to_rows(boundary_matrix(k, d)), p);
        const std::size_t in = d == k.dimension()
                                   ? 0
                                   : oracle::rank_mod(to_rows(boundary_matrix(k, d + 1)), p);
        EXPECT_EQ(h.rank[d], k.count(d) - out - in);
      }
    }
  }
}

TEST(Dimension, Examples) {
  EXPECT_EQ(cd_space(order_complex(*point()), default_probes()).lower_bound, 0);
  auto circle = cd_space(circle_complex(), default_probes());
  EXPECT_EQ(circle.lower_bound, 1);
  EXPECT_EQ(circle.upper_bound, 1);
  auto rp2 = cd_space(projective_plane(), {Ring::rationals()});
  EXPECT_EQ(rp2.lower_bound, 2);
  ASSERT_EQ(rp2.torsion_primes.size(), 1u);
  EXPECT_EQ(rp2.torsion_primes[0], 2);
  EXPECT_EQ(cd_space(projective_plane(), {Ring::rationals()}, false).lower_bound, 0);
  EXPECT_EQ(cd_space(projective_plane(), {Ring::prime(2)}, false).lower_bound, 2);
  EXPECT_EQ(hd_space(projective_plane(), {Ring::integers()}, false).lower_bound, 1);
  EXPECT_THROW(cd_space(circle_complex(), {}), PreconditionError);
}

TEST(Dimension, BoundedByComplexDimension) {
  for (const auto& x : generate_corpus(5).spaces) {
    auto k = order_complex(*x);
    auto cd = cd_space(k, default_probes());
    EXPECT_LE(cd.lower_bound, k.dimension());
    EXPECT_LE(hd_space(k, default_probes()).lower_bound, k.dimension());
  }
}

TEST(Ring, Parse) {
  EXPECT_EQ(Ring::parse("Z"), Ring::integers());
  EXPECT_EQ(Ring::parse("Q"), Ring::rationals());
  EXPECT_EQ(Ring::parse("Zp:7").modulus, 7u);
  EXPECT_THROW(Ring::parse("Zp:4"), NonPrimeModulus);
  EXPECT_THROW(Ring::parse("R"), PreconditionError);
  EXPECT_THROW(Ring::parse("Zp:x"), PreconditionError);
}

TEST(Complex, VertexOrderValidation) {
  auto k = SimplicialComplex::from_facets({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_FALSE(k.ordered());
  EXPECT_THROW(k.with_vertex_order({"a", "b"}), ShapeError);
  EXPECT_THROW(k.with_vertex_order({"a", "b", "b"}), ShapeError);
  EXPECT_TRUE(k.with_vertex_order({"c", "a", "b"}).ordered());
  EXPECT_THROW(SimplicialComplex::from_facets({"a"}, {{"a", "z"}}), ShapeError);
}
