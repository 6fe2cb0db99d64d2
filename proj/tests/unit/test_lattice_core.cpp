#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"

using namespace heightlat;

TEST(Vertex, NormAndParity) {
  Vertex v{3, -4};
  EXPECT_EQ(v.dimension(), 2u);
  EXPECT_EQ(v.l1_norm(), 7);
  EXPECT_EQ(v.parity(), Parity::kOdd);
  EXPECT_EQ(Vertex::origin(3).parity(), Parity::kEven);
  EXPECT_EQ(Vertex::origin(3).l1_norm(), 0);
}

TEST(Vertex, RejectsBadDimension) {
  EXPECT_THROW(Vertex::origin(0), DimensionError);
  EXPECT_THROW(Vertex::origin(Vertex::kMaxDimension + 1), DimensionError);
  EXPECT_THROW(Vertex(std::initializer_list<int>{}), DimensionError);
}

TEST(Vertex, ArithmeticAndOrder) {
  Vertex a{1, 2}, b{1, 3};
  EXPECT_LT(a, b);
  EXPECT_EQ(a + b, (Vertex{2, 5}));
  EXPECT_EQ(b - a, (Vertex{0, 1}));
  EXPECT_EQ(a.shifted(0, -1), (Vertex{0, 2}));
  EXPECT_EQ(l1_distance(a, Vertex{-1, -1}), 5);
  EXPECT_EQ(a.to_string(), "(1,2)");
}

TEST(Neighbors, OneDimension) {
  auto n = neighbors(Vertex{0});
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0], Vertex{-1});
  EXPECT_EQ(n[1], Vertex{1});
}

TEST(Neighbors, TwoDimensions) {
  auto n = neighbors(Vertex::origin(2));
  std::vector<Vertex> expected{{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  EXPECT_EQ(n, expected);
}

TEST(Neighbors, ThreeDimensionsAllAtDistanceOne) {
  Vertex v{1, 1, 1};
  auto n = neighbors(v);
  ASSERT_EQ(n.size(), 6u);
  for (const auto& w : n) EXPECT_EQ(l1_distance(v, w), 1);
  EXPECT_EQ(std::set<Vertex>(n.begin(), n.end()).size(), 6u);
}

TEST(BallDomain, OneDimensionRadiusOne) {
  auto dom = ball_domain(1, 1);
  std::vector<Vertex> interior(dom->interior().begin(), dom->interior().end());
  std::vector<Vertex> boundary(dom->boundary().begin(), dom->boundary().end());
  EXPECT_EQ(interior, (std::vector<Vertex>{Vertex{-1}, Vertex{0}, Vertex{1}}));
  EXPECT_EQ(boundary, (std::vector<Vertex>{Vertex{-2}, Vertex{2}}));
}

TEST(BallDomain, TwoDimensionSizes) {
  auto d1 = ball_domain(2, 1);
  EXPECT_EQ(d1->num_interior(), 5u);
  EXPECT_EQ(d1->num_boundary(), 8u);
  // Direct count of {|x| + |y| <= 3}.
  int count = 0;
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) count += (std::abs(x) + std::abs(y) <= 3);
  }
  EXPECT_EQ(ball_domain(2, 3)->num_interior(), static_cast<std::size_t>(count));
  EXPECT_EQ(count, 25);
}

TEST(BallDomain, RadiusZero) {
  auto dom = ball_domain(3, 0);
  EXPECT_EQ(dom->num_interior(), 1u);
  EXPECT_EQ(dom->num_boundary(), 6u);
}

TEST(BallDomain, NegativeRadiusRejected) { EXPECT_THROW(ball_domain(2, -1), Error); }

TEST(BallDomain, OddRadiusHasEvenBoundary) {
  for (std::size_t d : {1u, 2u, 3u}) {
    for (int L : {1, 3, 5}) {
      auto dom = ball_domain(d, L);
      EXPECT_TRUE(dom->boundary_is_even()) << d << " " << L;
      for (const auto& v : dom->boundary()) EXPECT_EQ(v.l1_norm(), L + 1);
    }
  }
  EXPECT_FALSE(ball_domain(2, 2)->boundary_is_even());
}

TEST(BallDomain, BoundaryMatchesDefinition) {
  for (std::size_t d : {1u, 2u, 3u}) {
    for (int L : {0, 1, 2, 4}) {
      auto dom = ball_domain(d, L);
      auto expected = outer_boundary_of(dom->interior(), d);
      std::vector<Vertex> got(dom->boundary().begin(), dom->boundary().end());
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(BallDomain, ExtensionsAreNested) {
  for (int L = 0; L < 5; ++L) {
    auto a = ball_domain(2, L);
    auto b = ball_domain(2, L + 1);
    for (const auto& v : a->sites()) EXPECT_TRUE(b->contains(v));
    // Λ(L)+ is exactly Λ(L+1).
    EXPECT_EQ(a->num_sites(), b->num_interior());
  }
}

TEST(BallDomain, ParityClassesPartitionInterior) {
  auto dom = ball_domain(2, 7);
  EXPECT_EQ(dom->class_size(Parity::kEven) + dom->class_size(Parity::kOdd), dom->num_interior());
  std::size_t even = 0;
  for (const auto& v : dom->interior()) even += v.parity() == Parity::kEven;
  EXPECT_EQ(dom->class_size(Parity::kEven), even);
}

TEST(LatticeDomain, OrderingIsLexicographic) {
  auto dom = ball_domain(2, 4);
  EXPECT_TRUE(std::is_sorted(dom->interior().begin(), dom->interior().end()));
  EXPECT_TRUE(std::is_sorted(dom->boundary().begin(), dom->boundary().end()));
}

TEST(LatticeDomain, IndexRoundTrip) {
  auto dom = ball_domain(3, 2);
  for (SiteIndex i = 0; i < dom->num_sites(); ++i) EXPECT_EQ(dom->index_of(dom->vertex(i)), i);
  EXPECT_FALSE(dom->find(Vertex{5, 5, 5}).has_value());
  EXPECT_THROW(dom->index_of(Vertex{5, 5, 5}), Error);
}

TEST(LatticeDomain, InteriorNeighborsAllPresent) {
  auto dom = ball_domain(2, 3);
  for (SiteIndex i = 0; i < dom->num_interior(); ++i) {
    auto nb = dom->neighbors_of(i);
    ASSERT_EQ(nb.size(), 4u);
    auto expected = neighbors(dom->vertex(i));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(dom->vertex(nb[k]), expected[k]);
  }
}

TEST(LatticeDomain, EdgesAreAdjacentPairs) {
  auto dom = ball_domain(2, 2);
  std::size_t expected = 0;
  for (SiteIndex a = 0; a < dom->num_sites(); ++a) {
    for (SiteIndex b = a + 1; b < dom->num_sites(); ++b) {
      expected += testsupport::adjacent(dom->vertex(a), dom->vertex(b));
    }
  }
  EXPECT_EQ(dom->edges().size(), expected);
  for (const auto& e : dom->edges()) {
    EXPECT_LT(e.a, e.b);
    EXPECT_EQ(l1_distance(dom->vertex(e.a), dom->vertex(e.b)), 1);
  }
}

TEST(LatticeDomain, SweepOrderEvenThenOdd) {
  auto dom = ball_domain(2, 3);
  auto order = dom->sweep_order();
  ASSERT_EQ(order.size(), dom->num_interior());
  std::size_t evens = dom->class_size(Parity::kEven);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto p = dom->vertex(order[k]).parity();
    EXPECT_EQ(p, k < evens ? Parity::kEven : Parity::kOdd);
    const SiteKey key = dom->site_key(order[k]);
    EXPECT_EQ(key.klass, p);
    EXPECT_EQ(key.rank, k < evens ? k : k - evens);
  }
}

TEST(LatticeDomain, ExplicitInteriorDeduplicates) {
  auto dom = LatticeDomain::from_interior(2, {Vertex{0, 0}, Vertex{0, 1}, Vertex{0, 0}});
  EXPECT_EQ(dom->num_interior(), 2u);
  EXPECT_EQ(dom->num_boundary(), 6u);
  EXPECT_THROW(LatticeDomain::from_interior(2, {Vertex{0, 0, 0}}), DimensionError);
}

TEST(LatticeDomain, EmptyInterior) {
  auto dom = LatticeDomain::from_interior(2, {});
  EXPECT_EQ(dom->num_sites(), 0u);
}

TEST(LatticeDomain, SparseDomainsUseHashIndex) {
  auto dense = ball_domain(2, 5);
  EXPECT_TRUE(dense->uses_dense_index());
  auto sparse = LatticeDomain::from_interior(2, {Vertex{0, 0}, Vertex{400, 400}});
  EXPECT_FALSE(sparse->uses_dense_index());
  EXPECT_EQ(sparse->index_of(Vertex{400, 401}), sparse->index_of(Vertex{400, 401}));
  EXPECT_TRUE(sparse->contains(Vertex{401, 400}));
  EXPECT_FALSE(sparse->contains(Vertex{200, 200}));
}

TEST(LatticeDomain, DescriptorRoundTrip) {
  auto dom = ball_domain(2, 3);
  auto again = LatticeDomain::from_descriptor(dom->descriptor());
  EXPECT_EQ(std::vector<Vertex>(dom->sites().begin(), dom->sites().end()),
            std::vector<Vertex>(again->sites().begin(), again->sites().end()));
}

TEST(OuterBoundary, Examples) {
  std::vector<Vertex> s{Vertex{0}};
  EXPECT_EQ(outer_boundary_of(s, 1), (std::vector<Vertex>{Vertex{-1}, Vertex{1}}));
  EXPECT_TRUE(outer_boundary_of({}, 2).empty());
  auto ball = ball_domain(2, 1);
  auto b = outer_boundary_of(ball->interior(), 2);
  ASSERT_EQ(b.size(), 8u);
  for (const auto& v : b) EXPECT_EQ(v.l1_norm(), 2);
}

TEST(OuterBoundary, RandomSetsProperty) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Vertex> s;
    const int n = 1 + static_cast<int>(gen() % 8);
    for (int i = 0; i < n; ++i) {
      s.insert(Vertex{static_cast<int>(gen() % 5) - 2, static_cast<int>(gen() % 5) - 2});
    }
    std::vector<Vertex> sv(s.begin(), s.end());
    auto b = outer_boundary_of(sv, 2);
    for (const auto& v : b) {
      EXPECT_FALSE(s.count(v));
      bool touches = false;
      for (const auto& w : neighbors(v)) touches |= s.count(w) > 0;
      EXPECT_TRUE(touches);
    }
    // Completeness: every non-member neighbor of S is listed.
    std::set<Vertex> bs(b.begin(), b.end());
    for (const auto& v : sv) {
      for (const auto& w : neighbors(v)) {
        if (!s.count(w)) EXPECT_TRUE(bs.count(w));
      }
    }
  }
}
